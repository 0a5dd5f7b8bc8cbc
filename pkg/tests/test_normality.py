"""Normality deciders: closed-form oracle, certifying engine, replay."""

from __future__ import annotations

import json

import pytest

from schubnorm import normality
from schubnorm.bruhat import CoverEdge, NotInLattice, covers_stembridge, dominant_nodes, hasse
from schubnorm.lattice import IntMatrix, Lattice
from schubnorm.normality import (
    NON_NORMAL,
    NORMAL,
    UNKNOWN,
    NotAlmostSimple,
    Rule,
    Verdict,
    WrongType,
    certify,
    mindeg_slice_normality,
    normal_locus_lower_bound,
    oracle,
    replay,
    verdict_json,
)
from schubnorm.rootdata import Coweight, DynkinType, RootDatum, RootSystem, parse_datum


def cw(*coords) -> Coweight:
    return Coweight(tuple(coords))


def edge_between(datum, la, mu) -> CoverEdge:
    hits = [e for e in covers_stembridge(datum, la) if e.upper == mu]
    assert len(hits) == 1
    return hits[0]


def statuses(datum_text, p, height) -> dict:
    datum = parse_datum(datum_text)
    return {
        mu.coords: oracle(datum, mu, p).status
        for mu in dominant_nodes(datum, height)
    }


# --- oracle: frozen normal sets per (datum, p, height bound) ---

ZERO6 = (0, 0, 0, 0, 0, 0)

SPOT_SWEEPS = [
    ("A1:PGL2", 2, 8, {(0,), (1,)}),
    ("A2:PGL3", 3, 12, {(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)}),
    (
        "A3:PGL4",
        2,
        9,
        {
            (0, 0, 0),
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (2, 0, 0),
            (0, 0, 2),
            (3, 0, 0),
            (0, 0, 3),
            (1, 1, 0),
            (0, 1, 1),
        },
    ),
    ("A3:SL4/mu2", 2, 12, {(0, 0, 0), (0, 1, 0), (2, 0, 0), (0, 0, 2)}),
    ("B3:SO7", 2, 16, {(0, 0, 0), (1, 0, 0)}),
    ("C3:PSp6", 2, 14, {(0, 0, 0), (0, 0, 1)}),
    (
        "D5:PSO10",
        2,
        20,
        {
            (0, 0, 0, 0, 0),
            (1, 0, 0, 0, 0),
            (0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1),
            (1, 0, 0, 1, 0),
            (1, 0, 0, 0, 1),
        },
    ),
    ("D5:SO10", 2, 20, {(0, 0, 0, 0, 0), (1, 0, 0, 0, 0)}),
    (
        "D6:PSO12",
        2,
        18,
        {ZERO6, (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)},
    ),
    ("D6:half-spin", 2, 26, {ZERO6, (0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 1, 0)}),
    ("D6:half-spin-flip", 2, 26, {ZERO6, (0, 0, 0, 0, 1, 0), (1, 0, 0, 0, 0, 1)}),
    ("D8:half-spin", 2, 30, {(0,) * 8, (0, 0, 0, 0, 0, 0, 0, 1)}),
    (
        "E6:adjoint",
        3,
        32,
        {
            ZERO6,
            (1, 0, 0, 0, 0, 0),
            (0, 0, 0, 0, 0, 1),
            (0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 1, 0),
            (2, 0, 0, 0, 0, 0),
            (0, 0, 0, 0, 0, 2),
        },
    ),
    (
        "E7:adjoint",
        2,
        50,
        {(0,) * 7, (0, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0, 0)},
    ),
]


@pytest.mark.parametrize("text,p,height,normal_set", SPOT_SWEEPS)
def test_oracle_frozen_normal_sets(text, p, height, normal_set):
    found = {mu for mu, st in statuses(text, p, height).items() if st == NORMAL}
    assert found == normal_set


EVERYTHING_NORMAL = [
    ("A1:SL2", 2, 8),
    ("B3:Spin7", 2, 16),
    ("C3:Sp6", 2, 14),
    ("D5:Spin10", 2, 20),
    ("E6:adjoint", 2, 32),
    ("E6:simply-connected", 3, 32),
    ("E7:adjoint", 3, 50),
    ("E8:adjoint", 5, 60),
    ("F4:adjoint", 2, 30),
    ("G2:adjoint", 2, 20),
    ("A4:PGL5", 3, 12),
]


@pytest.mark.parametrize("text,p,height", EVERYTHING_NORMAL)
def test_oracle_char_not_dividing_sweeps(text, p, height):
    assert set(statuses(text, p, height).values()) == {NORMAL}


def test_oracle_char_zero_is_always_normal():
    datum = parse_datum("C3:PSp6")
    for mu in dominant_nodes(datum, 14):
        assert oracle(datum, mu, 0).status == NORMAL


POINT_CHECKS = [
    ("A3:PGL4", (2, 0, 0), 2, NORMAL),
    ("A4:PGL5", (0, 2, 0, 0), 5, NORMAL),
    ("A4:PGL5", (1, 1, 0, 0), 5, NORMAL),
    ("A4:PGL5", (1, 0, 0, 1), 5, NON_NORMAL),
    ("C2:PSp4", (1, 0), 2, NON_NORMAL),
    ("C2:PSp4", (0, 1), 2, NORMAL),
    ("B2:SO5", (1, 0), 2, NORMAL),
    ("B2:SO5", (0, 1), 2, NON_NORMAL),
    ("E7:adjoint", (0, 1, 0, 0, 0, 0, 0), 2, NORMAL),
    ("E7:adjoint", (1, 0, 0, 0, 0, 0, 0), 2, NON_NORMAL),
    ("D8:half-spin", (1, 0, 0, 0, 0, 0, 1, 0), 2, NON_NORMAL),
    ("D6:PSO12", (1, 0, 0, 0, 1, 0), 2, NON_NORMAL),
    ("A5:SL6/mu3", (0, 0, 2, 0, 0), 2, NORMAL),
    ("A5:SL6/mu3", (0, 2, 0, 0, 0), 3, NORMAL),
    ("A5:SL6/mu3", (1, 1, 0, 0, 1), 3, NON_NORMAL),
]


@pytest.mark.parametrize("text,coords,p,expected", POINT_CHECKS)
def test_oracle_point_checks(text, coords, p, expected):
    assert oracle(parse_datum(text), cw(*coords), p).status == expected


def test_oracle_never_unknown_and_certificates_nonempty():
    datum = parse_datum("B3:SO7")
    for mu in dominant_nodes(datum, 16):
        v = oracle(datum, mu, 2)
        assert v.status in (NORMAL, NON_NORMAL)
        assert v.certificate


def test_oracle_d_flip_swaps_normal_sets():
    plain = statuses("D6:half-spin", 2, 26)
    flip = statuses("D6:half-spin-flip", 2, 26)
    swap = lambda c: c[:4] + (c[5], c[4])
    assert {swap(mu) for mu, st in plain.items() if st == NORMAL} == {
        mu for mu, st in flip.items() if st == NORMAL
    }


def test_oracle_rejects_non_prime_characteristic():
    with pytest.raises(ValueError):
        oracle(parse_datum("A1:PGL2"), cw(1), 4)


def test_oracle_rejects_non_dominant():
    with pytest.raises(ValueError):
        oracle(parse_datum("A1:PGL2"), cw(-1), 2)


def test_oracle_rejects_coweight_outside_lattice():
    with pytest.raises(NotInLattice):
        oracle(parse_datum("A1:SL2"), cw(1), 2)


def _reducible_datum() -> RootDatum:
    cartan = IntMatrix(((2, 0), (0, 2)))
    rs = RootSystem(DynkinType("A", 2), cartan, ((1, 0), (0, 1)), (2, 2))
    return RootDatum(rs, Lattice.standard(2), "A1xA1")


def test_oracle_rejects_reducible_datum():
    with pytest.raises(NotAlmostSimple):
        oracle(_reducible_datum(), cw(1, 1), 2)


def test_certify_rejects_reducible_datum():
    with pytest.raises(NotAlmostSimple):
        certify(_reducible_datum(), cw(1, 1), 2)


# --- minimal degeneration slices ---


def test_mindeg_so7_quasi_minuscule_wall():
    datum = parse_datum("B3:SO7")
    edge = edge_between(datum, cw(1, 0, 0), cw(0, 0, 1))
    assert edge.kind == "QuasiMinusculeZero"
    assert mindeg_slice_normality(datum, edge, 2) == NON_NORMAL
    assert mindeg_slice_normality(datum, edge, 3) == NORMAL
    assert mindeg_slice_normality(datum, edge, 0) == NORMAL


def test_mindeg_pgl3_full_wall_depends_on_char():
    datum = parse_datum("A2:PGL3")
    edge = edge_between(datum, cw(0, 0), cw(1, 1))
    assert edge.kind == "QuasiMinusculeZero"
    assert mindeg_slice_normality(datum, edge, 3) == NON_NORMAL
    assert mindeg_slice_normality(datum, edge, 2) == NORMAL


def test_mindeg_e7_wall_has_odd_fundamental_group():
    datum = parse_datum("E7:adjoint")
    edge = edge_between(datum, cw(0, 0, 0, 0, 0, 0, 1), cw(0, 1, 0, 0, 0, 0, 0))
    assert edge.support == frozenset({1, 2, 3, 4, 5, 6})
    assert mindeg_slice_normality(datum, edge, 2) == NORMAL


def test_mindeg_long_end_case_adjoint_versus_simply_connected():
    psp = parse_datum("C3:PSp6")
    edge = edge_between(psp, cw(0, 0, 1), cw(1, 0, 1))
    assert edge.kind == "QuasiMinusculeCn"
    assert mindeg_slice_normality(psp, edge, 2) == NON_NORMAL
    assert mindeg_slice_normality(psp, edge, 3) == NORMAL

    spin = parse_datum("B4:Spin9")
    so = parse_datum("B4:SO9")
    lo, hi = cw(1, 1, 1, 0), cw(1, 0, 1, 1)
    for datum, expected in [(spin, NORMAL), (so, NON_NORMAL)]:
        edge = edge_between(datum, lo, hi)
        assert edge.kind == "QuasiMinusculeCn"
        assert edge.support == frozenset({3, 4})
        assert mindeg_slice_normality(datum, edge, 2) == expected


def test_mindeg_simple_coroot_case_detects_pgl2_levi():
    lo, hi = cw(0, 0, 2, 0), cw(0, 0, 0, 2)
    so = parse_datum("B4:SO9")
    edge = edge_between(so, lo, hi)
    assert edge.kind == "SimpleCoroot"
    assert mindeg_slice_normality(so, edge, 2) == NON_NORMAL
    assert mindeg_slice_normality(so, edge, 3) == NORMAL
    spin = parse_datum("B4:Spin9")
    assert mindeg_slice_normality(spin, edge_between(spin, lo, hi), 2) == NORMAL


def test_mindeg_unclassified_g2_edges_are_normal():
    datum = parse_datum("G2:adjoint")
    diagram = hasse(datum, 12)
    assert diagram.edges
    for edge in diagram.edges:
        assert edge.kind is None
        assert mindeg_slice_normality(datum, edge, 2) == NORMAL


def test_mindeg_rejects_fake_edge():
    datum = parse_datum("B3:SO7")
    fake = CoverEdge(cw(1, 0, 0), cw(1, 2, 0), frozenset({2}), "SimpleCoroot")
    with pytest.raises(ValueError):
        mindeg_slice_normality(datum, fake, 2)


# --- certify: statuses and certificate shapes ---


def rule_ids(verdict) -> list:
    return [r.id for r in verdict.certificate]


def test_certify_char_not_dividing_alone():
    v = certify(parse_datum("E8:adjoint"), cw(0, 0, 0, 0, 0, 0, 0, 1), 7)
    assert v.status == NORMAL
    assert rule_ids(v) == ["CharNotDividing"]


def test_certify_zero_and_minuscule():
    v0 = certify(parse_datum("C3:PSp6"), cw(0, 0, 0), 2)
    assert (v0.status, rule_ids(v0)) == (NORMAL, ["Minuscule"])
    v1 = certify(parse_datum("A3:PGL4"), cw(0, 1, 0), 2)
    assert (v1.status, rule_ids(v1)) == (NORMAL, ["Minuscule"])


def test_certify_quasi_minuscule_chain():
    datum = parse_datum("A1:PGL2")
    at_qm = certify(datum, cw(2), 2)
    assert (at_qm.status, rule_ids(at_qm)) == (NON_NORMAL, ["QmNonNormal"])
    above = certify(datum, cw(4), 2)
    assert (above.status, rule_ids(above)) == (
        NON_NORMAL,
        ["QmNonNormal", "UpwardPropagation"],
    )


def test_certify_minuscule_plus_quasi_minuscule():
    v = certify(parse_datum("C3:PSp6"), cw(1, 0, 1), 2)
    assert (v.status, rule_ids(v)) == (NON_NORMAL, ["MinPlusQm"])
    w = certify(parse_datum("A1:PGL2"), cw(3), 2)
    assert (w.status, rule_ids(w)) == (NON_NORMAL, ["MinPlusQm"])


def test_certify_minimal_degeneration_witness():
    v = certify(parse_datum("B3:SO7"), cw(0, 0, 1), 2)
    assert v.status == NON_NORMAL
    assert rule_ids(v) == ["MinDegNonNormal", "SliceDecomposition"]
    witness = v.certificate[0].data
    assert witness["la"] == [1, 0, 0] and witness["mu"] == [0, 0, 1]


def test_certify_e7_exceptional_closure():
    v = certify(parse_datum("E7:adjoint"), cw(0, 1, 0, 0, 0, 0, 0), 2)
    assert v.status == NORMAL
    assert set(rule_ids(v)) == {
        "SliceDecomposition",
        "PointSlice",
        "LeviReduction",
        "CharNotDividing",
    }
    slices = v.certificate[0].data["slices"]
    assert slices == [[0, 0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0, 0]]


def test_certify_e6_levi_reduction_example():
    v = certify(parse_datum("E6:adjoint"), cw(0, 0, 0, 0, 1, 0), 3)
    assert v.status == NORMAL
    reductions = [r for r in v.certificate if r.id == "LeviReduction"]
    assert any(r.data["support"] == [2, 3, 4, 5, 6] for r in reductions)
    assert "CharNotDividing" in rule_ids(v)


def test_certify_e6_double_fundamental_closure():
    v = certify(parse_datum("E6:adjoint"), cw(0, 0, 0, 0, 0, 2), 3)
    assert v.status == NORMAL
    slices = v.certificate[0].data["slices"]
    assert [tuple(s) for s in slices] == [
        (0, 0, 0, 0, 0, 2),
        (0, 0, 0, 0, 1, 0),
        (1, 0, 0, 0, 0, 0),
    ] or [tuple(s) for s in slices] == [
        (1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 2),
    ]


def test_certify_pso10_exceptional_pair():
    datum = parse_datum("D5:PSO10")
    for coords in [(1, 0, 0, 1, 0), (1, 0, 0, 0, 1)]:
        v = certify(datum, cw(*coords), 2)
        assert v.status == NORMAL
        assert "LeviReduction" in rule_ids(v)


def test_certify_half_spin_exceptional():
    v = certify(parse_datum("D6:half-spin"), cw(1, 0, 0, 0, 1, 0), 2)
    assert v.status == NORMAL


AGREEMENT_SWEEPS = [
    ("A2:PGL3", 3, 12),
    ("A3:PGL4", 2, 9),
    ("A3:SL4/mu2", 2, 12),
    ("B3:SO7", 2, 16),
    ("C3:PSp6", 2, 14),
    ("D5:PSO10", 2, 20),
    ("D5:SO10", 2, 20),
    ("D6:half-spin", 2, 26),
    ("E6:adjoint", 3, 32),
    ("B3:Spin7", 2, 16),
    ("G2:adjoint", 5, 20),
]


@pytest.mark.parametrize("text,p,height", AGREEMENT_SWEEPS)
def test_certify_agrees_with_oracle(text, p, height):
    datum = parse_datum(text)
    for mu in dominant_nodes(datum, height):
        want = oracle(datum, mu, p).status
        got = certify(datum, mu, p)
        assert got.status == want, (mu.coords, want, got.status)
        assert got.status != UNKNOWN
        assert got.certificate


def test_certify_memoizes_verdicts():
    datum = parse_datum("E6:adjoint")
    mu = cw(0, 0, 0, 0, 0, 2)
    assert certify(datum, mu, 3) is certify(datum, mu, 3)


def test_certify_slice_unknown_when_reduction_entangled():
    datum = parse_datum("A3:PGL4")
    status, rules, undecided = normality._certify_slice(
        datum, cw(0, 2, 0), cw(2, 0, 2), 2
    )
    assert status == UNKNOWN
    assert rules == ()
    assert undecided == (cw(0, 2, 0),)


def test_certify_slice_recurses_through_derived_group():
    datum = parse_datum("B4:SO9")
    status, rules, undecided = normality._certify_slice(
        datum, cw(0, 0, 4, 0), cw(0, 0, 0, 4), 2
    )
    assert status == NON_NORMAL
    assert undecided == ()
    [reduction] = [r for r in rules if r.id == "LeviReduction"]
    assert reduction.data["mode"] == "derived"
    [component] = reduction.data["components"]
    assert component["datum"] == "A1:PGL2"
    assert component["status"] == NON_NORMAL
    assert [r["rule"] for r in component["certificate"]] == [
        "QmNonNormal",
        "UpwardPropagation",
    ]


# --- replay ---


REPLAY_CASES = [
    ("A1:PGL2", (4,), 2),
    ("A1:PGL2", (3,), 2),
    ("A1:PGL2", (1,), 2),
    ("A3:PGL4", (3, 0, 0), 2),
    ("B3:SO7", (0, 0, 1), 2),
    ("B3:SO7", (1, 0, 1), 2),
    ("C3:PSp6", (1, 0, 1), 2),
    ("C3:PSp6", (0, 0, 2), 2),
    ("D5:PSO10", (1, 0, 0, 1, 0), 2),
    ("D6:half-spin", (1, 0, 0, 0, 1, 0), 2),
    ("E6:adjoint", (0, 0, 0, 0, 0, 2), 3),
    ("E6:adjoint", (0, 1, 0, 0, 0, 0), 3),
    ("E7:adjoint", (0, 1, 0, 0, 0, 0, 0), 2),
    ("E8:adjoint", (0, 0, 0, 0, 0, 0, 0, 1), 3),
    ("F4:adjoint", (1, 0, 0, 0), 2),
]


@pytest.mark.parametrize("text,coords,p", REPLAY_CASES)
def test_replay_accepts_both_engines(text, coords, p):
    datum = parse_datum(text)
    mu = cw(*coords)
    for verdict in (oracle(datum, mu, p), certify(datum, mu, p)):
        assert replay(datum, mu, p, verdict) is True


def test_replay_rejects_flipped_status():
    datum = parse_datum("A1:PGL2")
    mu = cw(4)
    good = certify(datum, mu, 2)
    bad = Verdict(NORMAL, good.certificate)
    assert replay(datum, mu, 2, bad) is False


def test_replay_rejects_truncated_certificate():
    datum = parse_datum("A1:PGL2")
    mu = cw(4)
    good = certify(datum, mu, 2)
    assert replay(datum, mu, 2, Verdict(NON_NORMAL, good.certificate[:1])) is False
    assert replay(datum, mu, 2, Verdict(NON_NORMAL, ())) is False


def test_replay_rejects_tampered_data():
    datum = parse_datum("B3:SO7")
    mu = cw(0, 0, 1)
    good = certify(datum, mu, 2)
    first = good.certificate[0]
    forged = Rule(first.id, first.statement, {**first.data, "la": [0, 1, 0]})
    assert replay(datum, mu, 2, Verdict(NON_NORMAL, (forged,) + good.certificate[1:])) is False


def test_replay_rejects_wrong_rule_for_normal_claim():
    datum = parse_datum("B3:SO7")
    mu = cw(0, 1, 0)
    forged = Verdict(NORMAL, (Rule("Minuscule", "forged", {"mu": [0, 1, 0]}),))
    assert replay(datum, mu, 2, forged) is False


def test_replay_refuses_unknown():
    datum = parse_datum("A1:PGL2")
    with pytest.raises(ValueError):
        replay(datum, cw(2), 2, Verdict(UNKNOWN, (), (cw(2),)))


# --- type A normal locus lower bound ---


def test_normal_locus_rejects_other_families():
    with pytest.raises(WrongType):
        normal_locus_lower_bound(parse_datum("B3:SO7"), cw(0, 1, 0))


def test_normal_locus_quasi_minuscule_is_isolated():
    datum = parse_datum("A2:PGL3")
    assert normal_locus_lower_bound(datum, cw(1, 1)) == frozenset({cw(1, 1)})


def test_normal_locus_two_omega_one():
    datum = parse_datum("A3:PGL4")
    assert normal_locus_lower_bound(datum, cw(2, 0, 0)) == frozenset(
        {cw(2, 0, 0), cw(0, 1, 0)}
    )


def test_normal_locus_excludes_interior_base_point():
    datum = parse_datum("A3:PGL4")
    assert normal_locus_lower_bound(datum, cw(1, 0, 1)) == frozenset({cw(1, 0, 1)})


def test_normal_locus_always_contains_top():
    datum = parse_datum("A4:PGL5")
    for mu in dominant_nodes(datum, 10):
        assert mu in normal_locus_lower_bound(datum, mu)


# --- JSON verdicts ---


def test_verdict_json_round_trips():
    datum = parse_datum("E6:adjoint")
    mu = cw(0, 0, 0, 0, 1, 0)
    payload = verdict_json(datum, mu, 3, certify(datum, mu, 3))
    text = json.dumps(payload, sort_keys=True)
    back = json.loads(text)
    assert back["datum"] == "E6:adjoint"
    assert back["mu"] == [0, 0, 0, 0, 1, 0]
    assert back["p"] == 3
    assert back["status"] == NORMAL
    assert all(set(r) == {"rule", "statement", "data"} for r in back["certificate"])


def test_verdict_json_reports_undecided_slices():
    payload = verdict_json(
        parse_datum("A3:PGL4"),
        cw(2, 0, 2),
        2,
        Verdict(UNKNOWN, (), (cw(0, 2, 0),)),
    )
    assert payload["undecided"] == [[0, 2, 0]]
