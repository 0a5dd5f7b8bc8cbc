"""Two deciders for normality of Schubert varieties, plus a replayer.

`oracle` evaluates the closed classification directly: away from torsion
characteristics everything is normal, minuscule coweights are always
normal, and the remaining normal coweights form a short explicit list
depending on the family and the cocharacter lattice.  `certify` knows
nothing about that list; it assembles a verdict from local rules
(quasi-minuscule non-normality, upward propagation, minimal degeneration
slices, Levi reductions) and records every step as a `Rule`, so the two
engines are independent checks on each other.  `replay` re-derives each
rule's hypotheses arithmetically from a verdict alone and accepts or
rejects it without redoing any search.

A verdict is Normal, NonNormal, or Unknown; Unknown carries the slices
the rule engine could not decide and is never produced by the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .bruhat import (
    AmbientG2,
    CoverEdge,
    NotInLattice,
    QM_CN,
    QM_ZERO,
    SIMPLE_COROOT,
    covers_bruteforce,
    covers_stembridge,
    dominant_nodes,
    minuscule_set,
    quasi_minuscule,
)
from .levi import levi_data, levi_reduction, support
from .rootdata import (
    Coweight,
    RootDatum,
    coroot_coefficients,
    fundamental_coweight,
    in_cochar_lattice,
    is_dominant,
    pairing_2rho,
    parse_datum,
    pi1_invariants,
    pi1_order,
    serialize_datum,
    zero_coweight,
)

NORMAL = "Normal"
NON_NORMAL = "NonNormal"
UNKNOWN = "Unknown"


class NotAlmostSimple(ValueError):
    """The root datum is not almost simple."""


class WrongType(ValueError):
    """The question only makes sense for another Dynkin family."""


@dataclass(frozen=True)
class Rule:
    """One certified step: a rule id, its statement, and the used data."""

    id: str
    statement: str
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: tuple = ()
    undecided: tuple = ()


# --- input validation ---


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_almost_simple(datum: RootDatum):
    a = datum.system.cartan.entries
    n = len(a)
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in seen and a[i][j] != 0:
                seen.add(j)
                frontier.append(j)
    if len(seen) != n:
        raise NotAlmostSimple(f"diagram of {serialize_datum(datum)} is disconnected")


def _validate(datum: RootDatum, mu: Coweight, p: int):
    _require_almost_simple(datum)
    if p != 0 and not _is_prime(p):
        raise ValueError(f"characteristic must be 0 or prime, got {p}")
    if len(mu.coords) != datum.system.rank or not in_cochar_lattice(datum, mu):
        raise NotInLattice(f"{mu.coords} is not a cocharacter of {datum.label}")
    if not is_dominant(mu):
        raise ValueError(f"{mu.coords} is not dominant")


# --- dominance order helpers ---


def _gap_dominates(rs, hi: Coweight, lo: Coweight) -> bool:
    """hi - lo is a nonnegative integral sum of simple coroots."""
    return all(
        c >= 0 and c.denominator == 1 for c in coroot_coefficients(rs, hi - lo)
    )


def _interval_below(datum: RootDatum, mu: Coweight) -> tuple:
    rs = datum.system
    bound = int(pairing_2rho(rs, mu))
    return tuple(
        la for la in dominant_nodes(datum, bound) if _gap_dominates(rs, mu, la)
    )


def _coords(mu: Coweight) -> list:
    return [int(c) for c in mu.coords]


# --- rule constructors ---


def _rule_char(datum: RootDatum, p: int) -> Rule:
    order = pi1_order(datum)
    return Rule(
        "CharNotDividing",
        f"char {p} is prime to the order {order} of pi1, "
        "so every Schubert variety of this datum is normal",
        {"p": p, "pi1": [int(v) for v in pi1_invariants(datum)]},
    )


def _rule_minuscule(mu: Coweight) -> Rule:
    return Rule(
        "Minuscule",
        "minuscule coweights give smooth, in particular normal, Schubert varieties",
        {"mu": _coords(mu)},
    )


def _rule_qm(datum: RootDatum, qm: Coweight, p: int) -> Rule:
    return Rule(
        "QmNonNormal",
        f"char {p} divides the order of pi1, so the quasi-minuscule "
        "Schubert variety fails normality",
        {"qm": _coords(qm), "p": p, "pi1": [int(v) for v in pi1_invariants(datum)]},
    )


def _rule_up(lower: Coweight, upper: Coweight) -> Rule:
    return Rule(
        "UpwardPropagation",
        "a Schubert variety containing a non-normal one of the same datum "
        "is itself non-normal",
        {"lower": _coords(lower), "upper": _coords(upper)},
    )


def _rule_min_plus_qm(la: Coweight, qm: Coweight, nu: Coweight, p: int) -> Rule:
    return Rule(
        "MinPlusQm",
        "the sum of a nonzero minuscule coweight and the quasi-minuscule one "
        f"sits below mu, which rules out normality in char {p}",
        {"minuscule": _coords(la), "qm": _coords(qm), "nu": _coords(nu), "p": p},
    )


def _rule_mindeg(datum: RootDatum, edge: CoverEdge, p: int, status: str) -> Rule:
    ld = levi_data(datum, edge.support)
    data = {
        "la": _coords(edge.lower),
        "mu": _coords(edge.upper),
        "kind": edge.kind,
        "support": sorted(edge.support),
        "pi1": [int(v) for v in ld.pi1_invariants],
        "p": p,
    }
    if status == NORMAL:
        return Rule(
            "MinDegNormal",
            "the minimal degeneration at this cover edge has a normal slice",
            data,
        )
    return Rule(
        "MinDegNonNormal",
        "the minimal degeneration at this cover edge has a non-normal slice",
        data,
    )


def _rule_slices(mu: Coweight, interval) -> Rule:
    return Rule(
        "SliceDecomposition",
        "the variety is normal iff the transversal slice at each dominant "
        "coweight below the top one is normal",
        {"mu": _coords(mu), "slices": [_coords(la) for la in interval]},
    )


def _rule_witness(mu: Coweight, la: Coweight) -> Rule:
    return Rule(
        "SliceDecomposition",
        "a non-normal transversal slice forces non-normality of the whole "
        "Schubert variety",
        {"mu": _coords(mu), "witness": _coords(la)},
    )


def _rule_point(mu: Coweight) -> Rule:
    return Rule(
        "PointSlice",
        "the slice at the top coweight itself is a point",
        {"la": _coords(mu), "mu": _coords(mu)},
    )


def _rule_levi_slice(la: Coweight, mu: Coweight, nodes, ld) -> Rule:
    return Rule(
        "LeviReduction",
        "the transversal slice is a slice for the Levi subgroup on the "
        "support of the gap",
        {
            "mode": "slice",
            "la": _coords(la),
            "mu": _coords(mu),
            "support": sorted(nodes),
            "pi1": [int(v) for v in ld.pi1_invariants],
        },
    )


def _rule_char_levi(la: Coweight, mu: Coweight, ld, p: int) -> Rule:
    order = prod(ld.pi1_invariants)
    return Rule(
        "CharNotDividing",
        f"char {p} is prime to the order {order} of pi1 of the Levi derived "
        "group, whose Schubert varieties are therefore all normal",
        {
            "p": p,
            "pi1": [int(v) for v in ld.pi1_invariants],
            "la": _coords(la),
            "mu": _coords(mu),
        },
    )


def _rule_levi_derived(la: Coweight, mu: Coweight, nodes, records) -> Rule:
    return Rule(
        "LeviReduction",
        "the slice transports into the derived group of the Levi and "
        "factors through its connected components",
        {
            "mode": "derived",
            "la": _coords(la),
            "mu": _coords(mu),
            "support": sorted(nodes),
            "components": records,
        },
    )


def _rule_product(la: Coweight, mu: Coweight, factors: int) -> Rule:
    return Rule(
        "ProductSplit",
        "a product of varieties is normal iff every factor is normal",
        {"la": _coords(la), "mu": _coords(mu), "factors": factors},
    )


# --- the closed-form oracle ---


def _theorem_clause(datum: RootDatum, mu: Coweight, p: int):
    """Clause of the classified normal list containing mu, if any.

    Only called when char divides the order of pi1 and mu is not
    minuscule, which pins the characteristic in the D and E cases.
    """
    rs = datum.system
    fam = rs.dtype.family
    n = rs.rank
    if fam == "A" and n >= 2:
        for end in (1, n):
            w = fundamental_coweight(n, end)
            for d in range(2, n + 1):
                if _gap_dominates(rs, d * w, mu):
                    return f"below {d} times the fundamental coweight at node {end}"
    if fam == "D":
        has_last = in_cochar_lattice(datum, fundamental_coweight(n, n))
        has_next = in_cochar_lattice(datum, fundamental_coweight(n, n - 1))
        pair_next = fundamental_coweight(n, 1) + fundamental_coweight(n, n - 1)
        pair_last = fundamental_coweight(n, 1) + fundamental_coweight(n, n)
        if has_last and has_next:
            if n % 2 == 1 and mu in (pair_next, pair_last):
                return "exceptional pair on the adjoint even orthogonal group"
        elif has_last:
            if n % 4 == 2 and mu == pair_next:
                return "exceptional coweight on the half-spin group"
        elif has_next:
            if n % 4 == 2 and mu == pair_last:
                return "exceptional coweight on the half-spin group"
    if fam == "E" and n == 6:
        w1, w6 = fundamental_coweight(6, 1), fundamental_coweight(6, 6)
        w3, w5 = fundamental_coweight(6, 3), fundamental_coweight(6, 5)
        if mu in (2 * w1, w3, w5, 2 * w6):
            return "exceptional adjoint E6 coweight in char 3"
    if fam == "E" and n == 7:
        if mu == fundamental_coweight(7, 2):
            return "the exceptional adjoint E7 coweight in char 2"
    return None


def oracle(datum: RootDatum, mu: Coweight, p: int) -> Verdict:
    """Decide normality from the closed classification."""
    _validate(datum, mu, p)
    if p == 0 or pi1_order(datum) % p:
        return Verdict(NORMAL, (_rule_char(datum, p),))
    if mu in minuscule_set(datum):
        return Verdict(NORMAL, (_rule_minuscule(mu),))
    clause = _theorem_clause(datum, mu, p)
    if clause is not None:
        rule = Rule(
            "TheoremList",
            "the coweight belongs to the classified list of normal "
            "non-minuscule cases",
            {"member": True, "clause": clause, "p": p},
        )
        return Verdict(NORMAL, (rule,))
    rule = Rule(
        "TheoremList",
        "the coweight avoids every clause of the classified normal list",
        {"member": False, "p": p},
    )
    return Verdict(NON_NORMAL, (rule,))


# --- minimal degeneration slices ---


def _verify_edge(datum: RootDatum, edge: CoverEdge):
    if edge.kind is None:
        if not covers_bruteforce(datum, edge.lower, edge.upper):
            raise ValueError(f"{edge.lower.coords} -> {edge.upper.coords} is not a cover")
        return
    if edge not in covers_stembridge(datum, edge.lower):
        raise ValueError(f"no classified cover {edge.lower.coords} -> {edge.upper.coords}")


def mindeg_slice_normality(datum: RootDatum, edge: CoverEdge, p: int) -> str:
    """Normality of the transversal slice across one cover relation.

    The slice is a two step nilpotent cone piece determined by the kind of
    the degeneration; it fails normality exactly over a PGL2 wall in char
    2 (simple coroot kind), over a full wall whose pi1 has order divisible
    by char (quasi-minuscule kind), or over an adjoint symplectic wall in
    char 2 (long end kind).  Unclassified covers only arise for the G2
    diagram, whose lattice leaves nothing to divide.
    """
    if p != 0 and not _is_prime(p):
        raise ValueError(f"characteristic must be 0 or prime, got {p}")
    _verify_edge(datum, edge)
    if edge.kind is None or p == 0:
        return NORMAL
    ld = levi_data(datum, edge.support)
    if edge.kind == SIMPLE_COROOT:
        bad = p == 2 and prod(ld.component_pi1[0]) == 2
        return NON_NORMAL if bad else NORMAL
    if edge.kind == QM_ZERO:
        return NON_NORMAL if prod(ld.pi1_invariants) % p == 0 else NORMAL
    assert edge.kind == QM_CN
    bad = p == 2 and prod(ld.component_pi1[0]) == 2
    return NON_NORMAL if bad else NORMAL


# --- the certifying engine ---


def certify(datum: RootDatum, mu: Coweight, p: int) -> Verdict:
    """Decide normality by assembling a replayable certificate."""
    _validate(datum, mu, p)
    return _certify(datum, mu, p)


@lru_cache(maxsize=None)
def _certify(datum: RootDatum, mu: Coweight, p: int) -> Verdict:
    rs = datum.system
    if p == 0 or pi1_order(datum) % p:
        return Verdict(NORMAL, (_rule_char(datum, p),))
    if mu in minuscule_set(datum):
        return Verdict(NORMAL, (_rule_minuscule(mu),))
    qm = quasi_minuscule(rs)
    if in_cochar_lattice(datum, qm) and _gap_dominates(rs, mu, qm):
        rules = [_rule_qm(datum, qm, p)]
        if qm != mu:
            rules.append(_rule_up(qm, mu))
        return Verdict(NON_NORMAL, tuple(rules))
    zero = zero_coweight(rs.rank)
    for la in sorted(minuscule_set(datum) - {zero}, key=lambda v: v.coords):
        nu = la + qm
        if _gap_dominates(rs, mu, nu):
            return Verdict(NON_NORMAL, (_rule_min_plus_qm(la, qm, nu, p),))
    interval = _interval_below(datum, mu)
    for la in interval:
        if la == mu:
            continue
        for edge in sorted(covers_stembridge(datum, la), key=lambda e: e.upper.coords):
            if not _gap_dominates(rs, mu, edge.upper):
                continue
            if mindeg_slice_normality(datum, edge, p) == NON_NORMAL:
                rules = [
                    _rule_mindeg(datum, edge, p, NON_NORMAL),
                    _rule_witness(edge.upper, la),
                ]
                if edge.upper != mu:
                    rules.append(_rule_up(edge.upper, mu))
                return Verdict(NON_NORMAL, tuple(rules))
    slice_rules = []
    undecided = []
    for la in interval:
        status, rules, missing = _certify_slice(datum, la, mu, p)
        if status == NON_NORMAL:
            return Verdict(NON_NORMAL, tuple(rules) + (_rule_witness(mu, la),))
        slice_rules.extend(rules)
        undecided.extend(missing)
    if undecided:
        return Verdict(UNKNOWN, (), tuple(sorted(undecided, key=lambda v: v.coords)))
    return Verdict(NORMAL, (_rule_slices(mu, interval), *slice_rules))


def _certify_slice(datum: RootDatum, la: Coweight, mu: Coweight, p: int):
    """Decide one transversal slice; returns (status, rules, undecided)."""
    rs = datum.system
    if la == mu:
        return NORMAL, (_rule_point(mu),), ()
    nodes = support(datum, la, mu)
    ld = levi_data(datum, nodes)
    if p == 0 or prod(ld.pi1_invariants) % p:
        rules = (_rule_levi_slice(la, mu, nodes, ld), _rule_char_levi(la, mu, ld, p))
        return NORMAL, rules, ()
    for edge in covers_stembridge(datum, la):
        if edge.upper == mu:
            status = mindeg_slice_normality(datum, edge, p)
            return status, (_rule_mindeg(datum, edge, p, status),), ()
    if len(nodes) < rs.rank:
        reduction = levi_reduction(datum, la, mu)
        if reduction is not None:
            records = []
            statuses = []
            for comp, la_c, mu_c in reduction:
                if la_c == zero_coweight(comp.system.rank):
                    sub = _certify(comp, mu_c, p)
                    status_c, cert_c = sub.status, sub.certificate
                else:
                    status_c, cert_c, missing_c = _certify_slice(comp, la_c, mu_c, p)
                    if missing_c:
                        status_c = UNKNOWN
                if status_c == UNKNOWN:
                    return UNKNOWN, (), (la,)
                records.append(
                    {
                        "datum": serialize_datum(comp),
                        "la": _coords(la_c),
                        "mu": _coords(mu_c),
                        "status": status_c,
                        "certificate": [_rule_json(r) for r in cert_c],
                    }
                )
                statuses.append(status_c)
            rules = [_rule_levi_derived(la, mu, nodes, records)]
            if len(reduction) > 1:
                rules.append(_rule_product(la, mu, len(reduction)))
            status = NON_NORMAL if NON_NORMAL in statuses else NORMAL
            return status, tuple(rules), ()
    return UNKNOWN, (), (la,)


# --- replay: re-check a verdict from its certificate alone ---


def _rule_json(rule: Rule) -> dict:
    return {"rule": rule.id, "statement": rule.statement, "data": rule.data}


def _parse_rules(records) -> tuple:
    return tuple(Rule(r["rule"], r["statement"], r["data"]) for r in records)


def replay(datum: RootDatum, mu: Coweight, p: int, verdict: Verdict) -> bool:
    """Accept or reject a verdict by re-deriving each rule's hypotheses."""
    _validate(datum, mu, p)
    if verdict.status == UNKNOWN:
        raise ValueError("an Unknown verdict certifies nothing to replay")
    if verdict.status not in (NORMAL, NON_NORMAL):
        return False
    try:
        return _replay(datum, mu, p, verdict)
    except (ValueError, KeyError, IndexError, TypeError, AttributeError):
        return False


def _replay(datum: RootDatum, mu: Coweight, p: int, verdict: Verdict) -> bool:
    rs = datum.system
    cert = verdict.certificate
    if not cert:
        return False
    head = cert[0]
    if head.id == "CharNotDividing" and len(cert) == 1:
        return verdict.status == NORMAL and (p == 0 or pi1_order(datum) % p != 0)
    if head.id == "Minuscule" and len(cert) == 1:
        return verdict.status == NORMAL and mu in minuscule_set(datum)
    if head.id == "TheoremList" and len(cert) == 1:
        if p == 0 or pi1_order(datum) % p or mu in minuscule_set(datum):
            return False
        member = _theorem_clause(datum, mu, p) is not None
        if head.data.get("member") != member:
            return False
        return verdict.status == (NORMAL if member else NON_NORMAL)
    if head.id == "QmNonNormal":
        if verdict.status != NON_NORMAL or p == 0 or pi1_order(datum) % p:
            return False
        qm = quasi_minuscule(rs)
        if head.data.get("qm") != _coords(qm):
            return False
        if len(cert) == 1:
            return qm == mu
        return len(cert) == 2 and _replay_up(rs, cert[1], qm, mu)
    if head.id == "MinPlusQm" and len(cert) == 1:
        if verdict.status != NON_NORMAL or p == 0 or pi1_order(datum) % p:
            return False
        la = Coweight(tuple(head.data["minuscule"]))
        nu = Coweight(tuple(head.data["nu"]))
        zero = zero_coweight(rs.rank)
        if la == zero or la not in minuscule_set(datum):
            return False
        return nu == la + quasi_minuscule(rs) and _gap_dominates(rs, mu, nu)
    if head.id == "MinDegNonNormal":
        if verdict.status != NON_NORMAL or len(cert) not in (2, 3):
            return False
        lo = Coweight(tuple(head.data["la"]))
        hi = Coweight(tuple(head.data["mu"]))
        if _replay_mindeg(datum, lo, hi, p) != NON_NORMAL:
            return False
        witness = cert[1]
        if witness.id != "SliceDecomposition" or witness.data.get("witness") != _coords(lo):
            return False
        if witness.data.get("mu") != _coords(hi):
            return False
        if hi == mu:
            return len(cert) == 2
        return len(cert) == 3 and _replay_up(rs, cert[2], hi, mu)
    if head.id == "SliceDecomposition" and "slices" in head.data:
        if verdict.status != NORMAL:
            return False
        interval = _interval_below(datum, mu)
        if head.data["slices"] != [_coords(la) for la in interval]:
            return False
        groups = {}
        for rule in cert[1:]:
            groups.setdefault(tuple(rule.data["la"]), []).append(rule)
        if set(groups) != {tuple(_coords(la)) for la in interval}:
            return False
        return all(
            _replay_slice(datum, la, mu, p, tuple(groups[tuple(_coords(la))])) == NORMAL
            for la in interval
        )
    tail = cert[-1]
    if tail.id == "SliceDecomposition" and "witness" in tail.data:
        if verdict.status != NON_NORMAL or tail.data.get("mu") != _coords(mu):
            return False
        la = Coweight(tuple(tail.data["witness"]))
        if not _gap_dominates(rs, mu, la) or not is_dominant(la):
            return False
        return _replay_slice(datum, la, mu, p, cert[:-1]) == NON_NORMAL
    return False


def _replay_up(rs, rule: Rule, lower: Coweight, upper: Coweight) -> bool:
    if rule.id != "UpwardPropagation" or lower == upper:
        return False
    if rule.data.get("lower") != _coords(lower) or rule.data.get("upper") != _coords(upper):
        return False
    return _gap_dominates(rs, upper, lower)


def _replay_mindeg(datum: RootDatum, lo: Coweight, hi: Coweight, p: int):
    try:
        edges = [e for e in covers_stembridge(datum, lo) if e.upper == hi]
    except AmbientG2:
        return None
    if len(edges) != 1:
        return None
    return mindeg_slice_normality(datum, edges[0], p)


def _replay_slice(datum: RootDatum, la: Coweight, mu: Coweight, p: int, rules):
    ids = [r.id for r in rules]
    if ids == ["PointSlice"]:
        return NORMAL if la == mu else None
    if ids == ["MinDegNormal"] or ids == ["MinDegNonNormal"]:
        status = _replay_mindeg(datum, la, mu, p)
        want = NORMAL if ids == ["MinDegNormal"] else NON_NORMAL
        return status if status == want else None
    if ids == ["LeviReduction", "CharNotDividing"]:
        lr, char = rules
        if lr.data.get("mode") != "slice":
            return None
        nodes = support(datum, la, mu)
        if lr.data.get("support") != sorted(nodes):
            return None
        ld = levi_data(datum, nodes)
        invariants = [int(v) for v in ld.pi1_invariants]
        if lr.data.get("pi1") != invariants or char.data.get("pi1") != invariants:
            return None
        return NORMAL if p == 0 or prod(ld.pi1_invariants) % p else None
    if ids == ["LeviReduction"] or ids == ["LeviReduction", "ProductSplit"]:
        lr = rules[0]
        if lr.data.get("mode") != "derived":
            return None
        if len(support(datum, la, mu)) >= datum.system.rank:
            return None
        reduction = levi_reduction(datum, la, mu)
        if reduction is None:
            return None
        records = lr.data["components"]
        if len(records) != len(reduction):
            return None
        if len(ids) == 2:
            if rules[1].data.get("factors") != len(reduction) or len(reduction) < 2:
                return None
        elif len(reduction) != 1:
            return None
        statuses = []
        for (comp, la_c, mu_c), rec in zip(reduction, records):
            if rec["datum"] != serialize_datum(comp):
                return None
            if rec["la"] != _coords(la_c) or rec["mu"] != _coords(mu_c):
                return None
            nested = _parse_rules(rec["certificate"])
            if la_c == zero_coweight(comp.system.rank):
                sub = Verdict(rec["status"], nested)
                if not replay(comp, mu_c, p, sub):
                    return None
            elif _replay_slice(comp, la_c, mu_c, p, nested) != rec["status"]:
                return None
            statuses.append(rec["status"])
        return NON_NORMAL if NON_NORMAL in statuses else NORMAL
    return None


# --- the open normal locus in type A ---


def normal_locus_lower_bound(datum: RootDatum, mu: Coweight) -> frozenset:
    """Dominant coweights below mu whose orbits are certainly normal points.

    In type A the closure of the orbit of la meets the normal locus of the
    whole Schubert variety whenever some simple coroot is missing from the
    gap mu - la; the returned set always contains mu itself.
    """
    _require_almost_simple(datum)
    rs = datum.system
    if rs.dtype.family != "A":
        raise WrongType("the lower bound is only available in type A")
    if not in_cochar_lattice(datum, mu):
        raise NotInLattice(f"{mu.coords} is not a cocharacter of {datum.label}")
    if not is_dominant(mu):
        raise ValueError(f"{mu.coords} is not dominant")
    out = []
    for la in _interval_below(datum, mu):
        coeffs = coroot_coefficients(rs, mu - la)
        if any(c == 0 for c in coeffs):
            out.append(la)
    return frozenset(out)


# --- JSON export ---


def verdict_json(datum: RootDatum, mu: Coweight, p: int, verdict: Verdict) -> dict:
    payload = {
        "datum": serialize_datum(datum),
        "mu": _coords(mu),
        "p": p,
        "status": verdict.status,
        "certificate": [_rule_json(r) for r in verdict.certificate],
    }
    if verdict.undecided:
        payload["undecided"] = [_coords(la) for la in verdict.undecided]
    return payload


def parse_verdict(payload: dict):
    """Inverse of verdict_json; returns (datum, mu, p, Verdict)."""
    datum = parse_datum(payload["datum"])
    mu = Coweight(tuple(int(c) for c in payload["mu"]))
    undecided = tuple(
        Coweight(tuple(int(c) for c in la)) for la in payload.get("undecided", ())
    )
    verdict = Verdict(payload["status"], _parse_rules(payload["certificate"]), undecided)
    return datum, mu, int(payload["p"]), verdict
