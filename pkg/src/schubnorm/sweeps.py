"""Verification sweeps: large frozen-expectation checks behind `verify`.

Each sweep returns CheckResult rows instead of raising, so the CLI can
print a table and a report file even when something breaks.  The figure
specifications double as rendering input for the report path.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bruhat, normality, rootdata, slicering
from .rootdata import Coweight, DynkinType, fundamental_coweight, parse_datum

SWEEP_FAMILIES = (
    tuple(("A", n) for n in range(1, 9))
    + tuple(("B", n) for n in range(2, 9))
    + tuple(("C", n) for n in range(2, 9))
    + tuple(("D", n) for n in range(4, 9))
    + (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2))
)
CHARACTERISTICS = (0, 2, 3, 5, 7)
CLASSIFY_HEIGHT = 40
COVER_HEIGHT = 30
COVER_RANK = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FigureSpec:
    """One reference diagram: drawn nodes, labeled edges, verdict boxes."""

    key: str
    datum: str
    char: int
    height: int
    nodes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]
    normal_nodes: tuple[tuple[int, ...], ...] | None


def _weight(rank: int, *items) -> tuple[int, ...]:
    v = [0] * rank
    for i, c in items:
        v[i - 1] += c
    return tuple(v)


def _pso_figure(n: int) -> FigureSpec:
    w = lambda *items: _weight(n, *items)
    zero = w()
    lower_spinor, upper_spinor = w((n - 1, 1)), w((n, 1))
    edges = (
        (zero, w((2, 1)), tuple(range(1, n + 1))),
        (w((1, 1)), w((3, 1)), tuple(range(2, n + 1))),
        (lower_spinor, w((1, 1), (n, 1)), tuple(range(1, n - 1)) + (n,)),
        (w((1, 1), (n, 1)), w((2, 1), (n - 1, 1)), tuple(range(2, n))),
        (upper_spinor, w((1, 1), (n - 1, 1)), tuple(range(1, n))),
        (w((1, 1), (n - 1, 1)), w((2, 1), (n, 1)), tuple(range(2, n - 1)) + (n,)),
    )
    nodes = (
        zero, w((1, 1)), w((2, 1)), w((3, 1)), lower_spinor, upper_spinor,
        w((1, 1), (n - 1, 1)), w((1, 1), (n, 1)),
        w((2, 1), (n - 1, 1)), w((2, 1), (n, 1)),
    )
    return FigureSpec(
        key=f"hasse-D{n}-PSO{2 * n}",
        datum=f"D{n}:PSO{2 * n}",
        char=2,
        height=2 * (2 * n - 3) + n * (n - 1) // 2,
        nodes=nodes,
        edges=edges,
        normal_nodes=None,
    )


def _e6_figure() -> FigureSpec:
    w = lambda *items: _weight(6, *items)
    zero = w()
    edges = (
        (zero, w((2, 1)), (1, 2, 3, 4, 5, 6)),
        (w((2, 1)), w((1, 1), (6, 1)), (1, 3, 4, 5, 6)),
        (w((1, 1), (6, 1)), w((4, 1)), (2, 3, 4, 5)),
        (w((1, 1)), w((5, 1)), (2, 3, 4, 5, 6)),
        (w((5, 1)), w((6, 2)), (6,)),
        (w((5, 1)), w((1, 1), (2, 1)), (1, 2, 3, 4)),
        (w((6, 2)), w((3, 1), (6, 1)), (1, 2, 3, 4, 5)),
        (w((1, 1), (2, 1)), w((3, 1), (6, 1)), (3, 4, 5, 6)),
        (w((6, 1)), w((3, 1)), (1, 2, 3, 4, 5)),
        (w((3, 1)), w((1, 2)), (1,)),
        (w((3, 1)), w((2, 1), (6, 1)), (2, 4, 5, 6)),
        (w((1, 2)), w((1, 1), (5, 1)), (2, 3, 4, 5, 6)),
        (w((2, 1), (6, 1)), w((1, 1), (5, 1)), (1, 3, 4, 5)),
    )
    nodes = tuple(dict.fromkeys(v for e in edges for v in e[:2]))
    return FigureSpec(
        key="hasse-E6-adjoint",
        datum="E6:adjoint",
        char=3,
        height=46,
        nodes=nodes,
        edges=edges,
        normal_nodes=(
            zero, w((1, 1)), w((5, 1)), w((6, 2)), w((6, 1)), w((3, 1)), w((1, 2)),
        ),
    )


def _e7_figure() -> FigureSpec:
    w = lambda *items: _weight(7, *items)
    zero = w()
    edges = (
        (zero, w((1, 1)), (1, 2, 3, 4, 5, 6, 7)),
        (w((1, 1)), w((6, 1)), (2, 3, 4, 5, 6, 7)),
        (w((7, 1)), w((2, 1)), (1, 2, 3, 4, 5, 6)),
        (w((2, 1)), w((1, 1), (7, 1)), (1, 3, 4, 5, 6, 7)),
    )
    nodes = tuple(dict.fromkeys(v for e in edges for v in e[:2]))
    return FigureSpec(
        key="hasse-E7-adjoint",
        datum="E7:adjoint",
        char=2,
        height=61,
        nodes=nodes,
        edges=edges,
        normal_nodes=(zero, w((7, 1)), w((2, 1))),
    )


FIGURES = (_pso_figure(5), _pso_figure(6), _pso_figure(7), _e6_figure(), _e7_figure())


# --- classification: the closed decider against the certifying one ---


_SPOT_NORMAL_SETS = (
    (
        "E6:adjoint", 3, 46,
        (
            (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), (2, 0, 0, 0, 0, 0),
            (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 2),
        ),
    ),
    ("E7:adjoint", 2, 61, ((0, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0, 0))),
) + tuple(
    (f"B{n}:SO{2 * n + 1}", 2, CLASSIFY_HEIGHT, ((1,) + (0,) * (n - 1),))
    for n in range(2, 9)
)


def sweep_classification() -> list[CheckResult]:
    results = []
    for family, rank in SWEEP_FAMILIES:
        for datum in rootdata.isogeny_lattices(DynkinType(family, rank)):
            nodes = bruhat.dominant_nodes(datum, CLASSIFY_HEIGHT)
            count = 0
            bad = None
            for p in CHARACTERISTICS:
                for mu in nodes:
                    a = normality.oracle(datum, mu, p)
                    b = normality.certify(datum, mu, p)
                    count += 1
                    if bad is None and (
                        a.status != b.status or b.status == normality.UNKNOWN
                    ):
                        bad = (list(mu.coords), p, a.status, b.status)
            name = f"classification/{rootdata.serialize_datum(datum)}"
            if bad is None:
                results.append(CheckResult(name, True, f"{count} verdicts agree"))
            else:
                results.append(CheckResult(name, False, f"first mismatch {bad}"))
    for label, p, height, expected in _SPOT_NORMAL_SETS:
        datum = parse_datum(label)
        got = {
            mu.coords
            for mu in bruhat.dominant_nodes(datum, height)
            if any(mu.coords)
            and normality.oracle(datum, mu, p).status == normality.NORMAL
        }
        want = set(expected)
        results.append(
            CheckResult(
                f"classification/spot/{label}-p{p}",
                got == want,
                f"normal nonzero set has {len(got)} elements"
                if got == want
                else f"got {sorted(got)} want {sorted(want)}",
            )
        )
    return results


# --- covers: closed-form edges against brute-force interval checks ---


def sweep_covers() -> list[CheckResult]:
    results = []
    for family, rank in SWEEP_FAMILIES:
        if rank > COVER_RANK:
            continue
        for datum in rootdata.isogeny_lattices(DynkinType(family, rank)):
            name = f"covers/{rootdata.serialize_datum(datum)}"
            nodes = bruhat.dominant_nodes(datum, COVER_HEIGHT)
            if family == "G":
                edges = bruhat.hasse(datum, COVER_HEIGHT).edges
                results.append(
                    CheckResult(
                        name, True,
                        f"brute force is the oracle here; {len(edges)} edges",
                    )
                )
                continue
            pairs = 0
            bad = None
            for la in nodes:
                uppers = {e.upper for e in bruhat.covers_stembridge(datum, la)}
                for mu in nodes:
                    if mu == la or not bruhat.leq(datum, la, mu):
                        continue
                    pairs += 1
                    if (mu in uppers) != bruhat.covers_bruteforce(datum, la, mu):
                        bad = bad or (list(la.coords), list(mu.coords))
            if bad is None:
                results.append(CheckResult(name, True, f"{pairs} comparable pairs"))
            else:
                results.append(CheckResult(name, False, f"mismatch at {bad}"))
    return results


# --- figures: drawn subgraphs of the reference diagrams ---


def _check_figure(spec: FigureSpec) -> CheckResult:
    datum = parse_datum(spec.datum)
    diagram = bruhat.hasse(datum, spec.height)
    drawn = set(spec.nodes)
    missing = drawn - {v.coords for v in diagram.nodes}
    got = {
        (e.lower.coords, e.upper.coords, tuple(sorted(e.support)))
        for e in diagram.edges
        if e.lower.coords in drawn and e.upper.coords in drawn
    }
    want = {(lo, hi, tuple(sorted(sup))) for lo, hi, sup in spec.edges}
    problems = []
    if missing:
        problems.append(f"nodes missing from the poset: {sorted(missing)}")
    if got != want:
        problems.append(
            f"edge sets differ: extra {sorted(got - want)}, absent {sorted(want - got)}"
        )
    if spec.normal_nodes is not None:
        normal = {
            v
            for v in spec.nodes
            if normality.oracle(datum, Coweight(v), spec.char).status
            == normality.NORMAL
        }
        if normal != set(spec.normal_nodes):
            problems.append(f"normal set {sorted(normal)} differs")
    name = f"figures/{spec.datum}"
    if problems:
        return CheckResult(name, False, "; ".join(problems))
    return CheckResult(
        name, True, f"{len(spec.nodes)} nodes, {len(spec.edges)} labeled edges"
    )


def sweep_figures() -> list[CheckResult]:
    return [_check_figure(spec) for spec in FIGURES]


# --- table: named coweights and fundamental groups per type ---


def _minuscule_nodes(family: str, rank: int) -> tuple[int, ...]:
    if family == "A":
        return tuple(range(1, rank + 1))
    if family == "B":
        return (1,)
    if family == "C":
        return (rank,)
    if family == "D":
        return (1, rank - 1, rank)
    return {("E", 6): (1, 6), ("E", 7): (7,)}.get((family, rank), ())


def _qm_coords(family: str, rank: int) -> tuple[int, ...]:
    node = {"B": 2, "C": 1, "D": 2, "F": 1, "G": 2}.get(family)
    if family == "A":
        v = [0] * rank
        v[0] += 1
        v[-1] += 1
        return tuple(v)
    if family == "E":
        node = {6: 2, 7: 1, 8: 8}[rank]
    return _weight(rank, (node, 1))


_ADJOINT_PI1 = {"B": 2, "C": 2, "D": 4, ("E", 6): 3, ("E", 7): 2, ("E", 8): 1,
                ("F", 4): 1, ("G", 2): 1}


def sweep_table() -> list[CheckResult]:
    results = []
    for family, rank in SWEEP_FAMILIES:
        adjoint = rootdata.isogeny_lattices(DynkinType(family, rank))[-1]
        problems = []
        want_minuscule = {fundamental_coweight(rank, i) for i in
                          _minuscule_nodes(family, rank)}
        got_minuscule = set(bruhat.minuscule_set(adjoint)) - {Coweight((0,) * rank)}
        if got_minuscule != want_minuscule:
            problems.append(f"minuscule set {sorted(v.coords for v in got_minuscule)}")
        qm = bruhat.quasi_minuscule(adjoint.system)
        if qm.coords != _qm_coords(family, rank):
            problems.append(f"quasi-minuscule {list(qm.coords)}")
        want_pi1 = rank + 1 if family == "A" else _ADJOINT_PI1.get(
            (family, rank), _ADJOINT_PI1.get(family)
        )
        if rootdata.pi1_order(adjoint) != want_pi1:
            problems.append(f"pi1 order {rootdata.pi1_order(adjoint)} != {want_pi1}")
        name = f"table/{family}{rank}"
        if problems:
            results.append(CheckResult(name, False, "; ".join(problems)))
        else:
            results.append(CheckResult(name, True, "minuscule, quasi-minuscule, pi1"))
    return results


# --- slice: rank-1 subring membership and witnesses ---


def _slice_checks(m: int) -> list[CheckResult]:
    results = []
    bound = m + 2
    z = slicering.SlicePoly.make(m, 2, {(0, 0, 1): 1})
    ring2 = slicering.pgl2_subring(m, 2, bound)
    verdict2 = slicering.normality_witness_rank1(m, 2)
    ok = (
        not ring2.contains(z)
        and ring2.contains(z * z)
        and verdict2.status == normality.NON_NORMAL
        and verdict2.witness == z
    )
    results.append(
        CheckResult(f"slice/m{m}-p2", ok, "z absent, z^2 present, witness z")
    )
    for p in (0, 3, 5):
        ring = slicering.pgl2_subring(m, p, bound)
        verdict = slicering.normality_witness_rank1(m, p)
        spans = True
        for i in range(bound + 1):
            for j in range(bound + 1):
                for k in range(min(m, bound + 1)):
                    if i + j + k > bound:
                        continue
                    w = slicering.SlicePoly.make(m, p, {(i, j, k): 1})
                    if p:
                        spans = spans and ring.contains(w)
                    else:
                        spans = spans and (ring.contains(w) or ring.contains(2 * w))
        ok = spans and verdict.status == normality.NORMAL and verdict.witness is None
        results.append(
            CheckResult(
                f"slice/m{m}-p{p}", ok,
                "full ring up to doubling" if p == 0 else "full ring",
            )
        )
    image = slicering.adjoint_rep(slicering.loop_element(m, 0))
    coefficients = [c for row in image for entry in row for _, c in entry]
    regenerated = slicering.generated_span(coefficients, m, 0, bound)
    ok = regenerated.basis == slicering.pgl2_subring(m, 0, bound).basis
    results.append(
        CheckResult(
            f"slice/m{m}-adjoint", ok,
            "adjoint coefficients regenerate the subring",
        )
    )
    return results


def sweep_slice() -> list[CheckResult]:
    results = []
    for m in range(2, 7):
        results.extend(_slice_checks(m))
    return results


SUITES = ("classification", "covers", "figures", "table", "slice", "all")

_SUITE_FUNCTIONS = {
    "classification": sweep_classification,
    "covers": sweep_covers,
    "figures": sweep_figures,
    "table": sweep_table,
    "slice": sweep_slice,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        out = []
        for suite in SUITES[:-1]:
            out.extend(_SUITE_FUNCTIONS[suite]())
        return out
    if name not in _SUITE_FUNCTIONS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _SUITE_FUNCTIONS[name]()
