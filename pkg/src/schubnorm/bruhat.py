"""Dominance order on dominant cocharacters and its cover relations.

The cover generator follows Stembridge's classification of minimal
degenerations (simple-coroot steps and quasi-minuscule steps over a
connected support, with the C-type exception), so it refuses ambient G2;
the brute-force oracle enumerates the coroot-coefficient box and works
everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .lattice import member
from .rootdata import (
    Coweight,
    RootDatum,
    RootSystem,
    coroot_coefficients,
    fundamental_coweight,
    highest_root_coefficients,
    is_dominant,
    pairing_2rho,
    simple_coroot,
    zero_coweight,
)


class NotInLattice(ValueError):
    """Coweight outside the datum's cocharacter lattice."""


class AmbientG2(ValueError):
    """Stembridge's criteria exclude ambient type G2."""


SIMPLE_COROOT = "SimpleCoroot"
QM_ZERO = "QuasiMinusculeZero"
QM_CN = "QuasiMinusculeCn"


@dataclass(frozen=True)
class CoverEdge:
    lower: Coweight
    upper: Coweight
    support: frozenset
    kind: str | None


@dataclass(frozen=True)
class HasseDiagram:
    datum: RootDatum
    height_bound: int
    nodes: tuple
    edges: tuple


def _require_member(datum: RootDatum, mu: Coweight):
    if any(not isinstance(x, int) for x in mu.coords) or not member(mu.coords, datum.cochar):
        raise NotInLattice(f"{mu.coords} is not a cocharacter of {datum.label}")


def leq(datum: RootDatum, la: Coweight, mu: Coweight) -> bool:
    """Dominance order: mu - la a non-negative integral coroot combination."""
    _require_member(datum, la)
    _require_member(datum, mu)
    gap = coroot_coefficients(datum.system, mu - la)
    return all(isinstance(c, int) and c >= 0 for c in gap)


def minuscule_set(datum: RootDatum) -> frozenset:
    """Order-minimal dominant cocharacters, one per coroot-lattice coset.

    A fundamental coweight is minuscule exactly when its node carries
    coefficient 1 in the highest root.
    """
    rs = datum.system
    theta = highest_root_coefficients(rs)
    out = {zero_coweight(rs.rank)}
    for i in range(1, rs.rank + 1):
        if theta[i - 1] == 1:
            w = fundamental_coweight(rs.rank, i)
            if member(w.coords, datum.cochar):
                out.add(w)
    return frozenset(out)


@lru_cache(maxsize=None)
def _qm_coefficients(rs: RootSystem, nodes: tuple) -> tuple:
    """Coefficients over the simple coroots of `nodes` of the minimal
    dominant positive coroot of the sub-root-system."""
    m = len(nodes)
    sub = tuple(
        tuple(rs.cartan.entries[i - 1][j - 1] for j in nodes) for i in nodes
    )
    transposed = tuple(tuple(sub[j][i] for j in range(m)) for i in range(m))
    coroots = _positive_vectors(transposed)
    dominant = [
        c for c in coroots
        if all(sum(sub[i][j] * c[j] for j in range(m)) >= 0 for i in range(m))
    ]
    dominant.sort(key=sum)
    if len(dominant) > 1 and sum(dominant[0]) == sum(dominant[1]):
        raise AssertionError(f"quasi-minuscule not unique over {nodes}")
    return dominant[0]


def _positive_vectors(cartan) -> list:
    n = len(cartan)
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        fresh = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(beta[j] * cartan[j][i] for j in range(n))
                image = list(beta)
                image[i] -= pairing
                image = tuple(image)
                if image not in seen:
                    seen.add(image)
                    fresh.append(image)
        frontier = fresh
    return [v for v in seen if all(x >= 0 for x in v)]


def quasi_minuscule_over(rs: RootSystem, nodes) -> Coweight:
    """Quasi-minuscule coweight of the Levi on `nodes`, in ambient coordinates."""
    ordered = tuple(sorted(nodes))
    coeffs = _qm_coefficients(rs, ordered)
    out = zero_coweight(rs.rank)
    for c, i in zip(coeffs, ordered):
        out = out + c * simple_coroot(rs, i)
    return out


def quasi_minuscule(rs: RootSystem) -> Coweight:
    return quasi_minuscule_over(rs, range(1, rs.rank + 1))


@lru_cache(maxsize=None)
def _adjacency(rs: RootSystem) -> dict:
    n = rs.rank
    return {
        i: frozenset(
            j for j in range(1, n + 1) if j != i and rs.cartan.entries[i - 1][j - 1] < 0
        )
        for i in range(1, n + 1)
    }


def _is_connected(rs: RootSystem, nodes: frozenset) -> bool:
    adj = _adjacency(rs)
    stack = [next(iter(nodes))]
    seen = set(stack)
    while stack:
        for j in adj[stack.pop()] & nodes:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == set(nodes)


@lru_cache(maxsize=None)
def _connected_subsets(rs: RootSystem) -> tuple:
    # rank <= 8, so scanning all subsets is cheap
    n = rs.rank
    out = []
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            if _is_connected(rs, frozenset(combo)):
                out.append(combo)
    return tuple(out)


def _c_type_long_end(rs: RootSystem, nodes: tuple):
    """The long-end node when `nodes` induces a C-type chain, else None."""
    a = rs.cartan.entries
    adj = {i: [j for j in nodes if j != i and a[i - 1][j - 1] < 0] for i in nodes}
    if any(len(v) > 2 for v in adj.values()):
        return None
    ends = [i for i in nodes if len(adj[i]) == 1]
    doubles = [
        (i, j) for i in nodes for j in adj[i] if a[i - 1][j - 1] == -2
    ]
    if len(doubles) != 1:
        return None
    istar, nb = doubles[0]
    if istar not in ends or a[nb - 1][istar - 1] != -1:
        return None
    return istar


def covers_stembridge(datum: RootDatum, la: Coweight) -> frozenset:
    """All covers of la in the dominance order on the datum's dominant
    cocharacters, each tagged with the case that produced it."""
    rs = datum.system
    if rs.dtype.family == "G":
        raise AmbientG2("use covers_bruteforce for ambient G2")
    _require_member(datum, la)
    edges = set()
    for i in range(1, rs.rank + 1):
        mu = la + simple_coroot(rs, i)
        if is_dominant(mu):
            edges.add(CoverEdge(la, mu, frozenset({i}), SIMPLE_COROOT))
    # single-node supports are the simple-coroot case
    for nodes in _connected_subsets(rs):
        mu = la + quasi_minuscule_over(rs, nodes)
        if not is_dominant(mu):
            continue
        if all(la.coords[i - 1] == 0 for i in nodes):
            edges.add(CoverEdge(la, mu, frozenset(nodes), QM_ZERO))
            continue
        istar = _c_type_long_end(rs, nodes)
        if istar is not None and all(
            la.coords[i - 1] == (1 if i == istar else 0) for i in nodes
        ):
            edges.add(CoverEdge(la, mu, frozenset(nodes), QM_CN))
    return frozenset(edges)


def covers_bruteforce(datum: RootDatum, la: Coweight, mu: Coweight) -> bool:
    """True iff no dominant cocharacter sits strictly between la and mu."""
    rs = datum.system
    gap = coroot_coefficients(rs, mu - la)
    if any(not isinstance(c, int) or c < 0 for c in gap) or not any(gap):
        raise ValueError("covers_bruteforce requires la < mu")
    n = rs.rank
    cols = [simple_coroot(rs, i + 1).coords for i in range(n)]
    active = [i for i in range(n) if gap[i]]
    for cs in itertools.product(*[range(gap[i] + 1) for i in active]):
        if not any(cs) or list(cs) == [gap[i] for i in active]:
            continue
        nu = list(la.coords)
        for c, i in zip(cs, active):
            if c:
                col = cols[i]
                for k in range(n):
                    nu[k] += c * col[k]
        if all(x >= 0 for x in nu):
            return False
    return True


def dominant_nodes(datum: RootDatum, height_bound: int) -> tuple:
    """Dominant cocharacters of the datum with height at most the bound,
    in lexicographic coordinate order."""
    rs = datum.system
    t = rs.two_rho_row
    n = rs.rank
    out = []
    coords = [0] * n

    def scan(i: int, rem: int):
        if i == n:
            if member(tuple(coords), datum.cochar):
                out.append(Coweight(tuple(coords)))
            return
        m = 0
        while m * t[i] <= rem:
            coords[i] = m
            scan(i + 1, rem - m * t[i])
            m += 1
        coords[i] = 0

    scan(0, height_bound)
    return tuple(out)


def _gap_support(rs: RootSystem, la: Coweight, mu: Coweight) -> frozenset:
    gap = coroot_coefficients(rs, mu - la)
    return frozenset(i + 1 for i, c in enumerate(gap) if c != 0)


def hasse(datum: RootDatum, height_bound: int) -> HasseDiagram:
    """Every dominant cocharacter up to the height bound with its covers."""
    rs = datum.system
    if rs.dtype.family == "G":
        nodes = dominant_nodes(datum, height_bound)
        edges = []
        for la, mu in itertools.permutations(nodes, 2):
            gap = coroot_coefficients(rs, mu - la)
            if all(isinstance(c, int) and c >= 0 for c in gap) and any(gap):
                if covers_bruteforce(datum, la, mu):
                    edges.append(CoverEdge(la, mu, _gap_support(rs, la, mu), None))
    else:
        seen = set()
        frontier = [
            m for m in minuscule_set(datum) if pairing_2rho(rs, m) <= height_bound
        ]
        seen.update(frontier)
        edges = []
        while frontier:
            la = frontier.pop()
            for e in covers_stembridge(datum, la):
                if pairing_2rho(rs, e.upper) > height_bound:
                    continue
                edges.append(e)
                if e.upper not in seen:
                    seen.add(e.upper)
                    frontier.append(e.upper)
        nodes = tuple(sorted(seen, key=lambda v: v.coords))
    edges.sort(key=lambda e: (e.lower.coords, e.upper.coords))
    return HasseDiagram(datum, height_bound, tuple(nodes), tuple(edges))


def _fmt(mu: Coweight) -> str:
    return "(" + ",".join(str(x) for x in mu.coords) + ")"


def _fmt_support(support) -> str:
    return "{" + ",".join(str(i) for i in sorted(support)) + "}"


def export_dot(h: HasseDiagram) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for v in h.nodes:
        lines.append(f'  "{_fmt(v)}";')
    for e in h.edges:
        lines.append(
            f'  "{_fmt(e.lower)}" -> "{_fmt(e.upper)}" [label="{_fmt_support(e.support)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_json(h: HasseDiagram) -> dict:
    return {
        "nodes": [list(v.coords) for v in h.nodes],
        "edges": [
            {
                "lo": list(e.lower.coords),
                "hi": list(e.upper.coords),
                "support": sorted(e.support),
                "kind": e.kind,
            }
            for e in h.edges
        ],
    }
