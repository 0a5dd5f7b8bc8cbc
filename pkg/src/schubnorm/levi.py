"""Levi subgroups cut out by supports.

For a comparable pair la <= mu the gap mu - la is supported on a set I of
simple coroots, and the Levi subgroup M sitting on that wall controls the
transversal slice at la.  What the normality analysis needs from M is pure
lattice data: the span of the coroots in I, its saturation inside the
cocharacter lattice (these are the cocharacters landing in T cap M_der),
the quotient pi_1(M_der), and the rational projection of la onto the span.
When the projection is integral the whole slice problem transports into
M_der and splits along the connected components of I, provided the
saturation itself splits; entangled components are reported as
unavailable rather than silently factored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bruhat import leq
from .lattice import Lattice, intersect_saturate, member, quotient_invariants
from .rootdata import (
    Coweight,
    DynkinType,
    RootDatum,
    RootSystem,
    build_root_system,
    coroot_coefficients,
    isogeny_lattices,
    simple_coroot,
    zero_coweight,
)


class NotComparable(ValueError):
    """The two coweights are not related in the dominance order."""


@dataclass(frozen=True)
class LeviData:
    ambient: RootDatum
    support: frozenset
    components: tuple
    derived_lattice: Lattice
    coroot_lattice: Lattice
    pi1_invariants: tuple
    component_pi1: tuple


@dataclass(frozen=True)
class ProjectionResult:
    la_der: Coweight
    kappa: Coweight
    integral: bool


def support(datum: RootDatum, la: Coweight, mu: Coweight) -> frozenset:
    """Indices of the simple coroots appearing in mu - la."""
    if not leq(datum, la, mu):
        raise NotComparable(f"{la.coords} is not below {mu.coords}")
    coeffs = coroot_coefficients(datum.system, mu - la)
    return frozenset(i + 1 for i, c in enumerate(coeffs) if c != 0)


def _split_components(cartan, nodes):
    remaining = set(nodes)
    comps = []
    while remaining:
        blob = {min(remaining)}
        frontier = list(blob)
        while frontier:
            cur = frontier.pop()
            for j in remaining - blob:
                if cartan[cur - 1][j - 1] != 0:
                    blob.add(j)
                    frontier.append(j)
        comps.append(tuple(sorted(blob)))
        remaining -= blob
    return comps


def _chain_walk(adj, start):
    walk = [start]
    prev = None
    while True:
        step = [x for x in adj[walk[-1]] if x != prev]
        if not step:
            return tuple(walk)
        prev = walk[-1]
        walk.append(step[0])


def _component_type(rs: RootSystem, nodes: tuple) -> tuple:
    """Dynkin type of a connected subdiagram plus its Bourbaki ordering.

    The ordering lists ambient nodes so that position k plays the role of
    node k+1 in the reference diagram; it is re-derived from the shape of
    the induced Cartan submatrix and verified against it.
    """
    a = rs.cartan.entries
    m = len(nodes)
    if m == 1:
        result = DynkinType("A", 1), nodes
        return _verified(rs, result)
    if rs.dtype.family == "G":
        return _verified(rs, (DynkinType("G", 2), (1, 2)))
    adj = {i: [j for j in nodes if j != i and a[i - 1][j - 1] != 0] for i in nodes}
    doubles = [(i, j) for i in nodes for j in nodes if a[i - 1][j - 1] == -2]
    branch = [i for i in nodes if len(adj[i]) == 3]
    if branch:
        arms = []
        for first in adj[branch[0]]:
            arm = [first]
            prev = branch[0]
            while True:
                step = [x for x in adj[arm[-1]] if x != prev]
                if not step:
                    break
                prev = arm[-1]
                arm.append(step[0])
            arms.append(arm)
        arms.sort(key=lambda arm: (len(arm), arm))
        if len(arms[1]) == 1:
            ordering = tuple(reversed(arms[2])) + (branch[0], arms[0][0], arms[1][0])
            return _verified(rs, (DynkinType("D", m), ordering))
        ordering = (arms[1][1], arms[0][0], arms[1][0], branch[0]) + tuple(arms[2])
        return _verified(rs, (DynkinType("E", m), ordering))
    ends = [i for i in nodes if len(adj[i]) == 1]
    if not doubles:
        return _verified(rs, (DynkinType("A", m), _chain_walk(adj, min(ends))))
    long_root, short_root = doubles[0]
    if m == 2:
        return _verified(rs, (DynkinType("B", 2), (long_root, short_root)))
    if short_root in ends:
        start = next(e for e in ends if e != short_root)
        return _verified(rs, (DynkinType("B", m), _chain_walk(adj, start)))
    if long_root in ends:
        start = next(e for e in ends if e != long_root)
        return _verified(rs, (DynkinType("C", m), _chain_walk(adj, start)))
    # interior double bond: the full F4 diagram, oriented long side first
    walk = _chain_walk(adj, min(ends))
    if a[walk[1] - 1][walk[2] - 1] != -2:
        walk = tuple(reversed(walk))
    return _verified(rs, (DynkinType("F", 4), walk))


def _verified(rs: RootSystem, result: tuple) -> tuple:
    dtype, ordering = result
    ref = build_root_system(dtype).cartan.entries
    amb = rs.cartan.entries
    got = tuple(tuple(amb[i - 1][j - 1] for j in ordering) for i in ordering)
    if got != ref:
        raise AssertionError(f"subdiagram {ordering} is not of type {dtype}")
    return result


def levi_data(datum: RootDatum, nodes) -> LeviData:
    return _levi_data(datum, tuple(sorted(frozenset(nodes))))


@lru_cache(maxsize=None)
def _levi_data(datum: RootDatum, nodes: tuple) -> LeviData:
    rs = datum.system
    n = rs.rank
    coroots = [simple_coroot(rs, i).coords for i in nodes]
    if nodes:
        span_lat = Lattice.from_rows(coroots, n)
        derived = intersect_saturate(datum.cochar, coroots)
    else:
        span_lat = derived = Lattice.zero(n)
    comp_nodes = _split_components(rs.cartan.entries, nodes)
    comp_pi1 = []
    for comp in comp_nodes:
        rows = [simple_coroot(rs, i).coords for i in comp]
        sat = intersect_saturate(datum.cochar, rows)
        comp_pi1.append(tuple(quotient_invariants(sat, Lattice.from_rows(rows, n))))
    return LeviData(
        ambient=datum,
        support=frozenset(nodes),
        components=tuple(_component_type(rs, comp) for comp in comp_nodes),
        derived_lattice=derived,
        coroot_lattice=span_lat,
        pi1_invariants=tuple(quotient_invariants(derived, span_lat)),
        component_pi1=tuple(comp_pi1),
    )


def _solve(aug):
    # exact Gauss on an invertible square system, augmented column last
    k = len(aug)
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        head = aug[col][col]
        aug[col] = [x / head for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def project_der(datum: RootDatum, nodes, la: Coweight) -> ProjectionResult:
    """Projection of la onto the rational span of the coroots in `nodes`.

    The projection keeps every pairing with a simple root of the support;
    kappa = la - la_der is the leftover central part.
    """
    rs = datum.system
    idx = tuple(sorted(frozenset(nodes)))
    if not idx:
        return ProjectionResult(zero_coweight(rs.rank), la, True)
    aug = [
        [Fraction(rs.cartan.entries[i - 1][j - 1]) for j in idx]
        + [Fraction(la.coords[i - 1])]
        for i in idx
    ]
    xs = _solve(aug)
    coords = [Fraction(0)] * rs.rank
    for x, j in zip(xs, idx):
        for t, c in enumerate(simple_coroot(rs, j).coords):
            coords[t] += x * c
    la_der = Coweight(tuple(coords))
    integral = member(la_der.coords, levi_data(datum, idx).derived_lattice)
    return ProjectionResult(la_der=la_der, kappa=la - la_der, integral=integral)


def levi_reduction(datum: RootDatum, la: Coweight, mu: Coweight):
    """Transport the pair la <= mu into the derived group of its Levi.

    Returns one (root datum, la_der, mu_der) triple per connected component
    of the support, or None when the reduction is unavailable: either the
    projection la_der is not a cocharacter, or the derived lattice does not
    split as a direct sum over the components, in which case the component
    data would misrepresent M_der.
    """
    nodes = support(datum, la, mu)
    if not nodes:
        return []
    ld = levi_data(datum, nodes)
    proj = project_der(datum, nodes, la)
    if not proj.integral:
        return None
    total = 1
    for v in ld.pi1_invariants:
        total *= v
    factored = 1
    for invs in ld.component_pi1:
        for v in invs:
            factored *= v
    if total != factored:
        return None
    rs = datum.system
    out = []
    for dtype_c, ordering in ld.components:
        rows = [simple_coroot(rs, i).coords for i in ordering]
        sat = intersect_saturate(datum.cochar, rows)
        comp_rows = [[g[i - 1] for i in ordering] for g in sat.generators()]
        lat_c = Lattice.from_rows(comp_rows, dtype_c.rank)
        comp = next(
            (d for d in isogeny_lattices(dtype_c) if d.cochar == lat_c), None
        )
        if comp is None:
            raise AssertionError("component lattice outside the isogeny catalog")
        la_c = Coweight(tuple(la.coords[i - 1] for i in ordering))
        mu_c = Coweight(tuple(mu.coords[i - 1] for i in ordering))
        out.append((comp, la_c, mu_c))
    return out
