"""Exact models of the rank-1 slice singularity z^m + x*y = 0.

Spec k[x,y,z]/(z^m + xy) is the transverse slice through a minimal
degeneration in a rank-1 affine Grassmannian; the adjoint quotient sees
only a subring of it, and normality of the adjoint slice is decided by
whether that subring is integrally closed.  Everything here is exact
(integer or prime-field coefficients) and term-based: the defining
relation rewrites a pure z-power into a single monomial, so products of
monomial terms stay monomial terms and the subring closure is plain
bookkeeping over exponent triples, no Groebner bases required.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .normality import NON_NORMAL, NORMAL


class BadExponent(ValueError):
    """The hypersurface z^m + xy is smooth for m < 2; nothing to decide."""


class NonInvertible(ValueError):
    """Determinant is not a unit times a loop-parameter power."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _require_geometry(m: int, p: int) -> None:
    if m < 2:
        raise BadExponent(f"need m >= 2, got m = {m}")
    if p != 0 and not _is_prime(p):
        raise ValueError(f"characteristic must be 0 or prime, got {p}")


def _reduce_term(m: int, i: int, j: int, k: int, c: int):
    # z^m = -xy, applied until the z-exponent is reduced
    while k >= m:
        i, j, k, c = i + 1, j + 1, k - m, -c
    return i, j, k, c


def _mono_str(w: tuple[int, int, int]) -> str:
    parts = [
        f"{v}^{e}" if e > 1 else v for v, e in zip("xyz", w) if e
    ]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class SlicePoly:
    """Element of k[x,y,z]/(z^m + xy) with k = Z (p = 0) or F_p.

    ``terms`` is a sorted tuple of ((i, j, k), coeff) pairs with k < m,
    coeff nonzero, and 0 <= coeff < p when p > 0.
    """

    m: int
    p: int
    terms: tuple[tuple[tuple[int, int, int], int], ...]

    @classmethod
    def make(cls, m: int, p: int, items) -> "SlicePoly":
        if m < 1:
            raise ValueError(f"need m >= 1 for the rewrite to terminate, got {m}")
        if p < 0:
            raise ValueError(f"characteristic cannot be negative: {p}")
        pairs = items.items() if isinstance(items, dict) else items
        acc: dict[tuple[int, int, int], int] = {}
        for (i, j, k), c in pairs:
            if min(i, j, k) < 0:
                raise ValueError(f"negative exponent in {(i, j, k)}")
            i, j, k, c = _reduce_term(m, i, j, k, c)
            w = (i, j, k)
            acc[w] = acc.get(w, 0) + c
        if p:
            acc = {w: c % p for w, c in acc.items()}
        return cls(m, p, tuple(sorted((w, c) for w, c in acc.items() if c)))

    def _glue(self, other: "SlicePoly") -> None:
        if (self.m, self.p) != (other.m, other.p):
            raise ValueError("operands live in different slice rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "SlicePoly") -> "SlicePoly":
        self._glue(other)
        return SlicePoly.make(self.m, self.p, list(self.terms) + list(other.terms))

    def __sub__(self, other: "SlicePoly") -> "SlicePoly":
        return self + (-other)

    def __neg__(self) -> "SlicePoly":
        return SlicePoly.make(self.m, self.p, [(w, -c) for w, c in self.terms])

    def __mul__(self, other: "SlicePoly") -> "SlicePoly":
        self._glue(other)
        out = []
        for (i1, j1, k1), c1 in self.terms:
            for (i2, j2, k2), c2 in other.terms:
                out.append(((i1 + i2, j1 + j2, k1 + k2), c1 * c2))
        return SlicePoly.make(self.m, self.p, out)

    def __rmul__(self, scalar: int) -> "SlicePoly":
        return SlicePoly.make(self.m, self.p, [(w, scalar * c) for w, c in self.terms])

    def degree(self) -> int:
        return max((sum(w) for w, _ in self.terms), default=-1)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.terms:
            mono = _mono_str(w)
            if mono == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


@dataclass(frozen=True)
class LaurentPoly:
    """Loop-parameter polynomial with SlicePoly coefficients.

    ``terms`` pairs each loop-parameter exponent (any integer) with a
    nonzero SlicePoly, sorted by exponent.
    """

    m: int
    p: int
    terms: tuple[tuple[int, SlicePoly], ...]

    @classmethod
    def make(cls, m: int, p: int, items) -> "LaurentPoly":
        pairs = items.items() if isinstance(items, dict) else items
        acc: dict[int, SlicePoly] = {}
        for e, coeff in pairs:
            if (coeff.m, coeff.p) != (m, p):
                raise ValueError("coefficient lives in a different slice ring")
            acc[e] = acc[e] + coeff if e in acc else coeff
        return cls(m, p, tuple(sorted((e, c) for e, c in acc.items() if c)))

    def _glue(self, other: "LaurentPoly") -> None:
        if (self.m, self.p) != (other.m, other.p):
            raise ValueError("operands live over different slice rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._glue(other)
        return LaurentPoly.make(self.m, self.p, list(self.terms) + list(other.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly.make(self.m, self.p, [(e, -c) for e, c in self.terms])

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._glue(other)
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((e1 + e2, c1 * c2))
        return LaurentPoly.make(self.m, self.p, out)

    def __rmul__(self, scalar: int) -> "LaurentPoly":
        return LaurentPoly.make(self.m, self.p, [(e, scalar * c) for e, c in self.terms])


def _unit_inverse(det: LaurentPoly) -> LaurentPoly:
    """Invert a determinant of the form (unit scalar) * (loop power)."""
    if len(det.terms) != 1:
        raise NonInvertible(f"determinant has {len(det.terms)} loop terms")
    e, coeff = det.terms[0]
    if len(coeff.terms) != 1 or coeff.terms[0][0] != (0, 0, 0):
        raise NonInvertible("determinant coefficient is not a scalar")
    c = coeff.terms[0][1]
    if det.p:
        cinv = pow(c, -1, det.p)
    elif c in (1, -1):
        cinv = c
    else:
        raise NonInvertible(f"scalar {c} is not a unit over the integers")
    unit = SlicePoly.make(det.m, det.p, {(0, 0, 0): cinv})
    return LaurentPoly.make(det.m, det.p, {-e: unit})


def adjoint_rep(mat) -> tuple:
    """Image of a 2x2 loop-group element in the adjoint representation.

    The 4x4 matrix acts on gl_2 in the basis (identity, coroot, upper
    root vector, lower root vector); the first line is always fixed.
    Raises NonInvertible unless the determinant is a unit scalar times a
    power of the loop parameter.
    """
    (a, b), (c, d) = mat
    det = a * d - b * c
    inv = _unit_inverse(det)
    zero = LaurentPoly.make(det.m, det.p, {})
    rows = (
        (det, zero, zero, zero),
        (zero, a * d + b * c, -(a * c), b * d),
        (zero, -(2 * (a * b)), a * a, -(b * b)),
        (zero, 2 * (c * d), -(c * c), d * d),
    )
    return tuple(tuple(inv * entry for entry in row) for row in rows)


def loop_element(m: int, p: int):
    """A loop-group element whose slice through the m-th coweight hits 0.

    Unit determinant by a telescoping cancellation against z^m = -xy, so
    the adjoint image exists and its loop coefficients generate the
    subring that pgl2_subring computes.
    """
    _require_geometry(m, p)
    n = m - 2
    a = LaurentPoly.make(
        m, p,
        {-j: SlicePoly.make(m, p, {(0, 0, j): (-1) ** j}) for j in range(n + 2)},
    )
    b = LaurentPoly.make(m, p, {-1: SlicePoly.make(m, p, {(1, 0, 0): (-1) ** n})})
    c = LaurentPoly.make(m, p, {-(n + 1): SlicePoly.make(m, p, {(0, 1, 0): 1})})
    d = LaurentPoly.make(
        m, p,
        {0: SlicePoly.make(m, p, {(0, 0, 0): 1}), -1: SlicePoly.make(m, p, {(0, 0, 1): 1})},
    )
    return ((a, b), (c, d))


@dataclass(frozen=True)
class SlicePresentation:
    """Hypersurface chart of the full (simply-connected side) slice ring."""

    m: int
    relation: tuple[tuple[tuple[int, int, int], int], ...]
    dimension: int = 2
    singular_points: tuple[tuple[int, int, int], ...] = ((0, 0, 0),)

    def jacobian_rank_at(self, point) -> int:
        x0, y0, z0 = point
        if z0 ** self.m + x0 * y0 != 0:
            raise ValueError(f"{point} does not satisfy z^m + xy = 0")
        grad = (y0, x0, self.m * z0 ** (self.m - 1))
        return 1 if any(grad) else 0


def gl2_slice_ring(m: int) -> SlicePresentation:
    """Present the rank-1 slice as the hypersurface z^m + xy = 0 in A^3."""
    if m < 2:
        raise BadExponent(f"need m >= 2, got m = {m}")
    return SlicePresentation(m=m, relation=(((1, 1, 0), 1), ((0, 0, m), 1)))


@dataclass(frozen=True)
class SubringBasis:
    """Monomial-term basis of a term-generated subring, up to a degree bound.

    Over Z each reachable reduced monomial w carries the gcd d of all
    integers c with c*w in the subring, and the basis element is d*w;
    over F_p membership is all-or-nothing and the stored coefficient is 1.
    """

    m: int
    p: int
    degree_bound: int
    basis: frozenset[SlicePoly]

    def _table(self) -> dict[tuple[int, int, int], int]:
        return {w: c for b in self.basis for w, c in b.terms}

    def contains(self, poly: SlicePoly) -> bool:
        if (poly.m, poly.p) != (self.m, self.p):
            raise ValueError("query lives in a different slice ring")
        table = self._table()
        for w, c in poly.terms:
            if sum(w) > self.degree_bound:
                raise ValueError(f"degree of {_mono_str(w)} exceeds the computed bound")
            d = table.get(w)
            if d is None or (self.p == 0 and c % d):
                return False
        return True


def _closure(gen_terms, m: int, p: int, cap: int) -> dict:
    # reachable monomial -> gcd coefficient (always 1 when p > 0)
    best = {(0, 0, 0): 1}
    queue = [(0, 0, 0)]
    while queue:
        w = queue.pop()
        dw = best[w]
        for (gi, gj, gk), gc in gen_terms:
            i, j, k, c = _reduce_term(m, w[0] + gi, w[1] + gj, w[2] + gk, dw * gc)
            if i + j + k > cap:
                continue
            pw = (i, j, k)
            merged = 1 if p else gcd(best.get(pw, 0), abs(c))
            if merged != best.get(pw):
                best[pw] = merged
                queue.append(pw)
    return best


def generated_span(generators, m: int, p: int, degree_bound: int) -> SubringBasis:
    """Close a family of polynomials into a term-spanned subring.

    Each generator is split into its monomial terms; since the rewrite
    z^m -> -xy sends terms to terms, products of generators only ever
    populate single monomials and the span is computed exactly by a gcd
    walk over exponent triples.  The walk is re-run with a growing
    internal degree cap until the part visible below ``degree_bound``
    stops changing, which absorbs rewrite chains that dip back down from
    above the bound.
    """
    gen_terms = []
    for g in generators:
        if (g.m, g.p) != (m, p):
            raise ValueError("generator lives in a different slice ring")
        gen_terms.extend(g.terms)
    cap = degree_bound
    seen = None
    while True:
        full = _closure(tuple(gen_terms), m, p, cap)
        visible = {w: d for w, d in full.items() if sum(w) <= degree_bound}
        if visible == seen:
            break
        seen = visible
        cap += 2
    basis = frozenset(SlicePoly.make(m, p, {w: d}) for w, d in seen.items())
    return SubringBasis(m, p, degree_bound, basis)


@lru_cache(maxsize=None)
def pgl2_subring(m: int, p: int, degree_bound: int) -> SubringBasis:
    """Subring of the slice ring visible to the adjoint group.

    Generated by x, y, xz, yz, z^2 and 2z; the bare coordinate z is the
    element whose presence or absence decides normality.
    """
    _require_geometry(m, p)
    if degree_bound < m:
        raise ValueError(
            f"degree bound {degree_bound} cannot see the relation in degree {m}"
        )
    gens = (
        SlicePoly.make(m, p, {(1, 0, 0): 1}),
        SlicePoly.make(m, p, {(0, 1, 0): 1}),
        SlicePoly.make(m, p, {(1, 0, 1): 1}),
        SlicePoly.make(m, p, {(0, 1, 1): 1}),
        SlicePoly.make(m, p, {(0, 0, 2): 1}),
        SlicePoly.make(m, p, {(0, 0, 1): 2}),
    )
    return generated_span(tuple(g for g in gens if g), m, p, degree_bound)


@dataclass(frozen=True)
class RankOneVerdict:
    """Outcome of the integral-closure test for one adjoint slice ring."""

    m: int
    p: int
    status: str
    witness: SlicePoly | None


def normality_witness_rank1(m: int, p: int) -> RankOneVerdict:
    """Decide normality of the adjoint rank-1 slice ring in characteristic p.

    In characteristic 2 the coordinate z is integral over the subring
    (its square lies inside) but absent from it, so z itself witnesses
    the failure of normality.  In every other characteristic z is
    already in the subring, or over Z the ring is normal with 2z inside;
    the relevant memberships are re-checked here rather than trusted.
    """
    _require_geometry(m, p)
    ring = pgl2_subring(m, p, m + 2)
    z = SlicePoly.make(m, p, {(0, 0, 1): 1})
    if p == 2:
        assert not ring.contains(z) and ring.contains(z * z)
        return RankOneVerdict(m, p, NON_NORMAL, z)
    if p == 0:
        assert not ring.contains(z) and ring.contains(2 * z)
        return RankOneVerdict(m, p, NORMAL, None)
    assert ring.contains(z)
    return RankOneVerdict(m, p, NORMAL, None)
