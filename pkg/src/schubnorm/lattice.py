"""Exact integer and rational lattice arithmetic.

Everything here is pure and exact: Hermite/Smith normal forms over the
integers, membership tests, saturated intersections with rational
subspaces, and invariant factors of finite quotients. Rational inputs
are cleared to a common denominator so all normal-form work stays in Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class NotSublattice(ValueError):
    """The claimed sublattice is not contained in its parent."""


def _as_int(x) -> int:
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(f"entry {x!r} is not an integer")
    return int(f)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> IntMatrix:
        return cls(tuple(tuple(_as_int(x) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, u, v) with g = u*a + v*b, g >= 0
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _hnf_rows(rows: list[list[int]], transform: bool = False):
    """Row Hermite form: staircase pivots, positive, entries above reduced.

    With transform=True also returns U with U * input = output before
    zero-row removal, so rows of U at zero output rows span the left kernel.
    """
    work = [list(r) for r in rows]
    n = len(work)
    ncols = len(work[0]) if work else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivot = 0
    for col in range(ncols):
        found = next((i for i in range(pivot, n) if work[i][col] != 0), None)
        if found is None:
            continue
        work[pivot], work[found] = work[found], work[pivot]
        u[pivot], u[found] = u[found], u[pivot]
        for i in range(pivot + 1, n):
            if work[i][col] == 0:
                continue
            a, b = work[pivot][col], work[i][col]
            g, s, t = _exgcd(a, b)
            aa, bb = a // g, b // g
            rp, ri = work[pivot], work[i]
            work[pivot] = [s * x + t * y for x, y in zip(rp, ri)]
            work[i] = [-bb * x + aa * y for x, y in zip(rp, ri)]
            up, ui = u[pivot], u[i]
            u[pivot] = [s * x + t * y for x, y in zip(up, ui)]
            u[i] = [-bb * x + aa * y for x, y in zip(up, ui)]
        if work[pivot][col] < 0:
            work[pivot] = [-x for x in work[pivot]]
            u[pivot] = [-x for x in u[pivot]]
        p = work[pivot][col]
        for i in range(pivot):
            q = work[i][col] // p
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[pivot])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot])]
        pivot += 1
    if transform:
        return work, u, pivot
    return [r for r in work[:pivot]]


def hermite_form(m: IntMatrix) -> IntMatrix:
    """Canonical row Hermite normal form; dependent/zero rows are dropped."""
    return IntMatrix.from_rows(_hnf_rows([list(r) for r in m.entries]))


def smith_invariants(m: IntMatrix) -> list[int]:
    """Invariant factors d1 | d2 | ... of coker(Z^rows -> Z^cols); 1s dropped.

    A trailing 0 appears once per free rank of the cokernel.
    """
    a = [list(r) for r in m.entries]
    nrows, ncols = len(a), (len(a[0]) if a else 0)
    diag: list[int] = []
    t = 0
    while t < nrows and t < ncols:
        pos = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not pos:
            break
        _, pi, pj = min(pos)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
            dirty = [(abs(a[i][t]), i) for i in range(t + 1, nrows) if a[i][t]]
            if dirty:
                _, i = min(dirty)
                a[t], a[i] = a[i], a[t]
                continue
            dirty_c = [(abs(a[t][j]), j) for j in range(t + 1, ncols) if a[t][j]]
            if dirty_c:
                _, j = min(dirty_c)
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            offender = next(
                ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                 if a[i][j] % a[t][t] != 0),
                None,
            )
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = math.gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    rank = len(diag)
    return [d for d in diag if d != 1] + [0] * (ncols - rank)


@dataclass(frozen=True)
class Lattice:
    """Subgroup of (1/denominator) * Z^ambient_rank in canonical form.

    basis rows are the generators scaled by denominator, in Hermite form,
    so equal lattices compare equal structurally.
    """

    ambient_rank: int
    basis: IntMatrix
    denominator: int

    @classmethod
    def from_rows(cls, rows, ambient_rank: int) -> Lattice:
        frac_rows = [[Fraction(x) for x in row] for row in rows]
        for row in frac_rows:
            if len(row) != ambient_rank:
                raise ValueError("row length does not match ambient rank")
        den = 1
        for row in frac_rows:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        scaled = [[int(x * den) for x in row] for row in frac_rows]
        hnf = _hnf_rows(scaled)
        content = den
        for row in hnf:
            for x in row:
                content = math.gcd(content, x)
        if hnf and content > 1:
            den //= content
            hnf = [[x // content for x in row] for row in hnf]
        return cls(ambient_rank, IntMatrix.from_rows(hnf), den)

    @classmethod
    def standard(cls, n: int) -> Lattice:
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, n: int) -> Lattice:
        return cls(n, IntMatrix(()), 1)

    @property
    def rank(self) -> int:
        return self.basis.rows

    def generators(self) -> list[tuple[Fraction, ...]]:
        d = self.denominator
        return [tuple(Fraction(x, d) for x in row) for row in self.basis.entries]


def _coords_in_basis(v, lat: Lattice) -> list[Fraction] | None:
    """Coefficients of v over lat's basis rows, or None if outside the span
    or not an integral combination."""
    w = [Fraction(x) * lat.denominator for x in v]
    if len(w) != lat.ambient_rank:
        raise ValueError("vector length does not match ambient rank")
    coeffs: list[Fraction] = []
    for row in lat.basis.entries:
        j = next(k for k, x in enumerate(row) if x != 0)
        c = w[j] / row[j]
        coeffs.append(c)
        w = [a - c * b for a, b in zip(w, row)]
    if any(x != 0 for x in w):
        return None
    if any(c.denominator != 1 for c in coeffs):
        return None
    return coeffs


def member(v, lat: Lattice) -> bool:
    """True iff v lies in the Z-span of the lattice basis."""
    return _coords_in_basis(v, lat) is not None


def _rational_right_kernel(rows: list[list[Fraction]], ncols: int) -> list[list[int]]:
    # basis of {x : rows . x = 0}, each vector cleared to integers
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        row = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if row is None:
            continue
        m[r], m[row] = m[row], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    kernel: list[list[int]] = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        den = 1
        for x in vec:
            den = den * x.denominator // math.gcd(den, x.denominator)
        kernel.append([int(x * den) for x in vec])
    return kernel


def intersect_saturate(lat: Lattice, span) -> Lattice:
    """lat intersected with the rational span of the given vectors.

    The result is automatically saturated in lat relative to the span.
    """
    n = lat.ambient_rank
    span_rows = [[Fraction(x) for x in row] for row in span]
    kernel = _rational_right_kernel(span_rows, n)
    if not kernel:
        return lat
    if lat.rank == 0:
        return lat
    b = [list(r) for r in lat.basis.entries]
    constraint = [[sum(br[j] * k[j] for j in range(n)) for k in kernel] for br in b]
    _, u, pivot = _hnf_rows(constraint, transform=True)
    coeff_rows = u[pivot:]
    rows = []
    for c in coeff_rows:
        rows.append([sum(c[i] * b[i][j] for i in range(len(b))) for j in range(n)])
    return Lattice.from_rows(
        [[Fraction(x, lat.denominator) for x in row] for row in rows], n
    )


def quotient_invariants(sup: Lattice, sub: Lattice) -> list[int]:
    """Invariant factors of sup/sub; raises NotSublattice if sub is not
    contained in sup."""
    if sup.ambient_rank != sub.ambient_rank:
        raise NotSublattice("ambient ranks differ")
    rel = []
    for gen in sub.generators():
        coords = _coords_in_basis(gen, sup)
        if coords is None:
            raise NotSublattice(f"generator {gen} lies outside the parent lattice")
        rel.append([int(c) for c in coords])
    if not rel:
        return [0] * sup.rank
    rel_mat = IntMatrix.from_rows(rel)
    padded = IntMatrix.from_rows(
        [list(r) + [0] * (sup.rank - len(r)) for r in rel_mat.entries]
    ) if rel_mat.cols < sup.rank else rel_mat
    return smith_invariants(padded)
