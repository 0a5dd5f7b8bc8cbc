"""Root systems in Bourbaki numbering and root data (isogeny lattices).

Coweights are always written in the fundamental-coweight basis, so the
coweight lattice is the standard integer lattice, the coroot lattice is
spanned by the columns of the Cartan matrix, and every cocharacter
lattice of an isogeny type sits between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import IntMatrix, Lattice, member, quotient_invariants


class InvalidRank(ValueError):
    """Rank outside the allowed range for the family."""


class IndexOutOfRange(ValueError):
    """Node index outside 1..rank."""


_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise InvalidRank(f"unknown family {self.family!r}")
        if not _RANK_OK[self.family](self.rank):
            raise InvalidRank(f"rank {self.rank} is not allowed for type {self.family}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


ALL_TYPES: tuple[DynkinType, ...] = tuple(
    [DynkinType("A", n) for n in range(1, 9)]
    + [DynkinType("B", n) for n in range(2, 9)]
    + [DynkinType("C", n) for n in range(2, 9)]
    + [DynkinType("D", n) for n in range(4, 9)]
    + [DynkinType("E", n) for n in (6, 7, 8)]
    + [DynkinType("F", 4), DynkinType("G", 2)]
)


def _canon_num(x):
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class Coweight:
    """Vector in the fundamental-coweight basis, exact entries."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_canon_num(x) for x in self.coords))

    def __add__(self, other: Coweight) -> Coweight:
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Coweight) -> Coweight:
        return Coweight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, scalar) -> Coweight:
        return Coweight(tuple(scalar * a for a in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)


def zero_coweight(rank: int) -> Coweight:
    return Coweight((0,) * rank)


def fundamental_coweight(rank: int, i: int) -> Coweight:
    if not 1 <= i <= rank:
        raise IndexOutOfRange(f"node {i} outside 1..{rank}")
    return Coweight(tuple(1 if k == i - 1 else 0 for k in range(rank)))


def _cartan_entries(dtype: DynkinType) -> tuple[tuple[int, ...], ...]:
    f, n = dtype.family, dtype.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if f == "A":
        for i in range(1, n):
            bond(i, i + 1)
    elif f == "B":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 1, n, -2, -1)  # alpha_n short
    elif f == "C":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 1, n, -1, -2)  # alpha_n long
    elif f == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        a[n - 2][n - 3] = a[n - 3][n - 2] = -1
        a[n - 1][n - 2] = a[n - 2][n - 1] = 0
        bond(n - 2, n - 1)
        bond(n - 2, n)
    elif f == "E":
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]:
            bond(i, j)
        if n >= 7:
            bond(6, 7)
        if n == 8:
            bond(7, 8)
    elif f == "F":
        bond(1, 2)
        bond(2, 3, -2, -1)  # alpha_1, alpha_2 long
        bond(3, 4)
    elif f == "G":
        bond(1, 2, -1, -3)  # alpha_1 short
    return tuple(tuple(row) for row in a)


def _reflection_closure(cartan: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    # all roots as coefficient vectors over the simple ones; returns positives
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
    return tuple(sorted(v for v in seen if all(x >= 0 for x in v)))


@dataclass(frozen=True)
class RootSystem:
    dtype: DynkinType
    cartan: IntMatrix
    positive_coroots: tuple[tuple[int, ...], ...]
    two_rho_row: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.dtype.rank


@lru_cache(maxsize=None)
def build_root_system(dtype: DynkinType) -> RootSystem:
    """Cartan matrix, positive coroots, and the height row of the type."""
    cartan = _cartan_entries(dtype)
    positive_roots = _reflection_closure(cartan)
    transposed = tuple(tuple(cartan[j][i] for j in range(len(cartan))) for i in range(len(cartan)))
    positive_coroots = _reflection_closure(transposed)
    two_rho = tuple(sum(root[j] for root in positive_roots) for j in range(len(cartan)))
    return RootSystem(dtype, IntMatrix(cartan), positive_coroots, two_rho)


@lru_cache(maxsize=None)
def _det_and_adjugate(dtype: DynkinType):
    c = build_root_system(dtype).cartan.entries
    n = len(c)
    # invert over the rationals, then scale back to the integer adjugate
    aug = [[Fraction(c[i][j]) for j in range(n)] + [Fraction(1 if i == k else 0) for k in range(n)]
           for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        row = next(r for r in range(col, n) if aug[r][col] != 0)
        if row != col:
            aug[col], aug[row] = aug[row], aug[col]
            det = -det
        det *= aug[col][col]
        aug[col] = [x / aug[col][col] for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    det_i = int(det)
    adj = tuple(tuple(int(aug[i][n + j] * det) for j in range(n)) for i in range(n))
    return det_i, adj


def cartan_det(rs: RootSystem) -> int:
    return _det_and_adjugate(rs.dtype)[0]


def coroot_coefficients(rs: RootSystem, mu: Coweight) -> tuple:
    """Exact coefficients x with Cartan . x = mu, i.e. mu as a combination
    of simple coroots."""
    det, adj = _det_and_adjugate(rs.dtype)
    n = rs.rank
    return tuple(
        _canon_num(Fraction(sum(adj[i][j] * mu.coords[j] for j in range(n)), det))
        for i in range(n)
    )


def pairing_2rho(rs: RootSystem, mu: Coweight):
    return _canon_num(sum(t * x for t, x in zip(rs.two_rho_row, mu.coords)))


def is_dominant(mu: Coweight) -> bool:
    return all(x >= 0 for x in mu.coords)


def simple_coroot(rs: RootSystem, i: int) -> Coweight:
    """alpha_i-vee in the fundamental-coweight basis: column i of the Cartan."""
    if not 1 <= i <= rs.rank:
        raise IndexOutOfRange(f"node {i} outside 1..{rs.rank}")
    return Coweight(tuple(rs.cartan.entries[j][i - 1] for j in range(rs.rank)))


def highest_root_coefficients(rs: RootSystem) -> tuple[int, ...]:
    cartan = rs.cartan.entries
    positives = _reflection_closure(cartan)
    return max(positives, key=sum)


@lru_cache(maxsize=None)
def coroot_lattice(rs: RootSystem) -> Lattice:
    cols = [[rs.cartan.entries[j][i] for j in range(rs.rank)] for i in range(rs.rank)]
    return Lattice.from_rows(cols, rs.rank)


def coweight_lattice(rs: RootSystem) -> Lattice:
    return Lattice.standard(rs.rank)


@dataclass(frozen=True)
class RootDatum:
    system: RootSystem
    cochar: Lattice
    label: str

    def __post_init__(self):
        n = self.system.rank
        if self.cochar.denominator != 1:
            raise ValueError("cocharacter lattice must lie inside the coweight lattice")
        q = coroot_lattice(self.system)
        for gen in q.generators():
            if not member(gen, self.cochar):
                raise ValueError("cocharacter lattice must contain the coroot lattice")
        if self.cochar.rank != n:
            raise ValueError("cocharacter lattice must have full rank")

    @property
    def rank(self) -> int:
        return self.system.rank


def pi1_invariants(datum: RootDatum) -> list[int]:
    """Invariant factors of X_*(T) / (coroot lattice)."""
    return quotient_invariants(datum.cochar, coroot_lattice(datum.system))


def pi1_order(datum: RootDatum) -> int:
    order = 1
    for d in pi1_invariants(datum):
        order *= d
    return order


def in_cochar_lattice(datum: RootDatum, mu: Coweight) -> bool:
    return member(mu.coords, datum.cochar)


def _lattice_q_plus(dtype: DynkinType, extra: list[tuple[int, ...]]) -> Lattice:
    rs = build_root_system(dtype)
    rows = [list(row) for row in coroot_lattice(rs).generators()]
    rows.extend(list(v) for v in extra)
    return Lattice.from_rows(rows, dtype.rank)


@lru_cache(maxsize=None)
def _isogeny_tuple(dtype: DynkinType) -> tuple[RootDatum, ...]:
    f, n = dtype.family, dtype.rank
    rs = build_root_system(dtype)
    q = coroot_lattice(rs)
    p = Lattice.standard(n)
    data: list[RootDatum] = []
    if f == "A":
        for ell in sorted(d for d in range(1, n + 2) if (n + 1) % d == 0):
            if ell == 1:
                data.append(RootDatum(rs, q, f"SL{n + 1}"))
            elif ell == n + 1:
                data.append(RootDatum(rs, p, f"PGL{n + 1}"))
            else:
                gen = tuple((n + 1) // ell if k == 0 else 0 for k in range(n))
                data.append(RootDatum(rs, _lattice_q_plus(dtype, [gen]), f"SL{n + 1}/mu{ell}"))
    elif f == "B":
        data = [RootDatum(rs, q, f"Spin{2 * n + 1}"), RootDatum(rs, p, f"SO{2 * n + 1}")]
    elif f == "C":
        data = [RootDatum(rs, q, f"Sp{2 * n}"), RootDatum(rs, p, f"PSp{2 * n}")]
    elif f == "D":
        w1 = tuple(1 if k == 0 else 0 for k in range(n))
        data = [RootDatum(rs, q, f"Spin{2 * n}"),
                RootDatum(rs, _lattice_q_plus(dtype, [w1]), f"SO{2 * n}")]
        if n % 2 == 0:
            wn = tuple(1 if k == n - 1 else 0 for k in range(n))
            wn1 = tuple(1 if k == n - 2 else 0 for k in range(n))
            data.append(RootDatum(rs, _lattice_q_plus(dtype, [wn]), "half-spin"))
            data.append(RootDatum(rs, _lattice_q_plus(dtype, [wn1]), "half-spin-flip"))
        data.append(RootDatum(rs, p, f"PSO{2 * n}"))
    elif f == "E" and n in (6, 7):
        data = [RootDatum(rs, q, "simply-connected"), RootDatum(rs, p, "adjoint")]
    else:
        data = [RootDatum(rs, p, "adjoint")]
    return tuple(data)


def isogeny_lattices(dtype: DynkinType) -> list[RootDatum]:
    """All cocharacter lattices between the coroot and coweight lattices,
    labeled; coroot lattice first, coweight lattice last."""
    return list(_isogeny_tuple(dtype))


def serialize_datum(datum: RootDatum) -> str:
    return f"{datum.system.dtype}:{datum.label}"


def _parse_dtype(text: str) -> DynkinType:
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"malformed type {text!r}")
    return DynkinType(text[0], int(text[1:]))


def parse_datum(text: str) -> RootDatum:
    """Parse `<family><rank>:<label>`; generic aliases adjoint and
    simply-connected work for every family."""
    if ":" not in text:
        raise ValueError(f"datum {text!r} must look like D6:half-spin")
    head, label = text.split(":", 1)
    try:
        dtype = _parse_dtype(head)
    except InvalidRank as exc:
        raise ValueError(str(exc)) from None
    data = _isogeny_tuple(dtype)
    table: dict[str, RootDatum] = {d.label: d for d in data}
    table.setdefault("simply-connected", data[0])
    table.setdefault("adjoint", data[-1])
    if dtype.family == "A":
        table.setdefault(f"SL{dtype.rank + 1}/mu1", data[0])
        table.setdefault(f"SL{dtype.rank + 1}/mu{dtype.rank + 1}", data[-1])
    if label not in table:
        raise ValueError(f"unknown isogeny label {label!r} for type {dtype}")
    return table[label]


def _epsilon_rows(dtype: DynkinType) -> list[list[Fraction]]:
    f, n = dtype.family, dtype.rank
    rows = []
    if f in ("B", "C"):
        for i in range(1, n):
            rows.append([Fraction(1)] * i + [Fraction(0)] * (n - i))
        last = Fraction(1) if f == "B" else Fraction(1, 2)
        rows.append([last] * n)
    elif f == "D":
        for i in range(1, n - 1):
            rows.append([Fraction(1)] * i + [Fraction(0)] * (n - i))
        rows.append([Fraction(1, 2)] * (n - 1) + [Fraction(-1, 2)])
        rows.append([Fraction(1, 2)] * n)
    else:
        raise ValueError("epsilon coordinates are only defined for types B, C, D")
    return rows


def pretty_epsilon(rs: RootSystem, mu: Coweight) -> tuple:
    """Debugging view of a B/C/D coweight in the standard epsilon basis."""
    rows = _epsilon_rows(rs.dtype)
    n = rs.rank
    return tuple(
        _canon_num(sum(Fraction(mu.coords[i]) * rows[i][k] for i in range(n)))
        for k in range(n)
    )
