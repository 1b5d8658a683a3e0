"""Exact integer linear algebra: ranks over Q and integer lattices.

Ranks use fraction-free (Bareiss) elimination.  Sublattices of ``Z^d`` are
kept in Hermite normal form, so two :class:`Lattice` objects spanning the
same group compare equal structurally.

The canonical form stores basis vectors as rows in echelon order: the pivot
of each row is positive, lies strictly right of the pivot of the previous
row, and every entry above a pivot is reduced into ``[0, pivot)``.  Read as
columns, the basis matrix is lower triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "Lattice",
    "DimensionError",
    "rank_q",
    "hermite_rows",
    "kernel_lattice",
    "image_lattice",
    "lattice_eq",
    "lattice_sum",
    "lattice_intersection",
    "preimage_lattice",
    "member",
    "coordinates",
    "solve",
    "saturation",
    "annihilator",
]


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        ents = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ents) != self.rows or any(len(r) != self.cols for r in ents):
            raise DimensionError(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in self.entries),
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.entries))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @staticmethod
    def hstack(*ms: IntMatrix) -> IntMatrix:
        rows = ms[0].rows
        if any(m.rows != rows for m in ms):
            raise DimensionError("hstack needs equal row counts")
        return IntMatrix(rows, sum(m.cols for m in ms), tuple(sum((m.entries[i] for m in ms), ()) for i in range(rows)))

    @staticmethod
    def vstack(*ms: IntMatrix) -> IntMatrix:
        cols = ms[0].cols
        if any(m.cols != cols for m in ms):
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix(sum(m.rows for m in ms), cols, sum((m.entries for m in ms), ()))

    @staticmethod
    def block_diag(*ms: IntMatrix) -> IntMatrix:
        rows = sum(m.rows for m in ms)
        cols = sum(m.cols for m in ms)
        out = []
        c0 = 0
        for m in ms:
            for r in m.entries:
                out.append((0,) * c0 + r + (0,) * (cols - c0 - m.cols))
            c0 += m.cols
        return IntMatrix(rows, cols, tuple(out))


@lru_cache(maxsize=8192)
def rank_q(m: IntMatrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    a = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                ai[j] = (p * ai[j] - f * a[rank][j]) // prev
            ai[c] = 0
        prev = p
        rank += 1
    return rank


def hermite_rows(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Hermite normal form of the row span of ``vectors``; zero rows dropped."""
    a = [list(v) for v in vectors if any(v)]
    for v in a:
        if len(v) != dim:
            raise DimensionError(f"vector of length {len(v)} in dimension {dim}")
    r = 0
    for c in range(dim):
        if r == len(a):
            break
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            pr = a[r]
            clean = True
            for i in range(r + 1, len(a)):
                x = a[i][c]
                if x:
                    q = x // pr[c]
                    if q:
                        a[i] = [u - q * w for u, w in zip(a[i], pr)]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-u for u in a[r]]
            pr = a[r]
            for i in range(r):
                q = a[i][c] // pr[c]
                if q:
                    a[i] = [u - q * w for u, w in zip(a[i], pr)]
            r += 1
    return [tuple(v) for v in a[:r]]


def _pivot(row: Sequence[int]) -> int:
    return next(j for j, x in enumerate(row) if x)


@dataclass(frozen=True)
class Lattice:
    """A subgroup of ``Z^dim`` with its canonical HNF basis (rows)."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Sequence[int]] = ()) -> Lattice:
        return cls(dim, tuple(hermite_rows(vectors, dim)))

    @classmethod
    def zero(cls, dim: int) -> Lattice:
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> Lattice:
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMatrix:
        """Basis vectors as the columns of a ``dim x rank`` matrix."""
        return IntMatrix.from_columns(self.basis, self.dim)

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __le__(self, other: Lattice) -> bool:
        return all(member(other, b) for b in self.basis)

    def __add__(self, other: Lattice) -> Lattice:
        return lattice_sum(self, other)

    def __and__(self, other: Lattice) -> Lattice:
        return lattice_intersection(self, other)

    def image(self, m: IntMatrix) -> Lattice:
        """``m(L)`` as a lattice in ``Z^(m.rows)``."""
        if m.cols != self.dim:
            raise DimensionError(f"{m.shape} matrix applied to lattice in Z^{self.dim}")
        return Lattice.span(m.rows, (m.apply(b) for b in self.basis))


def _hnf_with_transform(m: IntMatrix):
    """Row-reduce ``[m^T | I]``.

    Returns ``(image_rows, combos, kernel)``: ``image_rows[i] = m @ combos[i]``
    form the HNF basis of the column span of ``m``, and ``kernel`` is the HNF
    basis of the integer kernel of ``m``.
    """
    n = m.cols
    aug = [list(col) + [int(i == j) for j in range(n)] for i, col in enumerate(m.columns())]
    rows = hermite_rows(aug, m.rows + n)
    image_rows, combos, kern = [], [], []
    for row in rows:
        if any(row[: m.rows]):
            image_rows.append(row[: m.rows])
            combos.append(row[m.rows :])
        else:
            kern.append(row[m.rows :])
    return image_rows, combos, kern


def kernel_lattice(m: IntMatrix) -> Lattice:
    """``{v in Z^cols : m v = 0}``."""
    if m.rows == 0:
        return Lattice.full(m.cols)
    _, _, kern = _hnf_with_transform(m)
    return Lattice.span(m.cols, kern)


def image_lattice(m: IntMatrix) -> Lattice:
    """Column span of ``m`` in ``Z^rows``."""
    return Lattice.span(m.rows, m.columns())


def lattice_eq(a: Lattice, b: Lattice) -> bool:
    return a.dim == b.dim and a.basis == b.basis


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.dim != b.dim:
        raise DimensionError(f"lattices in Z^{a.dim} and Z^{b.dim}")
    return Lattice.span(a.dim, a.basis + b.basis)


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    if a.dim != b.dim:
        raise DimensionError(f"lattices in Z^{a.dim} and Z^{b.dim}")
    if not a.rank or not b.rank:
        return Lattice.zero(a.dim)
    stacked = IntMatrix.hstack(a.matrix(), -b.matrix())
    am = a.matrix()
    return Lattice.span(a.dim, (am.apply(v[: a.rank]) for v in kernel_lattice(stacked).basis))


def preimage_lattice(m: IntMatrix, target: Lattice) -> Lattice:
    """``{v : m v in target}``."""
    if m.rows != target.dim:
        raise DimensionError(f"{m.shape} matrix against lattice in Z^{target.dim}")
    if not target.rank:
        return kernel_lattice(m)
    stacked = IntMatrix.hstack(m, -target.matrix())
    return Lattice.span(m.cols, (v[: m.cols] for v in kernel_lattice(stacked).basis))


def coordinates(lat: Lattice, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the HNF basis, or None if ``v`` is outside."""
    if len(v) != lat.dim:
        raise DimensionError(f"vector of length {len(v)} in Z^{lat.dim}")
    v = list(v)
    coords = []
    for b in lat.basis:
        c = _pivot(b)
        q, rem = divmod(v[c], b[c])
        if rem:
            return None
        coords.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, b)]
    return coords if not any(v) else None


def member(lat: Lattice, v: Sequence[int]) -> bool:
    return coordinates(lat, v) is not None


def solve(m: IntMatrix, t: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer ``v`` with ``m v = t``, or None when there is none."""
    if len(t) != m.rows:
        raise DimensionError(f"right-hand side of length {len(t)} for a {m.shape} matrix")
    if not any(t):
        return (0,) * m.cols
    image_rows, combos, _ = _hnf_with_transform(m)
    coords = coordinates(Lattice(m.rows, tuple(image_rows)), t)
    if coords is None:
        return None
    v = [0] * m.cols
    for c, u in zip(coords, combos):
        if c:
            v = [x + c * y for x, y in zip(v, u)]
    return tuple(v)


def annihilator(lat: Lattice) -> Lattice:
    """``{y : y . x = 0 for all x in lat}``."""
    if not lat.rank:
        return Lattice.full(lat.dim)
    return kernel_lattice(IntMatrix.from_rows(lat.basis, lat.dim))


def saturation(lat: Lattice) -> Lattice:
    """``(lat (x) Q) intersected with Z^dim``."""
    ann = annihilator(lat)
    if not ann.rank:
        return Lattice.full(lat.dim)
    return kernel_lattice(IntMatrix.from_rows(ann.basis, lat.dim))
