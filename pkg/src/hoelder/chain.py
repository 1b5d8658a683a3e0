"""Non-negatively graded chain complexes of free finite-rank Z-modules.

Four shapes are supported:

``ExplicitComplex``
    ranks ``r_0..r_N`` and boundary matrices ``d_1..d_N``; zero above ``N``.
``PeriodicComplex``
    a preperiod block followed by a repeat block glued head to tail forever.
``ZeroDifferentialComplex``
    ranks given by a (possibly rule-based) sequence, all differentials zero.
``HomologyOnlyComplex``
    only the homology ranks are known.

Sequences follow one sign/index convention throughout: term ``n`` refers to
chain degree ``n - 1`` and carries the sign ``(-1)**(n - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from .linalg import IntMatrix, image_lattice, kernel_lattice, lattice_eq, rank_q
from .seq import (
    EventuallyPeriodic,
    ExplicitPrefix,
    RationalSeq,
    alternate,
    bound,
    seq_sum,
    shift,
)

__all__ = [
    "ChainComplex",
    "ExplicitComplex",
    "PeriodicComplex",
    "ZeroDifferentialComplex",
    "HomologyOnlyComplex",
    "RankSeqBundle",
    "ValidationReport",
    "validate",
    "homology_rank",
    "rank_bundle",
    "hranks_seq",
    "shift_complex",
    "direct_sum",
    "truncate_below",
    "materialize",
    "as_periodic",
    "reblock",
    "zero_complex",
    "zero_differential_periodic",
    "classical_euler",
    "homology_rank_bounded",
    "sum_ranks",
    "ChainMap",
    "mapping_cone",
    "cone_exactness",
]


class ChainComplex:
    """Common interface.  ``boundary(d)`` is ``C_d -> C_{d-1}`` for ``d >= 1``."""

    has_chain_modules = True

    def rank(self, d: int) -> int:
        raise NotImplementedError

    def boundary(self, d: int) -> IntMatrix:
        raise NotImplementedError

    def homology_rank(self, d: int) -> int:
        if d < 0:
            return 0
        r = self.rank(d)
        return r - (rank_q(self.boundary(d)) if d >= 1 else 0) - rank_q(self.boundary(d + 1))

    def boundary_rank(self, d: int) -> int:
        """``rank B_d = rank d_{d+1}``."""
        return rank_q(self.boundary(d + 1)) if d >= 0 else 0


def _mat(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    raise TypeError(f"expected IntMatrix, got {type(m).__name__}")


@dataclass(frozen=True, eq=False)
class ExplicitComplex(ChainComplex):
    ranks: tuple[int, ...]
    boundaries: tuple[IntMatrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "boundaries", tuple(_mat(b) for b in self.boundaries))

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, d: int) -> int:
        return self.ranks[d] if 0 <= d < len(self.ranks) else 0

    def boundary(self, d: int) -> IntMatrix:
        if 1 <= d <= len(self.boundaries):
            return self.boundaries[d - 1]
        return IntMatrix.zeros(self.rank(d - 1), self.rank(d))

    def __eq__(self, other):
        if not isinstance(other, ExplicitComplex):
            return NotImplemented
        n = max(len(self.ranks), len(other.ranks))
        return all(self.rank(d) == other.rank(d) for d in range(n)) and all(
            self.boundary(d) == other.boundary(d) for d in range(1, n + 1)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PeriodicComplex(ChainComplex):
    """Preperiod block (degrees ``0..p-1``) then the repeat block forever.

    ``pre_boundaries`` are ``d_1..d_{p-1}``.  ``rep_boundaries[o]`` is the
    boundary out of offset ``o`` of a repeat copy; ``rep_boundaries[0]`` is
    the seam into the last degree of the previous copy.  ``entry`` is the seam
    of the very first copy into the last preperiod degree (defaults to
    ``rep_boundaries[0]``).
    """

    pre_ranks: tuple[int, ...]
    pre_boundaries: tuple[IntMatrix, ...]
    rep_ranks: tuple[int, ...]
    rep_boundaries: tuple[IntMatrix, ...]
    entry: IntMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "pre_ranks", tuple(int(r) for r in self.pre_ranks))
        object.__setattr__(self, "rep_ranks", tuple(int(r) for r in self.rep_ranks))
        object.__setattr__(self, "pre_boundaries", tuple(_mat(b) for b in self.pre_boundaries))
        object.__setattr__(self, "rep_boundaries", tuple(_mat(b) for b in self.rep_boundaries))
        if not self.rep_ranks:
            raise ValueError("repeat block must have at least one degree")

    @property
    def p(self) -> int:
        return len(self.pre_ranks)

    @property
    def q(self) -> int:
        return len(self.rep_ranks)

    def rank(self, d: int) -> int:
        if d < 0:
            return 0
        if d < self.p:
            return self.pre_ranks[d]
        return self.rep_ranks[(d - self.p) % self.q]

    def boundary(self, d: int) -> IntMatrix:
        if d <= 0:
            return IntMatrix.zeros(0, self.rank(0) if d == 0 else 0)
        p = self.p
        if d < p:
            if d <= len(self.pre_boundaries):
                return self.pre_boundaries[d - 1]
            return IntMatrix.zeros(self.rank(d - 1), self.rank(d))
        o = (d - p) % self.q
        if d == p and self.entry is not None:
            return self.entry
        if o < len(self.rep_boundaries):
            return self.rep_boundaries[o]
        return IntMatrix.zeros(self.rank(d - 1), self.rank(d))


@dataclass(frozen=True, eq=False)
class ZeroDifferentialComplex(ChainComplex):
    """``C_{n-1}`` has rank ``ranks[n]``; all differentials vanish."""

    ranks_seq: RationalSeq

    def rank(self, d: int) -> int:
        if d < 0:
            return 0
        r = self.ranks_seq.term(d + 1)
        if r.denominator != 1 or r < 0:
            raise ValueError(f"rank of degree {d} is {r}, not a non-negative integer")
        return int(r)

    def boundary(self, d: int) -> IntMatrix:
        return IntMatrix.zeros(self.rank(d - 1), self.rank(d))

    def homology_rank(self, d: int) -> int:
        return self.rank(d)


@dataclass(frozen=True, eq=False)
class HomologyOnlyComplex(ChainComplex):
    """Only ``rank H_{n-1}`` (term ``n`` of ``hranks``) is known."""

    hranks: RationalSeq
    has_chain_modules = False

    def rank(self, d: int) -> int:
        raise TypeError("homology-only complex has no chain modules")

    def boundary(self, d: int) -> IntMatrix:
        raise TypeError("homology-only complex has no boundary maps")

    def homology_rank(self, d: int) -> int:
        if d < 0:
            return 0
        return int(self.hranks.term(d + 1))


def zero_complex() -> ExplicitComplex:
    return ExplicitComplex((), ())


def zero_differential_periodic(pre_ranks, rep_ranks) -> PeriodicComplex:
    """Periodic complex with the given ranks and all boundaries zero."""
    pre_ranks, rep_ranks = tuple(pre_ranks), tuple(rep_ranks)
    p, q = len(pre_ranks), len(rep_ranks)
    pre_bds = tuple(IntMatrix.zeros(pre_ranks[d - 1], pre_ranks[d]) for d in range(1, p))
    rep_bds = tuple(IntMatrix.zeros(rep_ranks[o - 1], rep_ranks[o]) for o in range(q))  # o=0 wraps to the last
    entry = IntMatrix.zeros(pre_ranks[-1], rep_ranks[0]) if p else None
    return PeriodicComplex(pre_ranks, pre_bds, rep_ranks, rep_bds, entry)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool = True
    problems: list[str] = field(default_factory=list)
    first_failure: tuple | None = None

    def fail(self, where: tuple, message: str) -> None:
        if self.ok:
            self.first_failure = where
        self.ok = False
        self.problems.append(message)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "problems": list(self.problems), "first_failure": self.first_failure}


def _check_degrees(C: ChainComplex, top: int, report: ValidationReport) -> None:
    for d in range(top + 1):
        if C.rank(d) < 0:
            report.fail(("rank", d), f"negative rank in degree {d}")
    for d in range(1, top + 2):
        b = C.boundary(d)
        if b.shape != (C.rank(d - 1), C.rank(d)):
            report.fail(("shape", d), f"d_{d} has shape {b.shape}, expected {(C.rank(d - 1), C.rank(d))}")
    if not report.ok:
        return
    for d in range(1, top + 1):
        if not (C.boundary(d) @ C.boundary(d + 1)).is_zero():
            report.fail(("dd", d, d + 1), f"d_{d} o d_{d + 1} is not zero")


def validate(C: ChainComplex) -> ValidationReport:
    """Check shapes and ``d o d = 0``.

    For periodic complexes the window is one preperiod plus two repeat
    copies, which contains every seam pattern.
    """
    report = ValidationReport()
    if isinstance(C, HomologyOnlyComplex):
        for n in range(1, 50):
            t = C.hranks.term(n)
            if t < 0 or t.denominator != 1:
                report.fail(("hrank", n - 1), f"homology rank {t} in degree {n - 1}")
                break
        return report
    if isinstance(C, ZeroDifferentialComplex):
        for d in range(50):
            try:
                C.rank(d)
            except ValueError as exc:
                report.fail(("rank", d), str(exc))
                break
        return report
    if isinstance(C, ExplicitComplex):
        if len(C.boundaries) > max(len(C.ranks) - 1, 0):
            report.fail(("count",), f"{len(C.boundaries)} boundaries for {len(C.ranks)} degrees")
            return report
        _check_degrees(C, C.top, report)
        return report
    if isinstance(C, PeriodicComplex):
        if len(C.pre_boundaries) != max(C.p - 1, 0):
            report.fail(("count", "pre"), f"preperiod needs {max(C.p - 1, 0)} boundaries, got {len(C.pre_boundaries)}")
        if len(C.rep_boundaries) != C.q:
            report.fail(("count", "repeat"), f"repeat block needs {C.q} boundaries, got {len(C.rep_boundaries)}")
        if report.ok:
            _check_degrees(C, C.p + 2 * C.q, report)
        return report
    raise TypeError(f"unknown complex type {type(C).__name__}")


def homology_rank(C: ChainComplex, d: int) -> int:
    return C.homology_rank(d)


# ---------------------------------------------------------------------------
# rank sequences


@dataclass(frozen=True)
class RankSeqBundle:
    """Signed sequences ``hc``, ``bc``, ``rc``; ``bc``/``rc`` absent for homology-only."""

    hc: RationalSeq
    bc: RationalSeq | None
    rc: RationalSeq | None


def _sgn(n: int) -> int:
    return 1 if n % 2 else -1


def _tidy(pre: tuple, per: tuple) -> EventuallyPeriodic:
    # fold matching preperiod terms into the period, so (x | y, x) becomes (| x, y)
    pre, per = list(pre), list(per)
    while pre and pre[-1] == per[-1]:
        per.insert(0, per.pop())
        pre.pop()
    return EventuallyPeriodic(tuple(pre), tuple(per))


def _signed_periodic(values_of_degree, p: int, q: int) -> EventuallyPeriodic:
    """Signed sequence for a degree function periodic beyond degree ``p``."""
    qq = q if q % 2 == 0 else 2 * q
    pre = tuple(_sgn(n) * values_of_degree(n - 1) for n in range(1, p + 1))
    per = tuple(_sgn(n) * values_of_degree(n - 1) for n in range(p + 1, p + qq + 1))
    return _tidy(pre, per)


def rank_bundle(C: ChainComplex) -> RankSeqBundle:
    if isinstance(C, HomologyOnlyComplex):
        return RankSeqBundle(alternate(C.hranks), None, None)
    if isinstance(C, ZeroDifferentialComplex):
        signed = alternate(C.ranks_seq)
        return RankSeqBundle(signed, EventuallyPeriodic((), (0,)), signed)
    if isinstance(C, ExplicitComplex):
        top = C.top
        hc = ExplicitPrefix(tuple(_sgn(n) * C.homology_rank(n - 1) for n in range(1, top + 2)))
        bc = ExplicitPrefix(tuple(_sgn(n) * C.boundary_rank(n - 1) for n in range(1, top + 2)))
        rc = ExplicitPrefix(tuple(_sgn(n) * C.rank(n - 1) for n in range(1, top + 2)))
        return RankSeqBundle(hc, bc, rc)
    if isinstance(C, PeriodicComplex):
        # degree d >= p + 1 only sees steady-state boundaries
        p1 = C.p + 1
        return RankSeqBundle(
            _signed_periodic(C.homology_rank, p1, C.q),
            _signed_periodic(C.boundary_rank, p1, C.q),
            _signed_periodic(C.rank, p1, C.q),
        )
    raise TypeError(f"unknown complex type {type(C).__name__}")


def hranks_seq(C: ChainComplex) -> RationalSeq:
    """Unsigned homology ranks, term ``n`` = ``rank H_{n-1}``."""
    if isinstance(C, HomologyOnlyComplex):
        return C.hranks
    if isinstance(C, ZeroDifferentialComplex):
        return C.ranks_seq
    if isinstance(C, ExplicitComplex):
        return ExplicitPrefix(tuple(C.homology_rank(d) for d in range(C.top + 1)))
    if isinstance(C, PeriodicComplex):
        p1 = C.p + 1
        return _tidy(
            tuple(C.homology_rank(d) for d in range(p1)),
            tuple(C.homology_rank(d) for d in range(p1, p1 + C.q)),
        )
    raise TypeError(f"unknown complex type {type(C).__name__}")


def _ranks_seq(C: ChainComplex) -> RationalSeq:
    if isinstance(C, ZeroDifferentialComplex):
        return C.ranks_seq
    if isinstance(C, ExplicitComplex):
        return ExplicitPrefix(C.ranks)
    if isinstance(C, PeriodicComplex):
        return EventuallyPeriodic(C.pre_ranks, C.rep_ranks)
    raise TypeError("complex has no chain modules")


def classical_euler(C: ChainComplex, below: int) -> int:
    """``sum_{k < below} (-1)^k rank C_k``."""
    return sum((-1) ** k * C.rank(k) for k in range(below))


# ---------------------------------------------------------------------------
# constructions


def as_periodic(C: ChainComplex) -> PeriodicComplex:
    if isinstance(C, PeriodicComplex):
        return C
    if isinstance(C, ExplicitComplex):
        n = len(C.ranks)
        return PeriodicComplex(
            C.ranks,
            tuple(C.boundary(d) for d in range(1, n)),
            (0,),
            (IntMatrix.zeros(0, 0),),
            IntMatrix.zeros(C.rank(n - 1), 0) if n else None,
        )
    raise TypeError(f"{type(C).__name__} has no periodic presentation")


def reblock(C: PeriodicComplex, P: int, Q: int) -> PeriodicComplex:
    """Same complex presented with preperiod length ``P`` and period ``Q``."""
    if P < C.p or Q % C.q:
        raise ValueError(f"cannot reblock (p={C.p}, q={C.q}) as (P={P}, Q={Q})")
    return PeriodicComplex(
        tuple(C.rank(d) for d in range(P)),
        tuple(C.boundary(d) for d in range(1, P)),
        tuple(C.rank(d) for d in range(P, P + Q)),
        tuple(C.boundary(P + Q + o) for o in range(Q)),
        C.boundary(P) if P >= 1 else None,
    )


def shift_complex(C: ChainComplex, m: int) -> ChainComplex:
    """``C[m]_k = C_{k-m}`` for ``m >= 0``."""
    if m < 0:
        raise ValueError("only non-negative shifts keep the complex in degrees >= 0")
    if m == 0:
        return C
    if isinstance(C, HomologyOnlyComplex):
        return HomologyOnlyComplex(shift(C.hranks, m))
    if isinstance(C, ZeroDifferentialComplex):
        return ZeroDifferentialComplex(shift(C.ranks_seq, m))
    if isinstance(C, ExplicitComplex):
        if not C.ranks:
            return C
        ranks = (0,) * m + C.ranks
        bds = tuple(IntMatrix.zeros(0, 0) for _ in range(m - 1)) + (IntMatrix.zeros(0, C.rank(0)),) + tuple(
            C.boundary(d) for d in range(1, len(C.ranks))
        )
        return ExplicitComplex(ranks, bds)
    if isinstance(C, PeriodicComplex):
        pre_ranks = (0,) * m + C.pre_ranks
        old_pre_bds = tuple(C.boundary(d) for d in range(1, C.p))
        if C.p:
            pre_bds = tuple(IntMatrix.zeros(0, 0) for _ in range(m - 1)) + (IntMatrix.zeros(0, C.rank(0)),) + old_pre_bds
            entry = C.boundary(C.p)
        else:
            pre_bds = tuple(IntMatrix.zeros(0, 0) for _ in range(m - 1))
            entry = IntMatrix.zeros(0, C.rep_ranks[0])
        return PeriodicComplex(pre_ranks, pre_bds, C.rep_ranks, C.rep_boundaries, entry)
    raise TypeError(f"unknown complex type {type(C).__name__}")


def direct_sum(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    if isinstance(C, ExplicitComplex) and isinstance(D, ExplicitComplex):
        n = max(len(C.ranks), len(D.ranks))
        return ExplicitComplex(
            tuple(C.rank(d) + D.rank(d) for d in range(n)),
            tuple(IntMatrix.block_diag(C.boundary(d), D.boundary(d)) for d in range(1, n)),
        )
    if isinstance(C, (ExplicitComplex, PeriodicComplex)) and isinstance(D, (ExplicitComplex, PeriodicComplex)):
        c, d = as_periodic(C), as_periodic(D)
        P, Q = max(c.p, d.p), math.lcm(c.q, d.q)
        c, d = reblock(c, P, Q), reblock(d, P, Q)
        return PeriodicComplex(
            tuple(x + y for x, y in zip(c.pre_ranks, d.pre_ranks)),
            tuple(IntMatrix.block_diag(x, y) for x, y in zip(c.pre_boundaries, d.pre_boundaries)),
            tuple(x + y for x, y in zip(c.rep_ranks, d.rep_ranks)),
            tuple(IntMatrix.block_diag(x, y) for x, y in zip(c.rep_boundaries, d.rep_boundaries)),
            IntMatrix.block_diag(c.entry, d.entry) if P >= 1 else None,
        )
    if isinstance(C, ZeroDifferentialComplex) and isinstance(D, ZeroDifferentialComplex):
        return ZeroDifferentialComplex(seq_sum(C.ranks_seq, D.ranks_seq))
    return HomologyOnlyComplex(seq_sum(hranks_seq(C), hranks_seq(D)))


def materialize(C: ChainComplex, top: int) -> ExplicitComplex:
    """Degrees ``0..top`` of ``C`` as an explicit complex (cut off above ``top``)."""
    if not C.has_chain_modules:
        raise TypeError("homology-only complex cannot be materialised")
    return ExplicitComplex(
        tuple(C.rank(d) for d in range(top + 1)),
        tuple(C.boundary(d) for d in range(1, top + 1)),
    )


def truncate_below(C: ChainComplex, n: int) -> ExplicitComplex:
    """``C_{<n}``: keep degrees ``0..n-1``."""
    return materialize(C, n - 1)


def homology_rank_bounded(C: ChainComplex) -> bool:
    """Whether the homology ranks of ``C`` are certified bounded."""
    return bound(hranks_seq(C)) is not None


def sum_ranks(*cs: ChainComplex) -> RationalSeq:
    return reduce(seq_sum, (_ranks_seq(c) for c in cs))


# ---------------------------------------------------------------------------
# chain maps and mapping cones


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise matrices ``f_n : source_n -> target_n`` (zero beyond the list)."""

    source: ChainComplex
    target: ChainComplex
    components: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(_mat(m) for m in self.components))

    def at(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.components):
            return self.components[n]
        return IntMatrix.zeros(self.target.rank(n), self.source.rank(n))

    def check(self, top: int) -> ValidationReport:
        """Shapes and ``d f = f d`` in degrees ``0..top``."""
        report = ValidationReport()
        for n in range(top + 1):
            m = self.at(n)
            want = (self.target.rank(n), self.source.rank(n))
            if m.shape != want:
                report.fail(("shape", n), f"f_{n} has shape {m.shape}, expected {want}")
        if not report.ok:
            return report
        for n in range(1, top + 1):
            lhs = self.target.boundary(n) @ self.at(n)
            rhs = self.at(n - 1) @ self.source.boundary(n)
            if lhs != rhs:
                report.fail(("chain_map", n), f"d f != f d in degree {n}")
        return report


def mapping_cone(f: ChainMap, top: int) -> ExplicitComplex:
    """``cone_n = C_{n-1} + D_n`` with ``d(x, y) = (-d x, f x + d y)``, degrees ``0..top+1``."""
    C, D = f.source, f.target
    ranks = tuple(C.rank(n - 1) + D.rank(n) for n in range(top + 2))
    bds = []
    for n in range(1, top + 2):
        upper = IntMatrix.hstack(-C.boundary(n - 1) if n >= 2 else IntMatrix.zeros(0, C.rank(0)),
                                 IntMatrix.zeros(C.rank(n - 2), D.rank(n)))
        lower = IntMatrix.hstack(f.at(n - 1), D.boundary(n))
        bds.append(IntMatrix.vstack(upper, lower))
    return ExplicitComplex(ranks, tuple(bds))


def cone_exactness(f: ChainMap, top: int) -> int | None:
    """First degree ``n <= top`` where the cone of ``f`` fails to be exact over Z, or None.

    Exactness of the cone in degrees ``<= top`` is equivalent to ``f``
    inducing isomorphisms on ``H_j`` for ``j < top`` and a surjection on
    ``H_top``.
    """
    cone = mapping_cone(f, top)
    for n in range(top + 1):
        if not lattice_eq(kernel_lattice(cone.boundary(n)), image_lattice(cone.boundary(n + 1))):
            return n
    return None
