"""Short exact sequences ``0 -> A -f-> B -g-> C -> 0`` of chain complexes.

The connecting maps ``delta_n : H_n C -> H_{n-1} A`` are never built; their
image ranks come from exactness of the long homology sequence,
``rank im delta_n = rank H_{n-1} A - rank H_{n-1}(f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chain import (
    ChainComplex,
    ExplicitComplex,
    PeriodicComplex,
    ValidationReport,
    direct_sum,
    materialize,
    rank_bundle,
    reblock,
    validate,
    zero_differential_periodic,
)
from .euler import PreconditionError, chi_h
from .linalg import (
    IntMatrix,
    Lattice,
    annihilator,
    image_lattice,
    kernel_lattice,
    lattice_eq,
    rank_q,
    saturation,
    solve,
)
from .seq import (
    EventuallyPeriodic,
    ExplicitPrefix,
    HoResult,
    RationalSeq,
    Status,
    SummabilityConfig,
    Verdict,
    absolute,
    cesaro_prefix,
    is_h_o_n,
    shift,
)

__all__ = [
    "SesSpec",
    "PeriodicSes",
    "split_ses",
    "cokernel_ses",
    "TorsionCokernel",
    "times_two",
    "periodic_split",
    "validate_ses",
    "induced_rank",
    "delta_seq",
    "Admissibility",
    "admissibility_of_ses",
    "additivity_identity_check",
    "AdditivityRecord",
    "additivity_chi_check",
    "TwoOfThree",
    "two_out_of_three",
    "two_out_of_three_residuals",
]


@dataclass(frozen=True, eq=False)
class SesSpec:
    """Explicit complexes ``A, B, C`` with degreewise maps ``f_n``, ``g_n``, ``n = 0..N``."""

    A: ExplicitComplex
    B: ExplicitComplex
    C: ExplicitComplex
    f: tuple[IntMatrix, ...]
    g: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))

    @property
    def top(self) -> int:
        return max(self.A.top, self.B.top, self.C.top, len(self.f) - 1, len(self.g) - 1, 0)

    def f_at(self, n: int) -> IntMatrix:
        if n < len(self.f):
            return self.f[n]
        return IntMatrix.zeros(self.B.rank(n), self.A.rank(n))

    def g_at(self, n: int) -> IntMatrix:
        if n < len(self.g):
            return self.g[n]
        return IntMatrix.zeros(self.C.rank(n), self.B.rank(n))


def split_ses(A: ExplicitComplex, C: ExplicitComplex) -> SesSpec:
    """``A -> A + C -> C`` with the canonical inclusion and projection."""
    B = direct_sum(A, C)
    N = max(A.top, C.top, 0)
    f, g = [], []
    for n in range(N + 1):
        a, c = A.rank(n), C.rank(n)
        f.append(IntMatrix.vstack(IntMatrix.identity(a), IntMatrix.zeros(c, a)))
        g.append(IntMatrix.hstack(IntMatrix.zeros(c, a), IntMatrix.identity(c)))
    return SesSpec(A, B, C, tuple(f), tuple(g))


class TorsionCokernel(ValueError):
    """The quotient of an injection is not free, so it has no place in the model."""


def cokernel_ses(A: ExplicitComplex, B: ExplicitComplex, f) -> SesSpec:
    """Complete an injective chain map ``f : A -> B`` to ``0 -> A -> B -> B/A -> 0``.

    ``B/A`` gets coordinates from an annihilator basis of ``im f_n``; this is
    only possible when every ``im f_n`` is saturated.
    """
    N = max(A.top, B.top, len(f) - 1, 0)
    f = tuple(f[n] if n < len(f) else IntMatrix.zeros(B.rank(n), A.rank(n)) for n in range(N + 1))
    images = []
    for n in range(N + 1):
        im = image_lattice(f[n])
        if kernel_lattice(f[n]).rank:
            raise ValueError(f"f_{n} is not injective")
        if not lattice_eq(im, saturation(im)):
            raise TorsionCokernel(f"the cokernel in degree {n} has torsion")
        images.append(im)
    g = [IntMatrix.from_rows(annihilator(L).basis, L.dim) for L in images]
    sections = []
    for n in range(N + 1):
        gn = g[n]
        sections.append([solve(gn, tuple(int(i == j) for j in range(gn.rows))) for i in range(gn.rows)])
    bds = []
    for n in range(1, N + 1):
        cols = [g[n - 1].apply(B.boundary(n).apply(sec)) for sec in sections[n]]
        bds.append(IntMatrix.from_columns(cols, g[n - 1].rows))
    C = ExplicitComplex(tuple(x.rows for x in g), tuple(bds))
    return SesSpec(A, B, C, f, tuple(g))


# ---------------------------------------------------------------------------
# validation


def validate_ses(S: SesSpec) -> ValidationReport:
    report = ValidationReport()
    for name, X in (("A", S.A), ("B", S.B), ("C", S.C)):
        r = validate(X)
        if not r.ok:
            report.fail((name,) + tuple(r.first_failure or ()), f"{name}: {r.problems[0]}")
            return report
    N = S.top
    for n in range(N + 1):
        a, b, c = S.A.rank(n), S.B.rank(n), S.C.rank(n)
        if S.f_at(n).shape != (b, a):
            report.fail(("shape_f", n), f"f_{n} has shape {S.f_at(n).shape}, expected {(b, a)}")
        if S.g_at(n).shape != (c, b):
            report.fail(("shape_g", n), f"g_{n} has shape {S.g_at(n).shape}, expected {(c, b)}")
    if not report.ok:
        return report
    for n in range(1, N + 1):
        if S.B.boundary(n) @ S.f_at(n) != S.f_at(n - 1) @ S.A.boundary(n):
            report.fail(("chain_map_f", n), f"f is not a chain map in degree {n}")
        if S.C.boundary(n) @ S.g_at(n) != S.g_at(n - 1) @ S.B.boundary(n):
            report.fail(("chain_map_g", n), f"g is not a chain map in degree {n}")
    for n in range(N + 1):
        f, g = S.f_at(n), S.g_at(n)
        if kernel_lattice(f).rank:
            report.fail(("injective", n), f"f_{n} has a nonzero kernel")
        if not lattice_eq(image_lattice(f), kernel_lattice(g)):
            report.fail(("exact_middle", n), f"im f_{n} != ker g_{n}")
        if not lattice_eq(image_lattice(g), Lattice.full(g.rows)):
            report.fail(("surjective", n), f"g_{n} is not surjective")
    return report


# ---------------------------------------------------------------------------
# the delta sequence


def induced_rank(A: ChainComplex, B: ChainComplex, f: IntMatrix, j: int) -> int:
    """Rank over Q of ``H_j(f) : H_j A -> H_j B``.

    It is ``rank [f Z_j A | B_j B] - rank B_j B``.
    """
    z = kernel_lattice(A.boundary(j)) if j >= 1 else Lattice.full(A.rank(0))
    fz = f @ z.matrix()
    bb = B.boundary(j + 1)
    return rank_q(IntMatrix.hstack(fz, bb)) - rank_q(bb)


def _delta_terms(S: SesSpec, count: int) -> list[int]:
    # (delta S)_n = (-1)^(n-1) rank im delta_n, delta_n : H_n C -> H_{n-1} A
    out = []
    for n in range(1, count + 1):
        j = n - 1
        r = S.A.homology_rank(j) - induced_rank(S.A, S.B, S.f_at(j), j)
        out.append(r if n % 2 else -r)
    return out


def delta_seq(S: SesSpec | PeriodicSes) -> RationalSeq:
    if isinstance(S, PeriodicSes):
        return S.delta_seq()
    return ExplicitPrefix(tuple(_delta_terms(S, S.top + 1)))


@dataclass(frozen=True)
class Admissibility:
    weak: HoResult
    strong: HoResult

    def to_dict(self) -> dict:
        return {"weak": self.weak.to_dict(), "strong": self.strong.to_dict()}


def admissibility_of_ses(S, cfg: SummabilityConfig | None = None) -> Admissibility:
    """Weak: ``delta/n`` is H-null.  Strong: ``|delta| = H-o(n)``, which implies weak."""
    cfg = cfg or SummabilityConfig()
    d = delta_seq(S)
    strong = is_h_o_n(d, absolute=True, cfg=cfg)
    if strong.verdict is Verdict.TRUE:
        weak = HoResult(Verdict.TRUE, strong.branch, "implied by the absolute version: " + strong.reason, strong.limit)
    else:
        weak = is_h_o_n(d, absolute=False, cfg=cfg)
    return Admissibility(weak, strong)


def _hcs(S):
    return rank_bundle(S.A).hc, rank_bundle(S.B).hc, rank_bundle(S.C).hc


def additivity_identity_check(S, n_max: int) -> list[Fraction]:
    """Residuals of ``(M hA)_n - (M hB)_n + (M hC)_n - delta_n / n`` for ``n = 1..n_max``."""
    ha, hb, hc = _hcs(S)
    ma, mb, mc = (cesaro_prefix(x, n_max) for x in (ha, hb, hc))
    d = delta_seq(S).prefix(n_max)
    return [ma[i] - mb[i] + mc[i] - Fraction(d[i], i + 1) for i in range(n_max)]


@dataclass(frozen=True)
class AdditivityRecord:
    ok: bool
    exact: bool
    chi: dict
    alternating_sum: str
    weak: HoResult

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "exact": self.exact,
            "chi": dict(self.chi),
            "alternating_sum": self.alternating_sum,
            "weak_admissibility": self.weak.to_dict(),
        }


def additivity_chi_check(S, cfg: SummabilityConfig | None = None) -> AdditivityRecord:
    """``chi_H(A) - chi_H(B) + chi_H(C) = 0`` on a weakly admissible sequence."""
    cfg = cfg or SummabilityConfig()
    weak = admissibility_of_ses(S, cfg).weak
    if weak.verdict is not Verdict.TRUE:
        raise PreconditionError(f"weak admissibility not established: {weak.reason}", weak)
    chis = {name: chi_h(X, cfg).chi for name, X in (("A", S.A), ("B", S.B), ("C", S.C))}
    if any(not c.found for c in chis.values()):
        raise PreconditionError("some chi_H is inconclusive: " + ", ".join(k for k, c in chis.items() if not c.found))
    exact = all(c.status is Status.EXACT for c in chis.values())
    total = chis["A"].value - chis["B"].value + chis["C"].value
    if exact:
        ok = total == 0
    else:
        ok = abs(total) <= 3 * cfg.tol
    return AdditivityRecord(
        ok=ok,
        exact=exact,
        chi={k: c.to_dict() for k, c in chis.items()},
        alternating_sum=str(total) if exact else format(total, "f"),
        weak=weak,
    )


# ---------------------------------------------------------------------------
# two out of three


def two_out_of_three_residuals(S, n_max: int) -> list[int]:
    """``|hA|_n - |hB|_n + |hC|_n - |delta|_n - |delta|_{n-1}`` for ``n = 1..n_max``.

    Splitting the long exact sequence at degree ``n - 1`` gives
    ``0 -> im delta_n -> H_{n-1}A -> H_{n-1}B -> H_{n-1}C -> im delta_{n-1} -> 0``.
    """
    ha, hb, hc = (absolute(x).prefix(n_max) for x in _hcs(S))
    d = absolute(delta_seq(S))
    dn, dprev = d.prefix(n_max), shift(d, 1).prefix(n_max)
    return [int(ha[i] - hb[i] + hc[i] - dn[i] - dprev[i]) for i in range(n_max)]


@dataclass(frozen=True)
class TwoOfThree:
    verdict: Verdict
    member: str | None
    established: dict
    residuals_ok: bool

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "member": self.member,
            "established": {k: v.value for k, v in self.established.items()},
            "residuals_ok": self.residuals_ok,
        }


def two_out_of_three(S, established: dict | None = None, cfg: SummabilityConfig | None = None) -> TwoOfThree:
    """Admissibility of the remaining member once two of ``A, B, C`` are admissible.

    ``established`` maps member names to verdicts; when omitted, each member's
    admissibility is computed with :func:`hoelder.euler.chi_h`.
    """
    cfg = cfg or SummabilityConfig()
    if established is None:
        established = {name: chi_h(X, cfg).admissible for name, X in (("A", S.A), ("B", S.B), ("C", S.C))}
    established = {k: Verdict(v) if not isinstance(v, Verdict) else v for k, v in established.items()}
    n = S.top + 1 if isinstance(S, SesSpec) else S.P + 3 * S.Q
    residuals_ok = not any(two_out_of_three_residuals(S, n))
    known = [k for k in ("A", "B", "C") if established.get(k) is Verdict.TRUE]
    if len(known) < 2:
        return TwoOfThree(Verdict.INCONCLUSIVE, None, established, residuals_ok)
    rest = [k for k in ("A", "B", "C") if k not in known]
    member = rest[0] if rest else None
    verdict = Verdict.TRUE if residuals_ok else Verdict.INCONCLUSIVE
    return TwoOfThree(verdict, member, established, residuals_ok)


# ---------------------------------------------------------------------------
# periodic families


@dataclass(frozen=True, eq=False)
class PeriodicSes:
    """Periodic complexes sharing a block layout ``(P, Q)`` with periodic maps.

    ``f_pre[n]`` is ``f_n`` for ``n < P``; ``f_rep[o]`` is ``f_n`` for
    ``n >= P`` with ``(n - P) % Q == o``.  Same for ``g``.
    """

    A: PeriodicComplex
    B: PeriodicComplex
    C: PeriodicComplex
    f_pre: tuple[IntMatrix, ...]
    f_rep: tuple[IntMatrix, ...]
    g_pre: tuple[IntMatrix, ...]
    g_rep: tuple[IntMatrix, ...]

    @property
    def P(self) -> int:
        return self.A.p

    @property
    def Q(self) -> int:
        return self.A.q

    def _at(self, pre, rep, n):
        return pre[n] if n < self.P else rep[(n - self.P) % self.Q]

    def materialize(self, top: int) -> SesSpec:
        return SesSpec(
            materialize(self.A, top),
            materialize(self.B, top),
            materialize(self.C, top),
            tuple(self._at(self.f_pre, self.f_rep, n) for n in range(top + 1)),
            tuple(self._at(self.g_pre, self.g_rep, n) for n in range(top + 1)),
        )

    def validate(self) -> ValidationReport:
        return validate_ses(self.materialize(self.P + 2 * self.Q + 2))

    def delta_seq(self) -> EventuallyPeriodic:
        # delta_n only sees degrees n-1 and n, so terms beyond P+1 repeat with period Q (2Q if Q is odd)
        qq = self.Q if self.Q % 2 == 0 else 2 * self.Q
        terms = _delta_terms(self.materialize(self.P + qq + 2), self.P + 1 + qq)
        return EventuallyPeriodic(tuple(terms[: self.P + 1]), tuple(terms[self.P + 1 :]))

    @property
    def top(self) -> int:
        return self.P + 3 * self.Q


def times_two() -> PeriodicSes:
    """Free model of the degreewise ``x2`` family.

    ``A`` is ``Z`` in even degrees, ``B`` is ``Z -x2-> Z`` in degrees
    ``(2n+1, 2n)`` for every ``n``, ``C = B / A`` is ``Z`` in odd degrees.
    Homology ranks: ``A`` even, ``B`` none (only ``Z/2``), ``C`` odd, so
    ``chi_H`` gives ``1/2 - 0 - 1/2``.
    """
    A = zero_differential_periodic((), (1, 0))
    B = PeriodicComplex((), (), (1, 1), (IntMatrix.zeros(1, 1), IntMatrix.from_rows([[2]])))
    C = zero_differential_periodic((), (0, 1))
    one = IntMatrix.identity(1)
    return PeriodicSes(
        A,
        B,
        C,
        (),
        (one, IntMatrix.zeros(1, 0)),
        (),
        (IntMatrix.zeros(0, 1), one),
    )


def periodic_split(A: PeriodicComplex, C: PeriodicComplex) -> PeriodicSes:
    """Split periodic sequence ``A -> A + C -> C`` on a common block layout."""
    P, Q = max(A.p, C.p), math.lcm(A.q, C.q)
    A, C = reblock(A, P, Q), reblock(C, P, Q)
    B = direct_sum(A, C)

    def inc(n):
        a, c = A.rank(n), C.rank(n)
        return IntMatrix.vstack(IntMatrix.identity(a), IntMatrix.zeros(c, a))

    def proj(n):
        a, c = A.rank(n), C.rank(n)
        return IntMatrix.hstack(IntMatrix.zeros(c, a), IntMatrix.identity(c))

    return PeriodicSes(
        A,
        B,
        C,
        tuple(inc(n) for n in range(P)),
        tuple(inc(P + o) for o in range(Q)),
        tuple(proj(n) for n in range(P)),
        tuple(proj(P + o) for o in range(Q)),
    )

