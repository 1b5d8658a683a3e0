"""Complexes with prescribed infinite Euler characteristic.

* :func:`one_over_m` -- ``Z`` in every degree divisible by ``2m``.
* :func:`rational_target` -- direct sums of those, shifted for negative targets.
* :func:`real_target` -- a greedy zero-differential complex whose running
  mean of ``hc`` oscillates around an arbitrary positive real.
* topological builtins encoding known homology ranks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .chain import (
    ChainComplex,
    ExplicitComplex,
    ZeroDifferentialComplex,
    shift_complex,
    zero_complex,
    zero_differential_periodic,
)
from .seq import RuleBased, as_fraction

__all__ = [
    "one_over_m",
    "rational_target",
    "GreedyState",
    "GreedyCertificate",
    "real_target",
    "greedy_certificate",
    "topology_builtin",
    "BUILTINS",
    "builtin",
]


def one_over_m(m: int) -> ChainComplex:
    """``C_n = Z`` if ``2m | n`` and ``0`` otherwise; all differentials zero."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return zero_differential_periodic((), (1,) + (0,) * (2 * m - 1))


def rational_target(q) -> ChainComplex:
    """A bounded complex-pattern with ``chi_H`` exactly ``q``.

    For ``q = a/b > 0`` this is the direct sum of ``2a`` copies of
    ``one_over_m(b)``; since all differentials vanish the sum is simply rank
    ``2a`` in degrees divisible by ``2b``.  Negative targets are a shift by
    one of the positive construction.
    """
    q = as_fraction(q)
    if q == 0:
        return zero_complex()
    if q < 0:
        return shift_complex(rational_target(-q), 1)
    a, b = q.numerator, q.denominator
    return zero_differential_periodic((), (2 * a,) + (0,) * (2 * b - 1))


# ---------------------------------------------------------------------------
# greedy construction for real targets


@dataclass
class GreedyState:
    """Single-owner record of the greedy rank schedule.

    ``ranks[d]`` is the rank of ``C_d``.  Odd degrees are always 0; an even
    degree ``2m`` gets ``2a`` while the phase is ``"low"`` and ``2b`` while
    it is ``"high"``.  The rank of ``C_{2m}`` is decided from the running mean
    of ``hc`` over degrees ``< 2m``: a low phase switches to high as soon as
    that mean is strictly below ``r``, a high phase switches to low as soon as
    it is strictly above.  ``switches`` records the ``m`` of every switch.
    """

    r: Fraction
    a: int
    b: int
    ranks: list[int] = field(default_factory=list)
    total: int = 0
    phase: str = "low"
    switches: list[int] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if not (0 <= self.a < self.r < self.b):
            raise ValueError(f"need 0 <= a < r < b, got a={self.a}, r={self.r}, b={self.b}")
        if not self.ranks:
            self.ranks.append(2 * self.b)
            self.total = 2 * self.b

    @property
    def horizon(self) -> int:
        """Number of degrees decided so far."""
        return len(self.ranks)

    def extend(self, degrees: int) -> None:
        """Decide ranks for all degrees ``< degrees``."""
        with self._lock:
            num, den = self.r.numerator, self.r.denominator
            ranks = self.ranks
            while len(ranks) < degrees:
                d = len(ranks)
                if d % 2:
                    ranks.append(0)
                    continue
                # mean over degrees 0..d-1 is total / d
                lhs = self.total * den
                if self.phase == "low" and lhs < d * num:
                    self.phase = "high"
                    self.switches.append(d // 2)
                elif self.phase == "high" and lhs > d * num:
                    self.phase = "low"
                    self.switches.append(d // 2)
                r = 2 * self.b if self.phase == "high" else 2 * self.a
                ranks.append(r)
                self.total += r

    def rank(self, d: int) -> int:
        if d >= len(self.ranks):
            self.extend(max(d + 1, 2 * len(self.ranks)))
        return self.ranks[d]

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "a": self.a,
            "b": self.b,
            "horizon": self.horizon,
            "phase": self.phase,
            "switches": list(self.switches),
        }

    @classmethod
    def from_dict(cls, d: dict) -> GreedyState:
        """Replay a saved schedule; the result can be extended past the saved horizon."""
        state = cls(as_fraction(d["r"]), int(d["a"]), int(d["b"]))
        state.extend(int(d.get("horizon", 0)))
        if "switches" in d and list(d["switches"]) != state.switches:
            raise ValueError("saved switch points do not match the replayed schedule")
        return state


@dataclass(frozen=True)
class GreedyCertificate:
    """Checked amplitude bound ``|mean_n - r| <= 2b/n`` from the first crossing on."""

    n_max: int
    first_crossing: int | None
    crossings: int
    crossings_by_1e4: int
    worst_scaled_deviation: Fraction
    bound: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "first_crossing": self.first_crossing,
            "crossings": self.crossings,
            "crossings_by_1e4": self.crossings_by_1e4,
            "worst_n_times_deviation": str(self.worst_scaled_deviation),
            "bound": self.bound,
            "holds": self.holds,
        }


def _target(r) -> Fraction:
    if isinstance(r, Decimal):
        return Fraction(r)
    return as_fraction(r)


def real_target(r, a: int, b: int, horizon: int = 0) -> tuple[ChainComplex, GreedyState]:
    """Greedy zero-differential complex with ``chi_H = r``.

    ``r`` may be a Fraction, int, Decimal or decimal string; decimals are
    used at their exact rational value.  For ``r < 0`` the complex for
    ``-r`` (with the same ``a < -r < b``) is shifted up by one.
    ``horizon`` degrees are decided eagerly; more are decided on demand.
    """
    r = _target(r)
    if r < 0:
        C, state = real_target(-r, a, b, horizon)
        return shift_complex(C, 1), state
    state = GreedyState(r, int(a), int(b))
    if horizon:
        state.extend(horizon)
    ranks = RuleBased(
        lambda n: state.rank(n - 1),
        name="greedy",
        params=(("r", str(r)), ("a", a), ("b", b)),
        bound=Fraction(2 * b),
    )
    return ZeroDifferentialComplex(ranks), state


def greedy_certificate(state: GreedyState, n_max: int = 100_000) -> GreedyCertificate:
    """Check the running mean of ``hc`` against ``r`` on ``n = 1..n_max``.

    A crossing is an ``n`` at which the mean lies strictly on the other side
    of ``r`` than the last mean that was not equal to ``r``.
    """
    state.extend(n_max)
    num, den = state.r.numerator, state.r.denominator
    limit = 2 * state.b * den
    total = 0
    side = 0
    first = None
    crossings = crossings_1e4 = 0
    worst = Fraction(0)
    holds = True
    for n in range(1, n_max + 1):
        total += state.ranks[n - 1]  # degree n-1; odd degrees are 0 so the sign never matters
        diff = total * den - n * num  # n * den * (mean - r)
        s = (diff > 0) - (diff < 0)
        if s and side and s != side:
            crossings += 1
            if n <= 10_000:
                crossings_1e4 += 1
            if first is None:
                first = n
        if s:
            side = s
        if first is not None:
            if abs(diff) > limit:
                holds = False
            dev = Fraction(abs(diff), den)
            if dev > worst:
                worst = dev
    return GreedyCertificate(
        n_max=n_max,
        first_crossing=first,
        crossings=crossings,
        crossings_by_1e4=crossings_1e4,
        worst_scaled_deviation=worst,
        bound=2 * state.b,
        holds=holds and first is not None,
    )


# ---------------------------------------------------------------------------
# builtins


def topology_builtin(name: str) -> ChainComplex:
    """Zero-differential models with the homology of some familiar spaces."""
    if name == "point":
        return ExplicitComplex((1,), ())
    if name == "wedge_all_spheres":
        # one sphere of every dimension k >= 1, plus the base point in degree 0
        return zero_differential_periodic((), (1,))
    if name == "wedge_odd_spheres":
        return zero_differential_periodic((1,), (1, 0))
    raise KeyError(f"unknown topological builtin {name!r}")


BUILTINS = {
    "even_z": lambda params: one_over_m(1),
    "one_over_m": lambda params: one_over_m(int(params.get("m", 1))),
    "rational": lambda params: rational_target(params.get("q", 0)),
    "point": lambda params: topology_builtin("point"),
    "wedge_all_spheres": lambda params: topology_builtin("wedge_all_spheres"),
    "wedge_odd_spheres": lambda params: topology_builtin("wedge_odd_spheres"),
    "zero": lambda params: zero_complex(),
}


def builtin(name: str, **params) -> ChainComplex:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin complex {name!r}; known: {', '.join(sorted(BUILTINS))}") from None
    return factory(params)
