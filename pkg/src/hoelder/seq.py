"""Exact lazy sequences of rationals and Hölder (iterated Cesàro) summation.

Sequences are indexed by the positive integers ``1, 2, 3, ...``.  Every term
is a :class:`fractions.Fraction`.  Sequences are immutable; transforms such as
:func:`shift` or :func:`div_by_index` build new lazy sequences on top of old
ones.

Two kinds of answers come out of :func:`h_limit`:

* ``Exact`` when the sequence has a recognised structure (eventually
  periodic, bounded-over-``n``, and combinations thereof), and
* ``Empirical`` when the iterated Cesàro means visibly settle on a long
  prefix.  This is a heuristic and is labelled as such.

Anything else is ``Inconclusive``.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "RationalSeq",
    "ExplicitPrefix",
    "EventuallyPeriodic",
    "RuleBased",
    "Transform",
    "TransformOp",
    "PeriodicForm",
    "SequenceOverrun",
    "SummabilityConfig",
    "Status",
    "HLimitResult",
    "Verdict",
    "HoResult",
    "as_fraction",
    "cesaro_prefix",
    "cesaro_power_prefix",
    "shift",
    "seq_sum",
    "scale",
    "absolute",
    "div_by_index",
    "alternate",
    "cesaro",
    "constant",
    "zero",
    "periodic_form",
    "bound",
    "is_null",
    "h_limit",
    "is_h_o_n",
    "RULES",
    "rule",
]


class SequenceOverrun(IndexError):
    """Raised when a strict explicit prefix is evaluated past its end."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Decimal)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    raise TypeError(f"cannot interpret {x!r} as a rational")


class RationalSeq:
    """Base class of all sequences.  Subclasses implement :meth:`term`."""

    def term(self, n: int) -> Fraction:
        raise NotImplementedError

    def prefix(self, n: int) -> list[Fraction]:
        """Terms ``1..n`` as a list."""
        return [self.term(i) for i in range(1, n + 1)]

    def __getitem__(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError("sequences are indexed from 1")
        return self.term(n)

    # operator sugar; every one of these is lazy
    def __add__(self, other: RationalSeq) -> RationalSeq:
        return seq_sum(self, other)

    def __sub__(self, other: RationalSeq) -> RationalSeq:
        return seq_sum(self, scale(-1, other))

    def __neg__(self) -> RationalSeq:
        return scale(-1, self)

    def __rmul__(self, c) -> RationalSeq:
        return scale(c, self)

    def __abs__(self) -> RationalSeq:
        return absolute(self)


@dataclass(frozen=True, eq=False)
class ExplicitPrefix(RationalSeq):
    """Finitely many given terms, then zeros (``tail="zero"``) or an error."""

    terms: tuple[Fraction, ...]
    tail: str = "zero"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(as_fraction(t) for t in self.terms))
        if self.tail not in ("zero", "error"):
            raise ValueError(f"tail must be 'zero' or 'error', got {self.tail!r}")

    def term(self, n: int) -> Fraction:
        if n <= len(self.terms):
            return self.terms[n - 1]
        if self.tail == "error":
            raise SequenceOverrun(f"term {n} requested, only {len(self.terms)} given")
        return Fraction(0)

    def prefix(self, n: int) -> list[Fraction]:
        if n > len(self.terms) and self.tail == "error":
            raise SequenceOverrun(f"prefix {n} requested, only {len(self.terms)} given")
        head = list(self.terms[:n])
        return head + [Fraction(0)] * (n - len(head))


@dataclass(frozen=True, eq=False)
class EventuallyPeriodic(RationalSeq):
    """``preperiod`` followed by ``period`` repeated forever."""

    preperiod: tuple[Fraction, ...]
    period: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(as_fraction(t) for t in self.preperiod))
        object.__setattr__(self, "period", tuple(as_fraction(t) for t in self.period))
        if not self.period:
            raise ValueError("period must be non-empty")

    def term(self, n: int) -> Fraction:
        p = len(self.preperiod)
        if n <= p:
            return self.preperiod[n - 1]
        return self.period[(n - p - 1) % len(self.period)]

    def prefix(self, n: int) -> list[Fraction]:
        out = list(self.preperiod[:n])
        q = len(self.period)
        while len(out) < n:
            out.extend(self.period[: n - len(out)] if n - len(out) < q else self.period)
        return out

    def mean(self) -> Fraction:
        return sum(self.period, Fraction(0)) / len(self.period)


@dataclass(frozen=True)
class PeriodicForm:
    """Eventual shape ``a_n = n**degree * p_n`` with ``p`` eventually periodic.

    ``pre`` and ``period`` describe ``p`` exactly like
    :class:`EventuallyPeriodic` does.
    """

    degree: int
    pre: tuple[Fraction, ...]
    period: tuple[Fraction, ...]

    def p(self, n: int) -> Fraction:
        if n <= len(self.pre):
            return self.pre[n - 1]
        return self.period[(n - len(self.pre) - 1) % len(self.period)]

    def term(self, n: int) -> Fraction:
        return Fraction(n) ** self.degree * self.p(n)

    def mean(self) -> Fraction:
        return sum(self.period, Fraction(0)) / len(self.period)


@dataclass(frozen=True, eq=False)
class RuleBased(RationalSeq):
    """Terms produced by a pure function of the index.

    ``bound`` (a declared bound on ``|a_n|``), ``form`` (a declared
    :class:`PeriodicForm`) and ``support`` (terms vanish beyond this index) are
    optional structural hints.  They are taken on trust and let
    :func:`h_limit` answer exactly.
    """

    rule: Callable[[int], object]
    name: str | None = None
    params: tuple = ()
    bound: Fraction | None = None
    form: PeriodicForm | None = None
    support: int | None = None

    def term(self, n: int) -> Fraction:
        if self.support is not None and n > self.support:
            return Fraction(0)
        return as_fraction(self.rule(n))


class TransformOp(enum.Enum):
    CESARO = "cesaro"
    SHIFT = "shift"
    ABS = "abs"
    DIV_BY_INDEX = "div_by_index"
    SCALE = "scale"
    SUM = "sum"
    ALT_SIGN = "alt_sign"


@dataclass(frozen=True, eq=False)
class Transform(RationalSeq):
    """A lazy operation applied to ``base`` (and ``other`` for sums).

    ``param`` is the Cesàro order for ``CESARO``, the shift amount for
    ``SHIFT`` and the factor for ``SCALE``.
    """

    base: RationalSeq
    op: TransformOp
    param: object = None
    other: RationalSeq | None = None
    _cache: list = field(default_factory=list, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def term(self, n: int) -> Fraction:
        op = self.op
        if op is TransformOp.SHIFT:
            j = n - self.param
            return self.base.term(j) if j >= 1 else Fraction(0)
        if op is TransformOp.ABS:
            return abs(self.base.term(n))
        if op is TransformOp.DIV_BY_INDEX:
            return self.base.term(n) / n
        if op is TransformOp.SCALE:
            return self.param * self.base.term(n)
        if op is TransformOp.SUM:
            return self.base.term(n) + self.other.term(n)
        if op is TransformOp.ALT_SIGN:
            t = self.base.term(n)
            return t if n % 2 else -t
        return self.prefix(n)[n - 1]

    def prefix(self, n: int) -> list[Fraction]:
        op = self.op
        if op is TransformOp.SHIFT:
            m = self.param
            if m >= 0:
                return ([Fraction(0)] * min(m, n) + self.base.prefix(max(n - m, 0)))[:n]
            return self.base.prefix(n - m)[-m:]
        if op is TransformOp.ABS:
            return [abs(t) for t in self.base.prefix(n)]
        if op is TransformOp.DIV_BY_INDEX:
            return [t / i for i, t in enumerate(self.base.prefix(n), 1)]
        if op is TransformOp.SCALE:
            c = self.param
            return [c * t for t in self.base.prefix(n)]
        if op is TransformOp.SUM:
            return [s + t for s, t in zip(self.base.prefix(n), self.other.prefix(n))]
        if op is TransformOp.ALT_SIGN:
            return [t if i % 2 else -t for i, t in enumerate(self.base.prefix(n), 1)]
        # CESARO: memoise the longest prefix computed so far
        with self._lock:
            if len(self._cache) < n:
                self._cache[:] = cesaro_power_prefix(self.base, self.param, n)
            return self._cache[:n]


# ---------------------------------------------------------------------------
# constructors and lazy arithmetic


def constant(c) -> EventuallyPeriodic:
    return EventuallyPeriodic((), (as_fraction(c),))


def zero() -> EventuallyPeriodic:
    return constant(0)


def shift(a: RationalSeq, m: int) -> RationalSeq:
    """``b_k = a_{k-m}`` for ``k - m >= 1`` and ``0`` otherwise.

    Negative ``m`` drops ``|m|`` terms from the front.
    """
    if m == 0:
        return a
    return Transform(a, TransformOp.SHIFT, int(m))


def seq_sum(a: RationalSeq, b: RationalSeq) -> RationalSeq:
    return Transform(a, TransformOp.SUM, other=b)


def scale(c, a: RationalSeq) -> RationalSeq:
    return Transform(a, TransformOp.SCALE, as_fraction(c))


def absolute(a: RationalSeq) -> RationalSeq:
    return Transform(a, TransformOp.ABS)


def div_by_index(a: RationalSeq) -> RationalSeq:
    """``(a_n / n)``."""
    return Transform(a, TransformOp.DIV_BY_INDEX)


def alternate(a: RationalSeq) -> RationalSeq:
    """``((-1)**(n-1) * a_n)``, the sign pattern of the homology sequences."""
    return Transform(a, TransformOp.ALT_SIGN)


def cesaro(a: RationalSeq, k: int = 1) -> RationalSeq:
    """The lazy sequence ``M^k a``."""
    if k < 0:
        raise ValueError("Cesàro order must be non-negative")
    if k == 0:
        return a
    return Transform(a, TransformOp.CESARO, int(k))


# ---------------------------------------------------------------------------
# Cesàro prefixes


def _running_means(xs: Iterable, zero_value):
    s = zero_value
    out = []
    for i, x in enumerate(xs, 1):
        s += x
        out.append(s / i)
    return out


def cesaro_prefix(a: RationalSeq | Sequence, n: int) -> list[Fraction]:
    """First ``n`` terms of ``M a``: running means, in exact arithmetic."""
    if n < 1:
        raise ValueError("prefix length must be at least 1")
    terms = a.prefix(n) if isinstance(a, RationalSeq) else [as_fraction(t) for t in a[:n]]
    if len(terms) < n:
        raise SequenceOverrun(f"only {len(terms)} terms available, {n} requested")
    return _running_means(terms, Fraction(0))


def cesaro_power_prefix(a: RationalSeq | Sequence, k: int, n: int) -> list[Fraction]:
    """First ``n`` terms of ``M^k a`` (``k = 0`` returns the raw prefix)."""
    if k < 0:
        raise ValueError("Cesàro order must be non-negative")
    if n < 1:
        raise ValueError("prefix length must be at least 1")
    terms = a.prefix(n) if isinstance(a, RationalSeq) else [as_fraction(t) for t in a[:n]]
    if len(terms) < n:
        raise SequenceOverrun(f"only {len(terms)} terms available, {n} requested")
    for _ in range(k):
        terms = _running_means(terms, Fraction(0))
    return terms


# ---------------------------------------------------------------------------
# structure recognition


def _periodic_sum(f: PeriodicForm, g: PeriodicForm) -> PeriodicForm:
    pre = max(len(f.pre), len(g.pre))
    q = math.lcm(len(f.period), len(g.period))
    return PeriodicForm(
        f.degree,
        tuple(f.p(n) + g.p(n) for n in range(1, pre + 1)),
        tuple(f.p(n) + g.p(n) for n in range(pre + 1, pre + q + 1)),
    )


def _shift_form(f: PeriodicForm, m: int) -> PeriodicForm | None:
    if f.degree != 0:
        return None
    if m >= 0:
        return PeriodicForm(0, (Fraction(0),) * m + f.pre, f.period)
    drop = -m
    if drop <= len(f.pre):
        return PeriodicForm(0, f.pre[drop:], f.period)
    r = (drop - len(f.pre)) % len(f.period)
    return PeriodicForm(0, (), f.period[r:] + f.period[:r])


def periodic_form(a: RationalSeq) -> PeriodicForm | None:
    """Recognise ``a_n = n**d * p_n`` with ``p`` eventually periodic, or None."""
    if isinstance(a, EventuallyPeriodic):
        return PeriodicForm(0, a.preperiod, a.period)
    if isinstance(a, ExplicitPrefix):
        return PeriodicForm(0, a.terms, (Fraction(0),)) if a.tail == "zero" else None
    if isinstance(a, RuleBased):
        if a.form is not None:
            return a.form
        if a.support is not None:
            return PeriodicForm(0, tuple(a.prefix(a.support)), (Fraction(0),))
        return None
    if not isinstance(a, Transform):
        return None
    op = a.op
    if op is TransformOp.CESARO:
        return None
    f = periodic_form(a.base)
    if f is None:
        return None
    if op is TransformOp.SHIFT:
        return _shift_form(f, a.param)
    if op is TransformOp.ABS:
        return PeriodicForm(f.degree, tuple(abs(t) for t in f.pre), tuple(abs(t) for t in f.period))
    if op is TransformOp.SCALE:
        c = a.param
        return PeriodicForm(f.degree, tuple(c * t for t in f.pre), tuple(c * t for t in f.period))
    if op is TransformOp.DIV_BY_INDEX:
        return PeriodicForm(f.degree - 1, f.pre, f.period)
    if op is TransformOp.ALT_SIGN:
        q = len(f.period) if len(f.period) % 2 == 0 else 2 * len(f.period)
        pre = len(f.pre)
        sgn = lambda n: 1 if n % 2 else -1  # noqa: E731
        return PeriodicForm(
            f.degree,
            tuple(sgn(n) * f.p(n) for n in range(1, pre + 1)),
            tuple(sgn(n) * f.p(n) for n in range(pre + 1, pre + q + 1)),
        )
    if op is TransformOp.SUM:
        g = periodic_form(a.other)
        if g is None or g.degree != f.degree:
            return None
        return _periodic_sum(f, g)
    return None


def bound(a: RationalSeq) -> Fraction | None:
    """A certified bound on ``|a_n|`` over all ``n``, or None if unknown."""
    f = periodic_form(a)
    if f is not None and f.degree <= 0:
        return max((abs(t) for t in f.pre + f.period), default=Fraction(0))
    if isinstance(a, RuleBased):
        return a.bound
    if not isinstance(a, Transform):
        return None
    op = a.op
    if op is TransformOp.SUM:
        b1, b2 = bound(a.base), bound(a.other)
        return None if b1 is None or b2 is None else b1 + b2
    b = bound(a.base)
    if b is None:
        return None
    if op is TransformOp.SCALE:
        return abs(a.param) * b
    return b  # shift, abs, alt_sign, div_by_index and Cesàro means never grow the bound


def is_null(a: RationalSeq) -> bool:
    """True when ``a`` is certified to converge to 0 in the ordinary sense."""
    f = periodic_form(a)
    if f is not None:
        return f.degree < 0 or (f.degree == 0 and not any(f.period))
    if not isinstance(a, Transform):
        return False
    op = a.op
    if op is TransformOp.DIV_BY_INDEX:
        return bound(a.base) is not None or is_null(a.base)
    if op is TransformOp.SUM:
        return is_null(a.base) and is_null(a.other)
    return is_null(a.base)


# ---------------------------------------------------------------------------
# H-limits


@dataclass(frozen=True)
class SummabilityConfig:
    """Knobs of the empirical ladder.

    ``digits`` is the working precision of the Decimal engine used for the
    ladder; its rounding error is below ``k * 10**(1 - digits)`` relative and
    therefore far below any sensible ``tol``.
    """

    n_max: int = 100_000
    k_max: int = 8
    tol: Decimal = Decimal("1e-6")
    tail_fraction: Fraction = Fraction(1, 10)
    digits: int = 50

    def __post_init__(self):
        object.__setattr__(self, "tol", Decimal(str(self.tol)) if not isinstance(self.tol, Decimal) else self.tol)
        object.__setattr__(self, "tail_fraction", as_fraction(str(self.tail_fraction)) if not isinstance(self.tail_fraction, Fraction) else self.tail_fraction)
        if self.n_max < 10:
            raise ValueError("n_max must be at least 10")
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if not 0 < self.tail_fraction < 1:
            raise ValueError("tail_fraction must lie strictly between 0 and 1")
        if self.digits < 10:
            raise ValueError("digits must be at least 10")

    @property
    def window(self) -> int:
        return max(1, int(self.tail_fraction * self.n_max))


class Status(str, enum.Enum):
    EXACT = "exact"
    EMPIRICAL = "empirical"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HLimitResult:
    status: Status
    value: Fraction | Decimal | None = None
    k_used: int = 0
    n_used: int = 0
    window: int = 0
    oscillation: Decimal | None = None
    reason: str = ""

    @property
    def is_exact(self) -> bool:
        return self.status is Status.EXACT

    @property
    def found(self) -> bool:
        return self.status is not Status.INCONCLUSIVE

    def to_dict(self) -> dict:
        if isinstance(self.value, Fraction):
            value = str(self.value)
        elif self.value is None:
            value = None
        else:
            value = format(self.value, "f")
        return {
            "status": self.status.value,
            "value": value,
            "k_used": self.k_used,
            "n_used": self.n_used,
            "window": self.window,
            "oscillation": None if self.oscillation is None else format(self.oscillation, "e"),
            "reason": self.reason,
        }


def _exact(value: Fraction, reason: str) -> HLimitResult:
    return HLimitResult(Status.EXACT, value, k_used=1, reason=reason)


def _exact_limit(a: RationalSeq) -> HLimitResult | None:
    f = periodic_form(a)
    if f is not None:
        if f.degree == 0:
            return _exact(f.mean(), "eventually periodic: mean over one period")
        if f.degree < 0:
            return _exact(Fraction(0), "bounded periodic pattern divided by a power of n")
    if is_null(a):
        return _exact(Fraction(0), "bounded sequence divided by n")
    if isinstance(a, Transform) and a.op is TransformOp.CESARO:
        inner = _exact_limit(a.base)
        if inner is not None:
            return _exact(inner.value, "Cesàro means keep the H-limit; " + inner.reason)
    return None


def _decimal_prefix(a: RationalSeq, n: int, ctx) -> tuple[list[Decimal], int]:
    """Decimal terms of ``a`` and the number of Cesàro levels already applied."""
    levels = 0
    while isinstance(a, Transform) and a.op is TransformOp.CESARO:
        levels += a.param
        a = a.base
    xs = [Decimal(t.numerator) / Decimal(t.denominator) for t in a.prefix(n)]
    for _ in range(levels):
        xs = _running_means(xs, Decimal(0))
    return xs, levels


def h_limit(a: RationalSeq, cfg: SummabilityConfig | None = None) -> HLimitResult:
    """Hölder limit of ``a``: exact when structure allows, else the ladder.

    The ladder applies ``M`` up to ``cfg.k_max`` times to the first
    ``cfg.n_max`` terms and accepts the first order whose last window of
    terms has spread ``max - min <= cfg.tol``; the reported value is the
    midpoint of that window.
    """
    cfg = cfg or SummabilityConfig()
    exact = _exact_limit(a)
    if exact is not None:
        return exact
    n, w = cfg.n_max, cfg.window
    with localcontext() as ctx:
        ctx.prec = cfg.digits
        xs, levels = _decimal_prefix(a, n, ctx)
        best = None
        for k in range(1, cfg.k_max + 1):
            xs = _running_means(xs, Decimal(0))
            tail = xs[-w:]
            hi, lo = max(tail), min(tail)
            osc = hi - lo
            if best is None or osc < best[1]:
                best = (k, osc)
            if osc <= cfg.tol:
                return HLimitResult(
                    Status.EMPIRICAL,
                    (hi + lo) / 2,
                    k_used=k + levels,
                    n_used=n,
                    window=w,
                    oscillation=osc,
                    reason="tail window of M^k settled within tolerance",
                )
    return HLimitResult(
        Status.INCONCLUSIVE,
        None,
        k_used=best[0] + levels,
        n_used=n,
        window=w,
        oscillation=best[1],
        reason=f"no order up to {cfg.k_max} settled within {cfg.tol}",
    )


class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"

    def __bool__(self) -> bool:
        return self is Verdict.TRUE


@dataclass(frozen=True)
class HoResult:
    """Outcome of an H-o(n) test together with its certificate."""

    verdict: Verdict
    branch: Status
    reason: str
    limit: HLimitResult | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "branch": self.branch.value,
            "reason": self.reason,
            "limit": None if self.limit is None else self.limit.to_dict(),
        }


def is_h_o_n(a: RationalSeq, absolute: bool = False, cfg: SummabilityConfig | None = None) -> HoResult:
    """Decide whether ``a / n`` (or ``|a| / n``) is H-null."""
    cfg = cfg or SummabilityConfig()
    t = Transform(a, TransformOp.ABS) if absolute else a
    b = bound(t)
    if b is not None:
        return HoResult(Verdict.TRUE, Status.EXACT, f"bounded by {b}, so the quotient by n is null")
    lim = h_limit(div_by_index(t), cfg)
    if lim.status is Status.EXACT:
        verdict = Verdict.TRUE if lim.value == 0 else Verdict.FALSE
        return HoResult(verdict, Status.EXACT, f"exact H-limit of quotient is {lim.value}", lim)
    if lim.status is Status.EMPIRICAL and abs(lim.value) <= cfg.tol:
        return HoResult(Verdict.TRUE, Status.EMPIRICAL, "ladder settled at 0 within tolerance", lim)
    if lim.status is Status.EMPIRICAL:
        return HoResult(Verdict.INCONCLUSIVE, Status.EMPIRICAL, f"ladder settled near {lim.value}, not certified", lim)
    return HoResult(Verdict.INCONCLUSIVE, Status.INCONCLUSIVE, lim.reason, lim)


# ---------------------------------------------------------------------------
# builtin rules (used by the JSON sequence format and the CLI)


def _alt_ceil_half(params) -> RuleBased:
    return RuleBased(lambda n: (n + 1) // 2 if n % 2 else -(n // 2), name="alt_ceil_half")


def _alt_sign_const(params) -> RuleBased:
    c = as_fraction(params.get("c", 1))
    return RuleBased(
        lambda n: c if n % 2 else -c,
        name="alt_sign_const",
        params=(("c", str(c)),),
        form=PeriodicForm(0, (), (c, -c)),
    )


def _index(params) -> RuleBased:
    c = as_fraction(params.get("c", 1))
    return RuleBased(lambda n: c * n, name="index", params=(("c", str(c)),), form=PeriodicForm(1, (), (c,)))


def _alt_index(params) -> RuleBased:
    # (-1)^n * c * n, i.e. -c, 2c, -3c, ...
    c = as_fraction(params.get("c", 1))
    return RuleBased(
        lambda n: c * n if n % 2 == 0 else -c * n,
        name="alt_index",
        params=(("c", str(c)),),
        form=PeriodicForm(1, (), (-c, c)),
    )


def _harmonic(params) -> RuleBased:
    return RuleBased(lambda n: Fraction(1, n), name="harmonic", bound=Fraction(1))


RULES: dict[str, Callable[[dict], RuleBased]] = {
    "alt_ceil_half": _alt_ceil_half,
    "alt_sign_const": _alt_sign_const,
    "index": _index,
    "alt_index": _alt_index,
    "harmonic": _harmonic,
}


def rule(name: str, **params) -> RuleBased:
    """Instantiate a builtin rule by id."""
    try:
        factory = RULES[name]
    except KeyError:
        raise KeyError(f"unknown rule {name!r}; known: {', '.join(sorted(RULES))}") from None
    return factory(params)
