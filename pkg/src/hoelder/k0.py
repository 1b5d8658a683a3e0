"""A finite fragment of the K0 presentation and the ``chi_H`` homomorphism on it.

A :class:`K0Ledger` names some complexes and records relations between
them: weak equivalences ``[A] = [A']`` and cofibration sequences
``[B] = [A] + [B/A]``.  :func:`check_relations` confirms that ``chi_H``
respects every recorded relation; :func:`surjectivity_witness` produces a
complex for any prescribed real value.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .chain import ChainComplex, ChainMap, cone_exactness, rank_bundle
from .construct import GreedyCertificate, greedy_certificate, one_over_m, rational_target, real_target
from .euler import PreconditionError, chi_h
from .seq import EventuallyPeriodic, HLimitResult, Status, SummabilityConfig, Verdict, as_fraction
from .ses import PeriodicSes, SesSpec, admissibility_of_ses, validate_ses

__all__ = [
    "FormalSum",
    "WeqRel",
    "CofibRel",
    "K0Ledger",
    "ClassChi",
    "chi_on_class",
    "validate_ledger",
    "check_relations",
    "Witness",
    "surjectivity_witness",
]


class FormalSum(Counter):
    """Integer combination of generator names; zero coefficients are dropped."""

    def __init__(self, terms=None, **kw):
        super().__init__()
        for k, v in dict(terms or {}, **kw).items():
            self[k] += int(v)
        self._prune()

    def _prune(self):
        for k in [k for k, v in self.items() if v == 0]:
            del self[k]

    def __add__(self, other):
        out = FormalSum(self)
        for k, v in other.items():
            out[k] += v
        out._prune()
        return out

    def __sub__(self, other):
        return self + FormalSum({k: -v for k, v in other.items()})

    def __neg__(self):
        return FormalSum({k: -v for k, v in self.items()})

    def __rmul__(self, c: int):
        return FormalSum({k: c * v for k, v in self.items()})

    @classmethod
    def of(cls, name: str, coeff: int = 1) -> FormalSum:
        return cls({name: coeff})


@dataclass(frozen=True, eq=False)
class WeqRel:
    """``[a] = [b]``, certified by a quasi-isomorphism ``a -> b`` or by equal ``hc``."""

    a: str
    b: str
    map: ChainMap | None = None
    horizon: int = 0

    @property
    def certificate(self) -> str:
        return "map" if self.map is not None else "equal_hc"


@dataclass(frozen=True, eq=False)
class CofibRel:
    """``[b] = [a] + [quotient]`` from a short exact sequence ``a -> b -> quotient``."""

    a: str
    b: str
    quotient: str
    ses: SesSpec | PeriodicSes
    split: bool = False


@dataclass
class K0Ledger:
    generators: dict[str, ChainComplex] = field(default_factory=dict)
    relations: list = field(default_factory=list)

    def add(self, name: str, C: ChainComplex) -> str:
        if name in self.generators and self.generators[name] is not C:
            raise KeyError(f"generator {name!r} already names a different complex")
        self.generators[name] = C
        return name

    def weq(self, a: str, b: str, map: ChainMap | None = None, horizon: int = 0) -> WeqRel:
        rel = WeqRel(a, b, map, horizon)
        self.relations.append(rel)
        return rel

    def cofib(self, a: str, b: str, quotient: str, ses, split: bool = False) -> CofibRel:
        rel = CofibRel(a, b, quotient, ses, split)
        self.relations.append(rel)
        return rel

    def relation_class(self, rel) -> FormalSum:
        """The element of the free group that a relation says is zero."""
        if isinstance(rel, WeqRel):
            return FormalSum.of(rel.a) - FormalSum.of(rel.b)
        return FormalSum.of(rel.b) - FormalSum.of(rel.a) - FormalSum.of(rel.quotient)


# ---------------------------------------------------------------------------
# chi on classes


@dataclass(frozen=True)
class ClassChi:
    value: Fraction | Decimal
    exact: bool
    parts: dict

    def to_dict(self) -> dict:
        return {
            "value": str(self.value) if self.exact else format(self.value, "f"),
            "exact": self.exact,
            "parts": dict(self.parts),
        }


def _chi(C: ChainComplex, cfg: SummabilityConfig, cache: dict | None = None) -> HLimitResult:
    key = id(C)
    if cache is not None and key in cache:
        return cache[key]
    r = chi_h(C, cfg).chi
    if cache is not None:
        cache[key] = r
    return r


def chi_on_class(s: FormalSum, ledger: K0Ledger, cfg: SummabilityConfig | None = None, cache: dict | None = None) -> ClassChi:
    """``sum coeff * chi_H(generator)``; exact when every part is exact."""
    cfg = cfg or SummabilityConfig()
    exact_part = Fraction(0)
    empirical_part = Decimal(0)
    exact = True
    parts = {}
    for name, c in sorted(s.items()):
        r = _chi(ledger.generators[name], cfg, cache)
        if not r.found:
            raise PreconditionError(f"chi_H of {name!r} is inconclusive: {r.reason}")
        parts[name] = r.to_dict()["value"]
        if r.status is Status.EXACT:
            exact_part += c * r.value
        else:
            exact = False
            empirical_part += c * r.value
    if exact:
        total = exact_part
    else:
        total = empirical_part + Decimal(exact_part.numerator) / Decimal(exact_part.denominator)
    return ClassChi(total, exact, parts)


# ---------------------------------------------------------------------------
# validation and relation checks


def _equal_hc(A: ChainComplex, B: ChainComplex, n: int = 2000) -> bool:
    ha, hb = rank_bundle(A).hc, rank_bundle(B).hc
    if isinstance(ha, EventuallyPeriodic) and isinstance(hb, EventuallyPeriodic):
        n = max(len(ha.preperiod), len(hb.preperiod)) + math.lcm(len(ha.period), len(hb.period))
    return ha.prefix(n) == hb.prefix(n)


def validate_ledger(ledger: K0Ledger) -> list[dict]:
    """Problems with the ledger's certificates (empty when everything checks)."""
    problems = []
    for idx, rel in enumerate(ledger.relations):
        names = (rel.a, rel.b) if isinstance(rel, WeqRel) else (rel.a, rel.b, rel.quotient)
        missing = [n for n in names if n not in ledger.generators]
        if missing:
            problems.append({"relation": idx, "problem": f"unknown generators {missing}"})
            continue
        if isinstance(rel, WeqRel):
            A, B = ledger.generators[rel.a], ledger.generators[rel.b]
            if rel.map is not None:
                if rel.map.source is not A or rel.map.target is not B:
                    problems.append({"relation": idx, "problem": "map does not connect the named generators"})
                elif not rel.map.check(rel.horizon).ok:
                    problems.append({"relation": idx, "problem": "map is not a chain map"})
                else:
                    n = cone_exactness(rel.map, rel.horizon)
                    if n is not None:
                        problems.append({"relation": idx, "problem": f"map is not a quasi-isomorphism (cone degree {n})"})
            elif not _equal_hc(A, B):
                problems.append({"relation": idx, "problem": "homology rank sequences differ"})
        else:
            S = rel.ses
            members = (S.A, S.B, S.C)
            if any(m is not ledger.generators[n] for m, n in zip(members, names)):
                problems.append({"relation": idx, "problem": "sequence members are not the named generators"})
                continue
            report = S.validate() if isinstance(S, PeriodicSes) else validate_ses(S)
            if not report.ok:
                problems.append({"relation": idx, "problem": f"invalid sequence: {report.problems[0]}"})
    return problems


@dataclass
class RelationsReport:
    ok: bool
    records: list

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "records": self.records}


def check_relations(ledger: K0Ledger, cfg: SummabilityConfig | None = None) -> RelationsReport:
    """``chi_H`` vanishes on every relation (gated by weak admissibility for cofibrations)."""
    cfg = cfg or SummabilityConfig()
    cache: dict = {}
    bad = {p["relation"]: p["problem"] for p in validate_ledger(ledger)}
    records = []
    for idx, rel in enumerate(ledger.relations):
        rec = {"relation": idx, "kind": "weq" if isinstance(rel, WeqRel) else "cofib"}
        if idx in bad:
            rec.update(ok=False, problem=bad[idx])
            records.append(rec)
            continue
        if isinstance(rel, CofibRel):
            weak = admissibility_of_ses(rel.ses, cfg).weak
            rec["weak_admissible"] = weak.verdict.value
            if weak.verdict is not Verdict.TRUE:
                rec.update(ok=False, problem="weak admissibility not established")
                records.append(rec)
                continue
        try:
            value = chi_on_class(ledger.relation_class(rel), ledger, cfg, cache)
        except PreconditionError as exc:
            rec.update(ok=False, problem=str(exc))
            records.append(rec)
            continue
        ok = value.value == 0 if value.exact else abs(value.value) <= 3 * cfg.tol
        rec.update(ok=ok, balance=value.to_dict())
        records.append(rec)
    return RelationsReport(all(r["ok"] for r in records), records)


# ---------------------------------------------------------------------------
# surjectivity


@dataclass(frozen=True)
class Witness:
    complex: ChainComplex
    target: Fraction
    kind: str  # "exact" or "greedy"
    chi: HLimitResult | None = None
    greedy: GreedyCertificate | None = None
    state: object = None

    def to_dict(self) -> dict:
        out = {"target": str(self.target), "kind": self.kind}
        if self.chi is not None:
            out["chi"] = self.chi.to_dict()
        if self.greedy is not None:
            out["greedy"] = self.greedy.to_dict()
        if self.state is not None:
            out["state"] = self.state.to_dict()
        return out


def _is_decimal_input(r) -> bool:
    if isinstance(r, Decimal):
        return True
    if isinstance(r, str):
        return "/" not in r and any(ch in r for ch in ".eE")
    return False


def surjectivity_witness(r, n_max: int = 100_000, cfg: SummabilityConfig | None = None) -> Witness:
    """A complex with ``chi_H = r``.

    Rationals (ints, Fractions, ``"p/q"`` strings) get the exact periodic
    construction; targets ``1/(2m)`` get :func:`one_over_m` itself.
    Decimals are treated as approximations of a real number and get the
    greedy construction with ``a = floor |r|``, ``b = a + 1``,
    certified on ``n <= n_max``.
    """
    cfg = cfg or SummabilityConfig()
    if not _is_decimal_input(r):
        q = as_fraction(r)
        if q > 0 and q.numerator == 1 and q.denominator % 2 == 0:
            C = one_over_m(q.denominator // 2)
        else:
            C = rational_target(q)
        return Witness(C, q, "exact", chi=chi_h(C, cfg).chi)
    q = Fraction(Decimal(r)) if isinstance(r, str) else Fraction(r)
    a = int(abs(q))
    if a == abs(q):
        C = rational_target(q)
        return Witness(C, q, "exact", chi=chi_h(C, cfg).chi)
    C, state = real_target(q, a, a + 1)
    cert = greedy_certificate(state, n_max)
    return Witness(C, q, "greedy", greedy=cert, state=state)
