"""Reference values: every closed-form example the package is expected to reproduce."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .chain import ExplicitComplex, direct_sum, rank_bundle, shift_complex
from .construct import builtin, greedy_certificate, rational_target, real_target, topology_builtin
from .euler import chi_h, chi_h_shift_dsum_laws, chi_via_chain_modules
from .k0 import FormalSum, K0Ledger, chi_on_class, surjectivity_witness
from .linalg import IntMatrix
from .seq import (
    EventuallyPeriodic,
    Status,
    SummabilityConfig,
    cesaro_power_prefix,
    cesaro_prefix,
    h_limit,
    rule,
    shift,
)
from .ses import additivity_chi_check, delta_seq, periodic_split, split_ses, two_out_of_three

__all__ = ["Check", "run_demo"]


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    actual: str
    ok: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


def _fr(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def run_demo(cfg: SummabilityConfig | None = None) -> list[Check]:
    cfg = cfg or SummabilityConfig()
    out: list[Check] = []

    def add(name, expected, actual, ok=None):
        out.append(Check(name, str(expected), str(actual), bool(expected == actual) if ok is None else bool(ok)))

    alt = rule("alt_ceil_half")
    add("running means of 1,-1,2,-2,3,-3,4", _fr([1, 0, Fraction(2, 3), 0, Fraction(3, 5), 0, Fraction(4, 7)]), _fr(cesaro_prefix(alt, 7)))
    last = cesaro_power_prefix(alt, 2, 10_000)[-1]
    add("second means of 1,-1,2,-2,... at n=10^4 near 1/4", "|x - 1/4| <= 1e-3", f"{float(last):.6f}", abs(last - Fraction(1, 4)) <= Fraction(1, 1000))
    add("running means of 1,0,1,0,1,0", _fr([1, Fraction(1, 2), Fraction(2, 3), Fraction(1, 2), Fraction(3, 5), Fraction(1, 2)]), _fr(cesaro_prefix(EventuallyPeriodic((), (1, 0)), 6)))
    per = EventuallyPeriodic((), (1, 0))
    r = h_limit(per, cfg)
    add("H-limit of 1,0,1,0,...", "exact 1/2 k=1", f"{r.status.value} {r.value} k={r.k_used}")
    add("H-limit after shifting by 5", "1/2", str(h_limit(shift(per, 5), cfg).value))
    loose = SummabilityConfig(n_max=cfg.n_max, k_max=cfg.k_max, tol=max(cfg.tol, Decimal("1e-5")), tail_fraction=cfg.tail_fraction)
    r = h_limit(alt, loose)
    add(
        "H-limit of 1,-1,2,-2,... (ladder, tol 1e-5)",
        "empirical within 1e-4 of 1/4 at k=2",
        f"{r.status.value} {r.to_dict()['value']} k={r.k_used}",
        r.status is Status.EMPIRICAL and r.k_used == 2 and abs(r.value - Decimal("0.25")) <= Decimal("1e-4"),
    )

    ev = builtin("even_z")
    add("hc of the even-degree complex", _fr([1, 0, 1, 0, 1, 0]), _fr(rank_bundle(ev).hc.prefix(6)))
    add("hc period of one_over_m(3)", _fr([1, 0, 0, 0, 0, 0]), _fr(rank_bundle(builtin("one_over_m", m=3)).hc.period))
    add("hc of the even-degree complex shifted by 1", _fr([0, -1, 0, -1, 0, -1]), _fr(rank_bundle(shift_complex(ev, 1)).hc.prefix(6)))

    rep = chi_h(ev, cfg)
    add("chi_H(even-degree complex)", "exact 1/2 admissible", f"{rep.chi.status.value} {rep.chi.value} {'admissible' if rep.admissible.value == 'true' else rep.admissible.value}")
    for m in (1, 3, 10):
        add(f"chi_H(one_over_m({m}))", str(Fraction(1, 2 * m)), str(chi_h(builtin("one_over_m", m=m), cfg).chi.value))
    idc = ExplicitComplex((1, 1), (IntMatrix.identity(1),))
    add("chi_H of a bounded complex", "0", str(chi_h(idc, cfg).chi.value))
    law = chi_h_shift_dsum_laws(ev, None, 1, cfg)
    add("chi_H(C[1]) = -chi_H(C) for the even-degree complex", "-1/2", law.items[0]["lhs"], law.ok and law.items[0]["lhs"] == "-1/2")
    add("chi via chain modules, even-degree complex", "1/2", str(chi_via_chain_modules(ev, cfg).value))

    A = ExplicitComplex((1, 0, 1), (IntMatrix.zeros(1, 0), IntMatrix.zeros(0, 1)))
    S = split_ses(A, idc)
    add("delta sequence of a split sequence", _fr([0, 0, 0]), _fr(delta_seq(S).prefix(3)))
    P = periodic_split(builtin("even_z"), builtin("wedge_odd_spheres"))
    rec = additivity_chi_check(P, cfg)
    add("additivity on a split sequence of builtins", "0", rec.alternating_sum, rec.ok and rec.exact)
    t = two_out_of_three(S, {"A": "true", "C": "true"}, cfg)
    add("two out of three: A, C admissible gives B", "B true", f"{t.member} {t.verdict.value}")

    add("rational target -1/2", "-1/2", str(chi_h(rational_target(Fraction(-1, 2)), cfg).chi.value))
    add("wedge of all spheres", "0", str(chi_h(topology_builtin("wedge_all_spheres"), cfg).chi.value))
    add("wedge of odd spheres", "-1/2", str(chi_h(topology_builtin("wedge_odd_spheres"), cfg).chi.value))
    add("point", "0", str(chi_h(topology_builtin("point"), cfg).chi.value))

    C, state = real_target(Fraction(1, 2), 0, 1, 20)
    add("greedy schedule for r=1/2: first switch", "3", str(state.switches[0]))
    cert = greedy_certificate(state, 10_000)
    add("greedy r=1/2 amplitude bound to 10^4", "holds", "holds" if cert.holds else "fails", cert.holds and cert.crossings_by_1e4 >= 3)

    L = K0Ledger()
    L.add("e", ev)
    add("chi on [E] + [E]", "1", str(chi_on_class(FormalSum.of("e", 2), L, cfg).value))
    w = surjectivity_witness(Fraction(1, 2), cfg=cfg)
    add("witness for 1/2", "exact 1/2", f"{w.kind} {w.chi.value}")
    d2 = direct_sum(builtin("one_over_m", m=2), builtin("one_over_m", m=2))
    add("one_over_m(2) + one_over_m(2)", "1/2", str(chi_h(d2, cfg).chi.value))
    return out
