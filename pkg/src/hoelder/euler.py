"""The infinite Euler characteristic ``chi_H`` and its chain-level computation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chain import (
    ChainComplex,
    HomologyOnlyComplex,
    direct_sum,
    rank_bundle,
    shift_complex,
    zero_complex,
)
from .seq import (
    HLimitResult,
    HoResult,
    Status,
    SummabilityConfig,
    Verdict,
    bound,
    cesaro_prefix,
    h_limit,
    is_h_o_n,
)

__all__ = [
    "PreconditionError",
    "ChiReport",
    "LawCheck",
    "chi_h",
    "chi_h_shift_dsum_laws",
    "rc_identity_check",
    "chi_via_chain_modules",
]


class PreconditionError(ValueError):
    """A theorem hypothesis could not be established, so nothing is computed."""

    def __init__(self, message: str, certificate: HoResult | None = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class ChiReport:
    chi: HLimitResult
    preadmissible: Verdict
    admissible: Verdict
    certificates: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "chi": self.chi.to_dict(),
            "preadmissible": self.preadmissible.value,
            "admissible": self.admissible.value,
            "certificates": dict(self.certificates),
            "notes": list(self.notes),
        }


def chi_h(C: ChainComplex, cfg: SummabilityConfig | None = None) -> ChiReport:
    """``chi_H(C) = H-lim hc`` with pre-admissibility and admissibility verdicts."""
    cfg = cfg or SummabilityConfig()
    hc = rank_bundle(C).hc
    chi = h_limit(hc, cfg)
    pre = Verdict.TRUE if chi.found else Verdict.INCONCLUSIVE
    ho = is_h_o_n(hc, absolute=True, cfg=cfg)
    adm = ho.verdict
    if adm is Verdict.TRUE and pre is not Verdict.TRUE:
        adm = Verdict.INCONCLUSIVE
    notes = []
    if isinstance(C, HomologyOnlyComplex) and bound(C.hranks) is not None:
        notes.append("boundedness of the homology ranks is a declared property of the input, not checked")
    return ChiReport(
        chi=chi,
        preadmissible=pre,
        admissible=adm,
        certificates={"preadmissible": chi.status.value, "admissible": ho.branch.value},
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class LawCheck:
    ok: bool
    items: tuple[dict, ...]

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "items": list(self.items)}


def _exact_chi(C: ChainComplex, cfg: SummabilityConfig) -> Fraction:
    r = chi_h(C, cfg).chi
    if r.status is not Status.EXACT:
        raise PreconditionError(f"no exact chi available ({r.status.value}: {r.reason})")
    return r.value


def chi_h_shift_dsum_laws(
    C: ChainComplex, D: ChainComplex | None = None, m: int = 1, cfg: SummabilityConfig | None = None
) -> LawCheck:
    """Check ``chi(C[m]) = (-1)^m chi(C)`` and ``chi(C + D) = chi(C) + chi(D)`` exactly."""
    cfg = cfg or SummabilityConfig()
    D = zero_complex() if D is None else D
    c, d = _exact_chi(C, cfg), _exact_chi(D, cfg)
    shifted = _exact_chi(shift_complex(C, m), cfg)
    summed = _exact_chi(direct_sum(C, D), cfg)
    items = (
        {"law": "shift", "m": m, "lhs": str(shifted), "rhs": str((-1) ** m * c), "ok": shifted == (-1) ** m * c},
        {"law": "direct_sum", "lhs": str(summed), "rhs": str(c + d), "ok": summed == c + d},
    )
    return LawCheck(all(i["ok"] for i in items), items)


def rc_identity_check(C: ChainComplex, n_max: int) -> list[Fraction]:
    """Residuals ``(M rc)_n - (M hc)_n - bc_n / n`` for ``n = 1..n_max``.

    All three sequences come from separate rank computations (module ranks,
    homology ranks, boundary ranks), so a zero residual is a real check.
    """
    if not C.has_chain_modules:
        raise TypeError("the identity needs chain modules, not just homology ranks")
    bundle = rank_bundle(C)
    mrc = cesaro_prefix(bundle.rc, n_max)
    mhc = cesaro_prefix(bundle.hc, n_max)
    bc = bundle.bc.prefix(n_max)
    return [mrc[i] - mhc[i] - bc[i] / (i + 1) for i in range(n_max)]


def chi_via_chain_modules(C: ChainComplex, cfg: SummabilityConfig | None = None) -> HLimitResult:
    """``H-lim rc``, which equals ``chi_H(C)`` once ``bc = H-o(n)`` is established."""
    cfg = cfg or SummabilityConfig()
    if not C.has_chain_modules:
        raise TypeError("chain modules are required")
    bundle = rank_bundle(C)
    gate = is_h_o_n(bundle.bc, absolute=False, cfg=cfg)
    if gate.verdict is not Verdict.TRUE:
        raise PreconditionError(
            f"cannot establish that the boundary-rank sequence is H-o(n): {gate.reason}", gate
        )
    return h_limit(bundle.rc, cfg)
