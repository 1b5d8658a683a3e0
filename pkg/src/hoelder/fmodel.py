"""Finite models: a degreewise finitely generated subcomplex ``D'`` of ``D``.

Given a chain map ``f : C -> D`` of explicit complexes, :func:`approximate`
builds ``D' <= D`` degree by degree so that ``f`` factors as ``i o f'`` and
the inclusion ``i`` is a quasi-isomorphism below the horizon.  Stage ``k``
(for ``k = -1 .. K-1``) produces ``D'_{k+1} = X + Y + Z``:

* ``X`` -- the image of ``f_{k+1}``;
* ``Y`` -- cycles of ``D_{k+1}`` reaching every homology class;
* ``Z`` -- preimages under ``d`` of cycles ``Z~`` of ``D'_k`` that became
  boundaries in ``D`` but were not yet boundaries in ``D'``.

Generators are picked greedily from canonical HNF bases, so runs are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import ChainMap, ExplicitComplex, cone_exactness, validate
from .linalg import (
    IntMatrix,
    Lattice,
    coordinates,
    image_lattice,
    kernel_lattice,
    lattice_eq,
    member,
    solve,
)

__all__ = [
    "ConstructionError",
    "FiltrationStage",
    "Approximation",
    "approximate",
    "CheckResult",
    "VerificationReport",
    "verify_approximation",
    "drop_step3_generator",
    "stage_conditions",
]


class ConstructionError(RuntimeError):
    """An internal inconsistency; carries the data needed to reproduce it."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiltrationStage:
    """Data of the stage that builds degree ``k + 1``."""

    k: int
    X: Lattice
    Y: Lattice
    Z_tilde: Lattice
    Z: Lattice
    z_generators: tuple[tuple[int, ...], ...]
    module: Lattice

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "degree": self.k + 1,
            "rank_X": self.X.rank,
            "rank_Y": self.Y.rank,
            "rank_Z_tilde": self.Z_tilde.rank,
            "rank_Z": self.Z.rank,
            "rank_module": self.module.rank,
            "z_generators": [list(v) for v in self.z_generators],
        }


@dataclass(frozen=True, eq=False)
class Approximation:
    """Result of :func:`approximate`.

    ``modules[j]`` is ``D'_j`` as a lattice in ``D_j``; ``D_prime`` uses the
    HNF basis of each lattice as coordinates.
    """

    f: ChainMap
    horizon: int
    modules: tuple[Lattice, ...]
    stages: tuple[FiltrationStage, ...]
    D_prime: ExplicitComplex | None
    f_prime: ChainMap | None
    i: ChainMap | None

    def to_dict(self) -> dict:
        out = {
            "horizon": self.horizon,
            "modules": [[list(b) for b in L.basis] for L in self.modules],
            "stages": [s.to_dict() for s in self.stages],
        }
        if self.D_prime is not None:
            out["D_prime"] = {"ranks": list(self.D_prime.ranks), "boundaries": [m.to_lists() for m in self.D_prime.boundaries]}
            out["f_prime"] = [m.to_lists() for m in self.f_prime.components]
            out["i"] = [m.to_lists() for m in self.i.components]
        return out


def _greedy(candidates: Lattice, already: Lattice) -> list[tuple[int, ...]]:
    """HNF basis vectors of ``candidates`` not in the span of ``already`` plus earlier picks."""
    kept: list[tuple[int, ...]] = []
    span = already
    for v in candidates.basis:
        if not member(span, v):
            kept.append(v)
            span = Lattice.span(span.dim, span.basis + (v,))
    return kept


def _cycles(D: ExplicitComplex, j: int) -> Lattice:
    return kernel_lattice(D.boundary(j)) if j >= 1 else Lattice.full(D.rank(0))


def _boundaries(D: ExplicitComplex, j: int) -> Lattice:
    return image_lattice(D.boundary(j + 1))


def _assemble(f: ChainMap, modules: list[Lattice], horizon: int):
    """``D'`` in HNF coordinates, ``f'`` and ``i``; None when ``D'`` is not closed under ``d``."""
    D, C = f.target, f.source
    ranks = tuple(L.rank for L in modules)
    bds = []
    for j in range(1, horizon + 1):
        d = D.boundary(j)
        cols = [coordinates(modules[j - 1], d.apply(v)) for v in modules[j].basis]
        if any(c is None for c in cols):
            return None
        bds.append(IntMatrix.from_columns(cols, ranks[j - 1]))
    Dp = ExplicitComplex(ranks, tuple(bds))
    incl = ChainMap(Dp, D, tuple(L.matrix() for L in modules))
    fp = []
    for j in range(horizon + 1):
        cols = [coordinates(modules[j], c) for c in f.at(j).columns()]
        if any(c is None for c in cols):
            return None
        fp.append(IntMatrix.from_columns(cols, ranks[j]))
    truncated_source = ExplicitComplex(
        tuple(C.rank(j) for j in range(horizon + 1)), tuple(C.boundary(j) for j in range(1, horizon + 1))
    )
    return Dp, ChainMap(truncated_source, Dp, tuple(fp)), incl


def approximate(f: ChainMap, K: int) -> Approximation:
    """Run stages ``k = -1 .. K-1`` and assemble ``D'`` in degrees ``0..K``."""
    D = f.target
    if not isinstance(D, ExplicitComplex):
        raise TypeError("the target must be an explicit complex")
    if K < 0 or K > max(D.top, 0):
        raise ValueError(f"horizon {K} outside 0..{max(D.top, 0)}")
    rep = f.check(K)
    if not rep.ok:
        raise ValueError(f"not a chain map: {rep.problems[0]}")
    if not validate(D).ok:
        raise ValueError("target complex is invalid")

    modules: list[Lattice] = []
    stages: list[FiltrationStage] = []
    for k in range(-1, K):
        j = k + 1
        dim = D.rank(j)
        X = image_lattice(f.at(j))
        Zj, Bj = _cycles(D, j), _boundaries(D, j)
        Y = Lattice.span(dim, _greedy(Zj, Bj))
        E1 = X + Y
        z_tilde = Lattice.zero(D.rank(k)) if k >= 0 else Lattice.zero(0)
        z_gens: list[tuple[int, ...]] = []
        if k >= 0:
            d = D.boundary(j)
            cycles_prime = modules[k] & _cycles(D, k)  # Z_k E'
            boundaries_prime = E1.image(d)  # B_k E'
            killed = cycles_prime & _boundaries(D, k)  # classes dying in H_k D
            picks = _greedy(killed, boundaries_prime)
            z_tilde = Lattice.span(D.rank(k), picks)
            for t in picks:
                z = solve(d, t)
                if z is None:
                    raise ConstructionError(
                        f"no preimage for a boundary in degree {k}",
                        {"k": k, "target": list(t), "boundary": d.to_lists()},
                    )
                z_gens.append(z)
        Z = Lattice.span(dim, z_gens)
        module = E1 + Z
        modules.append(module)
        stages.append(FiltrationStage(k, X, Y, z_tilde, Z, tuple(z_gens), module))

    assembled = _assemble(f, modules, K)
    if assembled is None:
        raise ConstructionError("constructed modules are not a subcomplex", {"modules": [list(L.basis) for L in modules]})
    Dp, fp, incl = assembled
    return Approximation(f, K, tuple(modules), tuple(stages), Dp, fp, incl)


def drop_step3_generator(result: Approximation) -> tuple[Approximation, int]:
    """Fault injection: remove the last Step 3 generator of the last stage that has one.

    Degrees above the mutated one are dropped, so the result is still a
    subcomplex.  Returns the mutated approximation and the degree ``k`` whose
    homology is no longer mapped injectively.
    """
    for st in reversed(result.stages):
        if st.z_generators:
            break
    else:
        raise ValueError("no stage used Step 3")
    j = st.k + 1
    gens = st.X.basis + st.Y.basis + st.z_generators[:-1]
    mutated = Lattice.span(st.module.dim, gens)
    modules = list(result.modules[:j]) + [mutated]
    assembled = _assemble(result.f, modules, j)
    Dp, fp, incl = assembled if assembled else (None, None, None)
    dropped = FiltrationStage(
        st.k, st.X, st.Y, st.Z_tilde, Lattice.span(st.Z.dim, st.z_generators[:-1]), st.z_generators[:-1], mutated
    )
    stages = result.stages[:j] + (dropped,)
    return Approximation(result.f, j, tuple(modules), stages, Dp, fp, incl), st.k


# ---------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    ok: bool = True
    degree: int | None = None
    witness: str = ""

    def fail(self, degree: int, witness: str) -> None:
        if self.ok:
            self.ok, self.degree, self.witness = False, degree, witness

    def to_dict(self) -> dict:
        return {"ok": self.ok, "degree": self.degree, "witness": self.witness}


@dataclass
class VerificationReport:
    closure: CheckResult = field(default_factory=CheckResult)
    factorization: CheckResult = field(default_factory=CheckResult)
    cone: CheckResult = field(default_factory=CheckResult)
    stagewise: CheckResult = field(default_factory=CheckResult)
    ranks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.closure.ok and self.factorization.ok and self.cone.ok and self.stagewise.ok

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "closure": self.closure.to_dict(),
            "factorization": self.factorization.to_dict(),
            "cone": self.cone.to_dict(),
            "stagewise": self.stagewise.to_dict(),
            "ranks": self.ranks,
        }


def stage_conditions(D: ExplicitComplex, modules, k: int) -> tuple[bool, int | None, str]:
    """Check ``F_k D'`` (degrees ``<= k`` of ``modules``) against ``D`` over Z.

    ``H_k`` must surject: ``(D'_k & Z_k D) + B_k D = Z_k D``.  ``H_j`` for
    ``j < k`` must be injective as well: ``(D'_j & Z_j D) & B_j D = d D'_{j+1}``.
    """
    for j in range(k + 1):
        zj = modules[j] & _cycles(D, j)
        if not lattice_eq(zj + _boundaries(D, j), _cycles(D, j)):
            return False, j, f"H_{j} of the stage does not surject onto H_{j} D"
        if j < k:
            bprime = modules[j + 1].image(D.boundary(j + 1))
            if not lattice_eq(zj & _boundaries(D, j), bprime):
                return False, j, f"H_{j} of the stage does not inject into H_{j} D"
    return True, None, ""


def verify_approximation(result: Approximation) -> VerificationReport:
    """Subcomplex closure, ``f = i o f'``, cone exactness and stagewise conditions."""
    rep = VerificationReport()
    f, K, mods = result.f, result.horizon, result.modules
    D = f.target
    for j in range(1, K + 1):
        d = D.boundary(j)
        for v in mods[j].basis:
            if not member(mods[j - 1], d.apply(v)):
                rep.closure.fail(j, f"d of generator {list(v)} leaves D'_{j - 1}")
                break
    for j in range(K + 1):
        for c in f.at(j).columns():
            if not member(mods[j], c):
                rep.factorization.fail(j, f"f_{j} column {list(c)} is not in D'_{j}")
                break
    if rep.closure.ok and rep.factorization.ok and result.i is not None:
        for j in range(K + 1):
            if result.i.at(j) @ result.f_prime.at(j) != f.at(j):
                rep.factorization.fail(j, f"i_{j} f'_{j} != f_{j}")
                break
        n = cone_exactness(result.i, K)
        if n is not None:
            rep.cone.fail(n, f"cone of the inclusion is not exact in degree {n}")
    else:
        rep.cone.fail(0, "cone not evaluated: D' is not a subcomplex containing im f")
    for k in range(K + 1):
        ok, j, why = stage_conditions(D, mods, k)
        if not ok:
            rep.stagewise.fail(k, f"stage {k}: {why}")
            break
    for j in range(K + 1):
        hd = D.homology_rank(j)
        hdp = result.D_prime.homology_rank(j) if result.D_prime is not None else None
        rep.ranks.append({"degree": j, "rank_D": D.rank(j), "rank_D_prime": mods[j].rank, "H_D": hd, "H_D_prime": hdp})
    return rep

