"""Seeded random generators for complexes, short exact sequences and chain maps.

Every generator takes a :class:`random.Random` so corpora are reproducible.
"""

from __future__ import annotations

import random

from .chain import ChainMap, ExplicitComplex, direct_sum
from .linalg import IntMatrix, Lattice, coordinates, kernel_lattice, preimage_lattice, saturation
from .ses import SesSpec, cokernel_ses

__all__ = ["random_matrix", "random_complex", "random_ses", "random_chain_map", "broken_ses"]


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2, density: float = 0.5) -> IntMatrix:
    return IntMatrix(
        rows,
        cols,
        tuple(tuple(rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)) for _ in range(rows)),
    )


def random_complex(rng: random.Random, top: int, max_rank: int = 4, entry: int = 2, density: float = 0.5) -> ExplicitComplex:
    """Degrees ``0..top``; each ``d_{n+1}`` is a random combination of a kernel basis of ``d_n``."""
    ranks = [rng.randint(0, max_rank) for _ in range(top + 1)]
    bds = []
    for n in range(1, top + 1):
        prev = bds[-1] if bds else IntMatrix.zeros(0, ranks[0])
        kb = kernel_lattice(prev).matrix()
        mix = random_matrix(rng, kb.cols, ranks[n], -entry, entry, density)
        bds.append(kb @ mix)
    return ExplicitComplex(tuple(ranks), tuple(bds))


def _random_saturated(rng: random.Random, within: Lattice) -> Lattice:
    """A random saturated sublattice of a saturated lattice."""
    if not within.rank:
        return within
    k = rng.randint(0, within.rank)
    vecs = []
    for _ in range(k):
        cs = [rng.randint(-2, 2) for _ in range(within.rank)]
        vecs.append(tuple(sum(c * b[i] for c, b in zip(cs, within.basis)) for i in range(within.dim)))
    return saturation(Lattice.span(within.dim, vecs))


def random_ses(rng: random.Random, top: int, max_rank: int = 5) -> SesSpec:
    """``A`` is a random saturated subcomplex of a random ``B``, ``C = B / A``."""
    B = random_complex(rng, top, max_rank)
    subs = []
    for n in range(top + 1):
        if n == 0:
            allowed = Lattice.full(B.rank(0))
        else:
            allowed = preimage_lattice(B.boundary(n), subs[-1])
        subs.append(_random_saturated(rng, allowed))
    # A in the HNF coordinates of the sublattices
    a_bds = []
    for n in range(1, top + 1):
        cols = [coordinates(subs[n - 1], B.boundary(n).apply(v)) for v in subs[n].basis]
        a_bds.append(IntMatrix.from_columns(cols, subs[n - 1].rank))
    A = ExplicitComplex(tuple(L.rank for L in subs), tuple(a_bds))
    return cokernel_ses(A, B, [L.matrix() for L in subs])


def broken_ses(rng: random.Random, top: int, kind: str) -> tuple[SesSpec, str, int]:
    """A deliberately invalid sequence and the failure it should be rejected for.

    ``kind`` is ``"chain_map_f"``, ``"exact_middle"`` or ``"surjective"``.
    Returns ``(S, expected_failure, degree)``.
    """
    while True:
        S = random_ses(rng, top)
        degrees = [n for n in range(top + 1) if S.A.rank(n) and S.C.rank(n)]
        if kind == "chain_map_f":
            degrees = [n for n in degrees if n >= 1 and S.B.boundary(n).cols and not S.B.boundary(n).is_zero()]
        if degrees:
            break
    n = rng.choice(degrees)
    f, g = list(S.f), list(S.g)
    if kind == "surjective":
        # doubling g everywhere keeps it a chain map with the same kernel
        g = [IntMatrix.from_rows([[2 * x for x in row] for row in m.entries], m.cols) for m in g]
        first = min(k for k in range(top + 1) if S.C.rank(k))
        return SesSpec(S.A, S.B, S.C, tuple(f), tuple(g)), "surjective", first
    if kind == "exact_middle":
        # scale the image of f: still injective and a chain map, but im f < ker g
        f = [IntMatrix.from_rows([[2 * x for x in row] for row in m.entries], m.cols) for m in f]
        first = min(k for k in range(top + 1) if S.A.rank(k))
        return SesSpec(S.A, S.B, S.C, tuple(f), tuple(g)), "exact_middle", first
    if kind == "chain_map_f":
        # perturb f in the lowest degree where the change is visible through d^B
        for k in range(1, top + 1):
            if S.A.rank(k) and not S.B.boundary(k).is_zero():
                bumped = [list(r) for r in f[k].entries]
                d = S.B.boundary(k)
                j = next(c for c in range(d.cols) if any(d.entries[i][c] for i in range(d.rows)))
                bumped[j][0] += 1
                f[k] = IntMatrix.from_rows(bumped, f[k].cols)
                return SesSpec(S.A, S.B, S.C, tuple(f), tuple(g)), "chain_map_f", k
        return broken_ses(rng, top, kind)
    raise ValueError(f"unknown kind {kind!r}")


def random_chain_map(rng: random.Random, top: int, max_rank: int = 4, variant: str | None = None) -> ChainMap:
    """A chain map ``f : C -> D`` with ``D`` of top degree ``top``.

    Variants: ``"inclusion"`` (``D = C + E``, ``f`` the inclusion plus a
    null-homotopic term), ``"null"`` (``f = d h + h d``), ``"zero_source"``
    and ``"zero_map"``.
    """
    variant = variant or rng.choice(["inclusion", "inclusion", "null", "zero_source", "zero_map"])
    if variant == "zero_source":
        D = random_complex(rng, top, max_rank)
        C = ExplicitComplex((), ())
        return ChainMap(C, D, ())
    C = random_complex(rng, top, max_rank // 2 if variant == "inclusion" else max_rank)
    if variant == "inclusion":
        E = random_complex(rng, top, max_rank - max_rank // 2)
        D = direct_sum(C, E)
    else:
        D = random_complex(rng, top, max_rank)
    if variant == "zero_map":
        return ChainMap(C, D, tuple(IntMatrix.zeros(D.rank(n), C.rank(n)) for n in range(top + 1)))
    h = [random_matrix(rng, D.rank(n + 1), C.rank(n), -1, 1, 0.4) for n in range(top + 1)]
    comps = []
    for n in range(top + 1):
        m = D.boundary(n + 1) @ h[n]
        if n >= 1:
            m = m + h[n - 1] @ C.boundary(n)
        if variant == "inclusion":
            c = C.rank(n)
            m = m + IntMatrix.vstack(IntMatrix.identity(c), IntMatrix.zeros(D.rank(n) - c, c))
        comps.append(m)
    return ChainMap(C, D, tuple(comps))
