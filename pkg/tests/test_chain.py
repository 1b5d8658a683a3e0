import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hoelder.chain import (
    ChainMap,
    ExplicitComplex,
    HomologyOnlyComplex,
    PeriodicComplex,
    classical_euler,
    cone_exactness,
    direct_sum,
    mapping_cone,
    materialize,
    rank_bundle,
    shift_complex,
    truncate_below,
    validate,
    zero_complex,
    zero_differential_periodic,
)
from hoelder.construct import BUILTINS, builtin
from hoelder.corpus import random_complex, random_matrix
from hoelder.linalg import IntMatrix, kernel_lattice
from hoelder.seq import EventuallyPeriodic

M = IntMatrix.from_rows


def _two_step():
    # Z^2 <-M- Z^2 <-N- Z^2 <-M- ...  with MN = NM = 0
    m = M([[1, 0], [0, 0]])
    n = M([[0, 0], [0, 1]])
    return PeriodicComplex((), (), (2, 2), (n, m))


def random_periodic(rng: random.Random) -> PeriodicComplex:
    """Random preperiod and a repeat block whose seam map is zero."""
    p, q = rng.randint(0, 3), rng.randint(1, 4)
    pre = random_complex(rng, p - 1, 3) if p else ExplicitComplex((), ())
    rep = random_complex(rng, q - 1, 3)
    seam = IntMatrix.zeros(rep.rank(q - 1), rep.rank(0))
    entry = None
    if p:
        # entry map: columns are cycles of the last preperiod degree
        kb = kernel_lattice(pre.boundary(p - 1)).matrix() if p > 1 else IntMatrix.identity(pre.rank(0))
        entry = kb @ random_matrix(rng, kb.cols, rep.rank(0), -1, 1)
        # the first copy's offset-1 boundary must compose to zero with it
        if q > 1 and not (entry @ rep.boundary(1)).is_zero():
            entry = IntMatrix.zeros(pre.rank(p - 1), rep.rank(0))
    return PeriodicComplex(
        pre.ranks,
        tuple(pre.boundary(d) for d in range(1, p)),
        rep.ranks,
        (seam,) + tuple(rep.boundary(o) for o in range(1, q)),
        entry,
    )


# -- reference values -------------------------------------------------------


def test_even_degree_complex_hc():
    C = builtin("even_z")
    assert rank_bundle(C).hc.prefix(6) == [1, 0, 1, 0, 1, 0]


def test_one_over_three_hc_period():
    hc = rank_bundle(builtin("one_over_m", m=3)).hc
    assert isinstance(hc, EventuallyPeriodic)
    assert list(hc.period) == [1, 0, 0, 0, 0, 0]


def test_shift_flips_hc():
    hc = rank_bundle(shift_complex(builtin("even_z"), 1)).hc
    assert hc.prefix(8) == [0, -1, 0, -1, 0, -1, 0, -1]


def test_sign_convention():
    # term n is degree n-1 with sign (-1)^(n-1)
    C = ExplicitComplex((2, 3, 5), (IntMatrix.zeros(2, 3), IntMatrix.zeros(3, 5)))
    b = rank_bundle(C)
    assert b.rc.prefix(4) == [2, -3, 5, 0]
    assert b.hc.prefix(4) == [2, -3, 5, 0]


def test_boundary_ranks_and_homology():
    d = M([[2]])
    C = ExplicitComplex((1, 1), (d,))
    assert C.homology_rank(0) == 0 and C.homology_rank(1) == 0
    b = rank_bundle(C)
    assert b.bc.prefix(3) == [1, 0, 0]


def test_two_step_periodic():
    C = _two_step()
    assert validate(C).ok
    assert [C.homology_rank(d) for d in range(6)] == [1, 0, 0, 0, 0, 0]


# -- validation -------------------------------------------------------------


def test_validate_catches_nonzero_square():
    d1 = M([[1]])
    d2 = M([[1]])
    rep = validate(ExplicitComplex((1, 1, 1), (d1, d2)))
    assert not rep.ok and rep.first_failure == ("dd", 1, 2)


def test_validate_catches_shape():
    rep = validate(ExplicitComplex((1, 2), (M([[1]]),)))
    assert not rep.ok and rep.first_failure[0] == "shape"


def test_validate_catches_seam():
    m = M([[1, 0], [0, 0]])
    bad = PeriodicComplex((), (), (2, 2), (m, m))
    rep = validate(bad)
    assert not rep.ok and rep.first_failure[0] == "dd"


def test_validate_counts():
    assert not validate(ExplicitComplex((1,), (M([[1]]),))).ok


def test_homology_only():
    C = HomologyOnlyComplex(EventuallyPeriodic((), (1, 0)))
    assert not C.has_chain_modules
    b = rank_bundle(C)
    assert b.bc is None and b.rc is None
    assert b.hc.prefix(4) == [1, 0, 1, 0]
    with pytest.raises(TypeError):
        materialize(C, 3)


def test_zero_complex():
    assert rank_bundle(zero_complex()).hc.prefix(3) == [0, 0, 0]


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_validate(name):
    params = {"one_over_m": {"m": 2}, "rational": {"q": "3/4"}}.get(name, {})
    assert validate(builtin(name, **params)).ok


# -- properties -------------------------------------------------------------


@given(st.integers(0, 10_000))
def test_random_complexes_valid_and_nonnegative(seed):
    rng = random.Random(seed)
    C = random_complex(rng, rng.randint(0, 8))
    assert validate(C).ok
    for d in range(C.top + 2):
        assert C.homology_rank(d) >= 0


@given(st.integers(0, 10_000), st.integers(1, 9))
def test_truncated_euler_characteristics_agree(seed, n):
    rng = random.Random(seed)
    C = random_complex(rng, 9)
    T = truncate_below(C, n)
    assert classical_euler(C, n) == sum((-1) ** k * T.homology_rank(k) for k in range(n))


@given(st.integers(0, 10_000))
def test_periodic_symbolic_hc_matches_degreewise(seed):
    rng = random.Random(seed)
    C = random_periodic(rng)
    assert validate(C).ok
    X = materialize(C, 61)
    hc = rank_bundle(C).hc.prefix(60)
    direct = [(-1) ** d * X.homology_rank(d) for d in range(60)]
    assert hc == direct


def test_two_step_symbolic_matches_degreewise():
    C = _two_step()
    X = materialize(C, 61)
    assert rank_bundle(C).hc.prefix(60) == [(-1) ** d * X.homology_rank(d) for d in range(60)]


@given(st.integers(0, 10_000))
def test_direct_sum_adds_sequences(seed):
    rng = random.Random(seed)
    C, D = random_periodic(rng), random_periodic(rng)
    S = direct_sum(C, D)
    assert validate(S).ok
    bs, bc, bd = rank_bundle(S), rank_bundle(C), rank_bundle(D)
    for attr in ("hc", "bc", "rc"):
        a, b, c = (getattr(x, attr).prefix(40) for x in (bs, bc, bd))
        assert a == [x + y for x, y in zip(b, c)]


@given(st.integers(0, 10_000), st.integers(0, 3))
def test_shift_moves_and_signs(seed, m):
    rng = random.Random(seed)
    C = random_periodic(rng)
    S = shift_complex(C, m)
    assert validate(S).ok
    a, b = rank_bundle(S).hc.prefix(40 + m), rank_bundle(C).hc.prefix(40)
    assert a[:m] == [0] * m
    assert a[m:] == [(-1) ** m * x for x in b]


def test_zero_differential_periodic_shapes():
    C = zero_differential_periodic((1, 2), (0, 3, 1))
    assert validate(C).ok
    assert [C.rank(d) for d in range(7)] == [1, 2, 0, 3, 1, 0, 3]


# -- chain maps and cones ---------------------------------------------------


def test_identity_is_quasi_isomorphism():
    rng = random.Random(5)
    C = random_complex(rng, 5)
    f = ChainMap(C, C, tuple(IntMatrix.identity(C.rank(n)) for n in range(6)))
    assert f.check(5).ok
    assert cone_exactness(f, 5) is None


def test_multiplication_by_two_is_not():
    C = ExplicitComplex((1,), ())
    f = ChainMap(C, C, (M([[2]]),))
    assert f.check(0).ok
    assert cone_exactness(f, 0) == 0


def test_non_chain_map_detected():
    C = ExplicitComplex((1, 1), (M([[1]]),))
    f = ChainMap(C, C, (M([[1]]), M([[0]])))
    assert not f.check(1).ok


def test_cone_is_a_complex():
    rng = random.Random(11)
    C = random_complex(rng, 4)
    f = ChainMap(C, C, tuple(IntMatrix.identity(C.rank(n)) for n in range(5)))
    assert validate(mapping_cone(f, 4)).ok
