import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hoelder.chain import ExplicitComplex, HomologyOnlyComplex, direct_sum, rank_bundle, shift_complex
from hoelder.construct import builtin, rational_target
from hoelder.corpus import random_complex
from hoelder.euler import (
    PreconditionError,
    chi_h,
    chi_h_shift_dsum_laws,
    chi_via_chain_modules,
    rc_identity_check,
)
from hoelder.linalg import IntMatrix
from hoelder.seq import EventuallyPeriodic, RuleBased, Status, Verdict, rule

F = Fraction


def test_even_degree_complex():
    rep = chi_h(builtin("even_z"))
    assert rep.chi.status is Status.EXACT
    assert rep.chi.value == F(1, 2)
    assert rep.preadmissible is Verdict.TRUE
    assert rep.admissible is Verdict.TRUE


def test_one_over_three():
    assert chi_h(builtin("one_over_m", m=3)).chi.value == F(1, 6)


def test_bounded_complex_is_zero():
    C = ExplicitComplex((3, 5, 2), (IntMatrix.zeros(3, 5), IntMatrix.zeros(5, 2)))
    r = chi_h(C).chi
    assert r.status is Status.EXACT and r.value == 0


def test_shift_law_on_even_degree_complex():
    law = chi_h_shift_dsum_laws(builtin("even_z"), None, 1)
    assert law.ok
    assert law.items[0]["lhs"] == "-1/2"


def test_chain_level_chi_even_degree_complex():
    C = builtin("even_z")
    assert rank_bundle(C).rc.prefix(10) == rank_bundle(C).hc.prefix(10)
    assert chi_via_chain_modules(C).value == F(1, 2)


def test_chain_level_chi_needs_chain_modules():
    C = HomologyOnlyComplex(EventuallyPeriodic((), (1, 0)))
    with pytest.raises(TypeError):
        chi_via_chain_modules(C)
    with pytest.raises(TypeError):
        rc_identity_check(C, 5)


def test_homology_only_with_unbounded_ranks():
    # hc = 1, -1, 2, -2, ... : H-limit 1/4 exists but |hc| is not H-o(n)
    C = HomologyOnlyComplex(RuleBased(lambda n: (n + 1) // 2))
    rep = chi_h(C)
    assert rep.admissible is not Verdict.TRUE


def test_laws_need_exact_values():
    C = HomologyOnlyComplex(rule("harmonic"))
    with pytest.raises(PreconditionError):
        chi_h_shift_dsum_laws(C, None, 1)


def test_report_serialises():
    d = chi_h(builtin("even_z")).to_dict()
    assert d["chi"]["value"] == "1/2" and d["admissible"] == "true"


def test_quasi_isomorphic_complexes_same_report():
    # C and C + (Z -id-> Z) have the same homology
    C = rational_target(F(3, 4))
    acyclic = ExplicitComplex((1, 1), (IntMatrix.identity(1),))
    D = direct_sum(C, acyclic)
    assert chi_h(C).to_dict() == chi_h(D).to_dict()


BUILTIN_CASES = [
    ("even_z", {}),
    ("one_over_m", {"m": 2}),
    ("one_over_m", {"m": 5}),
    ("rational", {"q": "-3/7"}),
    ("point", {}),
    ("wedge_all_spheres", {}),
    ("wedge_odd_spheres", {}),
    ("zero", {}),
]


@pytest.mark.parametrize("name,params", BUILTIN_CASES)
def test_rc_identity_on_builtins(name, params):
    C = builtin(name, **params)
    assert all(r == 0 for r in rc_identity_check(C, 500))
    assert chi_via_chain_modules(C).value == chi_h(C).chi.value


@given(st.integers(0, 10_000))
def test_rc_identity_random(seed):
    rng = random.Random(seed)
    C = random_complex(rng, rng.randint(0, 12))
    assert all(r == 0 for r in rc_identity_check(C, C.top + 3))


@given(st.integers(0, 10_000))
def test_bounded_random_complexes_are_zero(seed):
    C = random_complex(random.Random(seed), 6)
    assert chi_h(C).chi.value == 0


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("a,b", [(x, y) for x in BUILTIN_CASES for y in BUILTIN_CASES][::5])
def test_shift_and_sum_laws(a, b, m):
    C, D = builtin(a[0], **a[1]), builtin(b[0], **b[1])
    assert chi_h_shift_dsum_laws(C, D, m).ok
    assert chi_h(shift_complex(C, m)).chi.value == (-1) ** m * chi_h(C).chi.value
