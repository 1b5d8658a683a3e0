import random
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hoelder.chain import ChainMap, ExplicitComplex, direct_sum
from hoelder.construct import builtin, one_over_m, rational_target
from hoelder.corpus import random_ses
from hoelder.euler import PreconditionError
from hoelder.k0 import FormalSum, K0Ledger, check_relations, chi_on_class, surjectivity_witness, validate_ledger
from hoelder.linalg import IntMatrix
from hoelder.seq import Status
from hoelder.ses import periodic_split, split_ses, times_two


def test_formal_sum_arithmetic():
    s = FormalSum.of("a", 2) + FormalSum.of("b") - FormalSum.of("a", 2)
    assert dict(s) == {"b": 1}
    assert dict(3 * FormalSum(a=1, b=-1)) == {"a": 3, "b": -3}
    assert dict(-FormalSum(a=2)) == {"a": -2}


def test_class_of_twice_even(cfg):
    L = K0Ledger()
    L.add("e", builtin("even_z"))
    r = chi_on_class(FormalSum.of("e", 2), L, cfg)
    assert r.exact and r.value == 1


def test_duplicate_generator_name():
    L = K0Ledger()
    L.add("e", builtin("even_z"))
    with pytest.raises(KeyError):
        L.add("e", builtin("even_z"))


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_chi_on_class_is_additive(x, y, z):
    L = K0Ledger()
    L.add("a", one_over_m(1))
    L.add("b", one_over_m(3))
    L.add("c", rational_target(Fraction(-2, 5)))
    s, t = FormalSum(a=x, b=y), FormalSum(b=z, c=x - y)
    lhs = chi_on_class(s + t, L).value
    assert lhs == chi_on_class(s, L).value + chi_on_class(t, L).value
    assert lhs == x * Fraction(1, 2) + (y + z) * Fraction(1, 6) - (x - y) * Fraction(2, 5)


def test_weq_by_equal_hc_and_by_map(cfg):
    L = K0Ledger()
    L.add("m1", one_over_m(1))
    L.add("ev", builtin("even_z"))
    L.weq("m1", "ev")
    X = ExplicitComplex((1, 1), (IntMatrix.identity(1),))
    Y = ExplicitComplex((), ())
    L.add("X", X)
    L.add("Y", Y)
    L.weq("X", "Y", ChainMap(X, Y, (IntMatrix.zeros(0, 1), IntMatrix.zeros(0, 1))), 1)
    assert validate_ledger(L) == []
    assert check_relations(L, cfg).ok


def test_weq_with_different_homology_fails(cfg):
    L = K0Ledger()
    L.add("ev", builtin("even_z"))
    L.add("half", rational_target(Fraction(1, 2)))
    L.weq("ev", "half")
    rep = check_relations(L, cfg)
    assert not rep.ok
    assert "differ" in rep.records[0]["problem"]


def test_weq_map_not_quasi_iso(cfg):
    P = ExplicitComplex((1,), ())
    L = K0Ledger()
    L.add("p", P)
    L.add("q", P2 := ExplicitComplex((1,), ()))
    L.weq("p", "q", ChainMap(P, P2, (IntMatrix.from_rows([[2]]),)), 0)
    assert not check_relations(L, cfg).ok


def test_cofibrations(cfg):
    L = K0Ledger()
    fam = times_two()
    for name, X in zip("ABC", (fam.A, fam.B, fam.C)):
        L.add(name, X)
    L.cofib("A", "B", "C", fam)
    ev, wo = builtin("even_z"), builtin("wedge_odd_spheres")
    P = periodic_split(ev, wo)
    L.add("ev", P.A)
    L.add("sum", P.B)
    L.add("wo", P.C)
    L.cofib("ev", "sum", "wo", P, split=True)
    rep = check_relations(L, cfg)
    assert rep.ok, rep.to_dict()
    assert all(r["weak_admissible"] == "true" for r in rep.records)


def test_cofib_with_wrong_members(cfg):
    rng = random.Random(1)
    S = random_ses(rng, 4)
    L = K0Ledger()
    L.add("A", S.A)
    L.add("B", S.B)
    L.add("C", S.A)
    L.cofib("A", "B", "C", S)
    assert not check_relations(L, cfg).ok


def test_inconclusive_generator_is_reported(cfg):
    from hoelder.construct import real_target

    C, _ = real_target(Fraction(1, 3), 0, 1)
    L = K0Ledger()
    L.add("g", C)
    with pytest.raises(PreconditionError):
        chi_on_class(FormalSum.of("g"), L, cfg)


def test_random_split_ledger(cfg):
    rng = random.Random(7)
    L = K0Ledger()
    for i in range(25):
        S = random_ses(rng, rng.randint(0, 6))
        T = split_ses(S.A, S.C)
        for tag, X in (("A", S.A), ("B", S.B), ("C", S.C), ("D", T.B)):
            L.add(f"{tag}{i}", X)
        L.cofib(f"A{i}", f"B{i}", f"C{i}", S)
        L.cofib(f"A{i}", f"D{i}", f"C{i}", T, split=True)
    rep = check_relations(L, cfg)
    assert rep.ok and len(rep.records) == 50


@pytest.mark.parametrize("q", [Fraction(p, r) for p, r in [(1, 2), (-1, 2), (3, 4), (2, 3), (-5, 7), (7, 3), (0, 1), (4, 1)]])
def test_rational_witnesses_exact(q, cfg):
    w = surjectivity_witness(q, cfg=cfg)
    assert w.kind == "exact"
    assert w.chi.status is Status.EXACT and w.chi.value == q


def test_half_witness_is_even_degrees(cfg):
    w = surjectivity_witness("1/2", cfg=cfg)
    assert w.complex.rank(0) == 1 and w.complex.rank(1) == 0 and w.complex.rank(2) == 1


@pytest.mark.parametrize("r", ["1.41421356237", "3.14159265359", "-0.7"])
def test_decimal_witnesses_greedy(r):
    w = surjectivity_witness(r, n_max=20_000)
    assert w.kind == "greedy"
    assert w.target == Fraction(Decimal(r))
    assert w.greedy.holds and w.greedy.crossings_by_1e4 >= 3


def test_direct_sum_class(cfg):
    L = K0Ledger()
    a, b = one_over_m(2), one_over_m(2)
    L.add("a", a)
    L.add("b", b)
    L.add("ab", direct_sum(a, b))
    assert chi_on_class(FormalSum(ab=1, a=-1, b=-1), L, cfg).value == 0
