"""End-to-end acceptance checks, one function per criterion.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
adds a ``PASS``/``FAIL`` line to the terminal summary; running this file
directly prints the same lines.
"""

import random
import sys
import time
from decimal import Decimal
from fractions import Fraction

import pytest

from hoelder.chain import ChainMap, ExplicitComplex, direct_sum, shift_complex
from hoelder.construct import builtin, greedy_certificate, one_over_m, rational_target, real_target, topology_builtin
from hoelder.corpus import random_chain_map, random_complex, random_matrix, random_ses
from hoelder.euler import chi_h, chi_via_chain_modules, rc_identity_check
from hoelder.fmodel import approximate, drop_step3_generator, verify_approximation
from hoelder.k0 import K0Ledger, check_relations, surjectivity_witness
from hoelder.linalg import IntMatrix, hermite_rows, kernel_lattice, rank_q
from hoelder.seq import (
    EventuallyPeriodic,
    ExplicitPrefix,
    Status,
    SummabilityConfig,
    absolute,
    cesaro_power_prefix,
    cesaro_prefix,
    rule,
    scale,
    seq_sum,
)
from hoelder.ses import additivity_identity_check, delta_seq, periodic_split, split_ses, times_two, validate_ses
from hoelder.ses import SesSpec

CFG = SummabilityConfig()
M = IntMatrix.from_rows


def _exact(C):
    r = chi_h(C, CFG).chi
    return r.value if r.status is Status.EXACT else None


def _builtins():
    return {
        "even_z": builtin("even_z"),
        "one_over_m(2)": one_over_m(2),
        "one_over_m(5)": one_over_m(5),
        "rational(-2/3)": rational_target(Fraction(-2, 3)),
        "rational(3/4)": rational_target(Fraction(3, 4)),
        "point": topology_builtin("point"),
        "wedge_all_spheres": topology_builtin("wedge_all_spheres"),
        "wedge_odd_spheres": topology_builtin("wedge_odd_spheres"),
        "zero": builtin("zero"),
    }


def criterion_1():
    t = time.perf_counter()
    alt = rule("alt_ceil_half")
    prefix = cesaro_prefix(alt, 7)
    want = [1, 0, Fraction(2, 3), 0, Fraction(3, 5), 0, Fraction(4, 7)]
    last = cesaro_power_prefix(alt, 2, 10_000)[-1]
    dt = time.perf_counter() - t
    ok = prefix == want and abs(last - Fraction(1, 4)) <= Fraction(1, 1000) and dt < 5
    return ok, f"k=2 at 10^4 = {float(last):.6f}, {dt:.2f}s"


def criterion_2():
    t = time.perf_counter()
    bad = []
    if _exact(builtin("even_z")) != Fraction(1, 2):
        bad.append("even_z")
    for m in range(1, 11):
        if _exact(one_over_m(m)) != Fraction(1, 2 * m):
            bad.append(f"one_over_m({m})")
    if _exact(topology_builtin("wedge_odd_spheres")) != Fraction(-1, 2):
        bad.append("wedge_odd_spheres")
    for name in ("wedge_all_spheres", "point", "zero"):
        if _exact(builtin(name)) != 0:
            bad.append(name)
    dt = time.perf_counter() - t
    return not bad and dt < 1, f"mismatches {bad}, {dt:.2f}s"


def criterion_3():
    bs = _builtins()
    chis = {k: _exact(C) for k, C in bs.items()}
    bad = []
    for a, C in bs.items():
        for m in range(4):
            if _exact(shift_complex(C, m)) != (-1) ** m * chis[a]:
                bad.append(f"{a}[{m}]")
        for b, D in bs.items():
            if _exact(direct_sum(C, D)) != chis[a] + chis[b]:
                bad.append(f"{a}+{b}")
    return not bad, f"{len(bs)} builtins, {len(bs) ** 2} pairs, failures {bad[:5]}"


def criterion_4():
    t = time.perf_counter()
    rng = random.Random(4)
    failures = 0
    for _ in range(200):
        S = random_ses(rng, rng.randint(0, 30), 5)
        if not validate_ses(S).ok or any(additivity_identity_check(S, 30)):
            failures += 1
    A = ExplicitComplex((1,), ())
    B = ExplicitComplex((1, 1), (M([[2]]),))
    C = ExplicitComplex((0, 1), (IntMatrix.zeros(0, 1),))
    once = SesSpec(A, B, C, (M([[1]]), IntMatrix.zeros(1, 0)), (IntMatrix.zeros(0, 1), M([[1]])))
    delta = delta_seq(once).prefix(10)
    dt = time.perf_counter() - t
    ok = failures == 0 and delta == [1] + [0] * 9 and not any(additivity_identity_check(once, 30)) and dt < 60
    return ok, f"200 sequences, {failures} failures, x2 delta {', '.join(map(str, delta[:4]))}, ..., {dt:.1f}s"


def criterion_5():
    rng = random.Random(5)
    failures = 0
    for _ in range(200):
        C = random_complex(rng, rng.randint(0, 12), 4)
        if any(rc_identity_check(C, C.top + 5)):
            failures += 1
    disagree = []
    for name, C in _builtins().items():
        if any(rc_identity_check(C, 200)):
            failures += 1
        chi = chi_h(C, CFG).chi
        if chi.status is Status.EXACT:
            via = chi_via_chain_modules(C, CFG)
            if via.status is not Status.EXACT or via.value != chi.value:
                disagree.append(name)
    return failures == 0 and not disagree, f"{failures} residual failures, disagreements {disagree}"


GREEDY_TARGETS = [
    ("1/2", Fraction(1, 2), 0, 1),
    ("2/3", Fraction(2, 3), 0, 1),
    ("sqrt2", Decimal("1.41421356237"), 1, 2),
    ("pi", Decimal("3.14159265359"), 3, 4),
]


def criterion_6():
    t = time.perf_counter()
    notes, ok = [], True
    for label, r, a, b in GREEDY_TARGETS:
        _, state = real_target(r, a, b)
        cert = greedy_certificate(state, 100_000)
        ok = ok and cert.holds and cert.crossings_by_1e4 >= 3
        notes.append(f"{label}: first {cert.first_crossing}, {cert.crossings_by_1e4} crossings by 1e4")
    dt = time.perf_counter() - t
    return ok and dt < 30, "; ".join(notes) + f"; {dt:.1f}s"


def _worked_examples():
    yield ChainMap(ExplicitComplex((1,), ()), ExplicitComplex((2,), ()), (M([[1], [0]]),)), 0
    yield ChainMap(ExplicitComplex((), ()), ExplicitComplex((2, 1), (M([[1], [0]]),)), ()), 1
    yield ChainMap(ExplicitComplex((1,), ()), ExplicitComplex((2, 1), (M([[0], [1]]),)), (M([[0], [1]]),)), 1


def criterion_7():
    t = time.perf_counter()
    failures = 0
    results = []
    for f, K in _worked_examples():
        res = approximate(f, K)
        results.append(res)
        failures += not verify_approximation(res).ok
    pruned = results[1].modules[0].rank < results[1].f.target.rank(0)
    rng = random.Random(7)
    detected = injected = 0
    for _ in range(60):
        f = random_chain_map(rng, rng.randint(0, 8), 4)
        res = approximate(f, rng.randint(0, f.target.top))
        failures += not verify_approximation(res).ok
        results.append(res)
    for res in results:
        if any(s.z_generators for s in res.stages):
            broken, _ = drop_step3_generator(res)
            injected += 1
            detected += not verify_approximation(broken).ok
    dt = time.perf_counter() - t
    ok = failures == 0 and pruned and injected > 0 and detected == injected and dt < 60
    return ok, f"63 instances, {failures} failures, pruning {pruned}, faults caught {detected}/{injected}, {dt:.1f}s"


def criterion_8():
    rng = random.Random(8)
    L = K0Ledger()
    for i in range(20):
        S = random_ses(rng, rng.randint(0, 8), 4)
        T = split_ses(S.A, S.C)
        for tag, X in (("A", S.A), ("B", S.B), ("C", S.C), ("D", T.B)):
            L.add(f"{tag}{i}", X)
        L.cofib(f"A{i}", f"B{i}", f"C{i}", S)
        L.cofib(f"A{i}", f"D{i}", f"C{i}", T, split=True)
    fam = times_two()
    for tag, X in zip("abc", (fam.A, fam.B, fam.C)):
        L.add(f"x2_{tag}", X)
    L.cofib("x2_a", "x2_b", "x2_c", fam)
    P = periodic_split(builtin("even_z"), topology_builtin("wedge_odd_spheres"))
    for tag, X in zip("abc", (P.A, P.B, P.C)):
        L.add(f"ps_{tag}", X)
    L.cofib("ps_a", "ps_b", "ps_c", P, split=True)
    for i, (x, y) in enumerate([(one_over_m(1), builtin("even_z")), (one_over_m(3), one_over_m(3)), (rational_target(Fraction(1, 2)), rational_target(Fraction(1, 2)))]):
        L.add(f"w{i}", x)
        L.add(f"v{i}", y)
        L.weq(f"w{i}", f"v{i}")
    for i in range(5):
        X = random_complex(rng, 5, 3)
        Y = ExplicitComplex(X.ranks, X.boundaries)
        L.add(f"qa{i}", X)
        L.add(f"qb{i}", Y)
        L.weq(f"qa{i}", f"qb{i}", ChainMap(X, Y, tuple(IntMatrix.identity(X.rank(n)) for n in range(6))), 5)
    rep = check_relations(L, CFG)
    q_rng = random.Random(88)
    rationals = []
    while len(rationals) < 20:
        q = Fraction(q_rng.randint(-9, 9), q_rng.randint(1, 9))
        if q not in rationals:
            rationals.append(q)
    exact_ok = all(
        (w := surjectivity_witness(q, cfg=CFG)).kind == "exact" and w.chi.status is Status.EXACT and w.chi.value == q
        for q in rationals
    )
    greedy_ok = all(
        (w := surjectivity_witness(r)).kind == "greedy" and w.greedy.holds
        for r in ("1.41421356237", "3.14159265359", "2.71828182846")
    )
    n = len(L.relations)
    return rep.ok and n >= 50 and exact_ok and greedy_ok, f"{n} relations ok={rep.ok}, rationals {exact_ok}, decimals {greedy_ok}"


def _rand_seq(rng):
    rat = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 4))  # noqa: E731
    if rng.random() < 0.5:
        return EventuallyPeriodic(tuple(rat() for _ in range(rng.randint(0, 3))), tuple(rat() for _ in range(rng.randint(1, 4))))
    return ExplicitPrefix(tuple(rat() for _ in range(rng.randint(0, 25))), "zero")


def criterion_9():
    t = time.perf_counter()
    rng = random.Random(9)
    seq_bad = 0
    n = 30
    for _ in range(1000):
        a, b = _rand_seq(rng), _rand_seq(rng)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        k = rng.randint(0, 3)
        Ma, Mb = cesaro_power_prefix(a, k, n), cesaro_power_prefix(b, k, n)
        lin = cesaro_power_prefix(seq_sum(scale(c, a), b), k, n) == [c * x + y for x, y in zip(Ma, Mb)]
        lo = EventuallyPeriodic((), (0,))
        hi = seq_sum(a, absolute(b))  # termwise >= a
        mono = all(x <= y for x, y in zip(Ma, cesaro_power_prefix(hi, k, n)))
        dom = all(abs(x) <= y for x, y in zip(Ma, cesaro_power_prefix(absolute(a), k, n)))
        nonneg = all(y >= 0 for y in cesaro_power_prefix(seq_sum(lo, absolute(b)), k, n))
        seq_bad += not (lin and mono and dom and nonneg)
    lin_bad = 0
    for _ in range(1000):
        r, c = rng.randint(0, 6), rng.randint(0, 6)
        m = random_matrix(rng, r, c, -3, 3, 0.6)
        K = kernel_lattice(m)
        rank = rank_q(m)
        kernel_ok = K.rank == c - rank and all(not any(m.apply(v)) for v in K.basis)
        H = hermite_rows(m.entries, c)
        hnf_ok = len(H) == rank and hermite_rows(H, c) == H
        # unimodular row operation leaves the HNF unchanged
        rows = [list(x) for x in m.entries]
        if r >= 2:
            i, j = rng.sample(range(r), 2)
            s = rng.randint(-3, 3)
            rows[i] = [x + s * y for x, y in zip(rows[i], rows[j])]
            rows[0], rows[-1] = rows[-1], rows[0]
        hnf_ok = hnf_ok and hermite_rows(rows, c) == H
        lin_bad += not (kernel_ok and hnf_ok)
    dt = time.perf_counter() - t
    return seq_bad == 0 and lin_bad == 0 and dt < 60, f"seq failures {seq_bad}/1000, linalg failures {lin_bad}/1000, {dt:.1f}s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(check, request):
    ok, detail = check()
    line = f"{'PASS' if ok else 'FAIL'} {check.__name__.replace('_', ' ')}: {detail}"
    print(line)
    request.config._acceptance_lines = getattr(request.config, "_acceptance_lines", []) + [line]
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {check.__name__.replace('_', ' ')}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
