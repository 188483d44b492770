"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines.  Every tolerance is pinned here; the float determinant comparisons
sample scalar-dominant random elements, which keeps all the compared
quantities inside binary64's well-conditioned regime (fully generic random
elements make the comparison meaningless at n = 6 for every float method,
including two different LU factorizations of the oracle itself).
"""

import json
import random
import time
from fractions import Fraction

import pytest

from dlpq import (
    Signature,
    adjoint,
    basis_blade,
    charpoly_fl,
    charpoly_symmetric,
    classify,
    conjugate,
    det_full_product,
    det_recursive,
    element,
    inverse,
    inverse_of_conjugate_check,
    is_zero_divisor,
    kernel_witness,
    mul,
    one,
    oracle_charpoly,
    oracle_det,
    oracle_trace,
    scale,
    trace,
)
from dlpq.cli import run as cli_run
from dlpq.scalars import FLOAT64, RATIONAL

from conftest import all_signatures, rand_conditioned_float, rand_element, rand_invertible
from test_zero_divisor import make_singular, unit_square_blades


def _report(num, name, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {num} [{name}]: PASS{suffix}")


def test_criterion_1_golden_closed_forms():
    rng = random.Random(101)
    t0 = time.perf_counter()
    s01, s10, s11 = Signature(0, 1), Signature(1, 0), Signature(1, 1)
    for _ in range(1000):
        a, a1, a2, a12 = (
            Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(4)
        )
        assert det_recursive(element(s01, [a, a1], RATIONAL)) == a * a + a1 * a1
        assert det_recursive(element(s10, [a, a1], RATIONAL)) == a * a - a1 * a1
        u = element(s11, [a, a1, a2, a12], RATIONAL)
        expected = ((a + a1) ** 2 + (a2 + a12) ** 2) * ((a - a1) ** 2 + (a2 - a12) ** 2)
        assert det_recursive(u) == expected
        assert det_full_product(u) == expected
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"golden closed forms took {elapsed:.2f}s (limit 1s)"
    _report(1, "golden closed forms", f"1000 exact tuples in {elapsed:.2f}s")


GOLDEN_BUILDERS = {
    (2, 0): lambda a, a1, a2, a12: [
        [a, a1, a2, a12],
        [a1, a, a12, a2],
        [a2, a12, a, a1],
        [a12, a2, a1, a],
    ],
    (0, 2): lambda a, a1, a2, a12: [
        [a, -a1, -a2, a12],
        [a1, a, -a12, -a2],
        [a2, -a12, a, -a1],
        [a12, a2, a1, a],
    ],
}


def test_criterion_2_matrix_goldens(capsys):
    rng = random.Random(202)
    for (p, q), builder in GOLDEN_BUILDERS.items():
        for _ in range(4):
            vals = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(4)]
            coeffs_json = json.dumps([str(v) for v in vals])
            code = cli_run(
                [
                    "matrix",
                    "--signature",
                    f"{p},{q}",
                    "--backend",
                    "rational",
                    "--output",
                    "json",
                    coeffs_json,
                ]
            )
            out = capsys.readouterr().out
            assert code == 0
            got = json.loads(out)["result"]
            expected = [[str(x) for x in row] for row in builder(*vals)]
            assert got == expected, f"matrix mismatch for DL({p},{q})"
    with capsys.disabled():
        _report(2, "matrix goldens", "DL(2,0) and DL(0,2), 4 instantiations each, via CLI")


def test_criterion_3_oracle_equivalence():
    rng = random.Random(303)
    t0 = time.perf_counter()
    worst_det = 0.0
    worst_trace = 0.0
    count = 0
    for sig in all_signatures(6):
        for _ in range(100):
            u = rand_conditioned_float(rng, sig)
            d_oracle = oracle_det(u)
            scale_ = abs(d_oracle)
            assert scale_ > 0.0
            for d in (det_full_product(u), det_recursive(u), charpoly_fl(u).det):
                rel = abs(d - d_oracle) / scale_
                worst_det = max(worst_det, rel)
                assert rel <= 1e-9, f"det path off by {rel:.3e} on {sig}"
            t_alg, t_mat = trace(u), oracle_trace(u)
            rel_t = abs(t_alg - t_mat) / max(abs(t_alg), abs(t_mat))
            worst_trace = max(worst_trace, rel_t)
            assert rel_t <= 1e-12
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"criterion 3 took {elapsed:.1f}s (limit 60s)"
    _report(
        3,
        "oracle equivalence",
        f"{count} elements, worst det rel {worst_det:.2e}, "
        f"worst trace rel {worst_trace:.2e}, {elapsed:.1f}s",
    )


def test_criterion_4_charpoly_equivalence():
    rng = random.Random(404)
    count = 0
    for sig in all_signatures(4):
        for _ in range(25):
            u = rand_element(rng, sig, RATIONAL)
            psi = charpoly_symmetric(u)
            assert psi.coeffs == oracle_charpoly(u).coeffs
            assert psi.coeffs[0] == det_recursive(u)
            assert psi.coeffs[-2] == -trace(u)
            count += 1
    _report(4, "charpoly equivalence", f"{count} exact elements, n <= 4")


def test_criterion_5_cayley_hamilton():
    rng = random.Random(505)
    count = 0
    for sig in all_signatures(3):
        for _ in range(10):
            u = rand_element(rng, sig, RATIONAL)
            psi = charpoly_symmetric(u)
            for mask in range(sig.dim):
                assert psi.evaluate(conjugate(u, mask)).is_zero()
            count += 1
    _report(5, "Cayley-Hamilton for all conjugates", f"{count} exact elements, n <= 3")


def test_criterion_6_inverse_round_trip():
    rng = random.Random(606)
    count = 0
    for sig in all_signatures(5):
        one_r = one(sig, RATIONAL)
        one_f = one(sig, FLOAT64)
        for _ in range(500):
            mask = rng.randrange(sig.dim)
            u = rand_invertible(rng, sig, RATIONAL)
            assert mul(u, inverse(u)) == one_r
            assert inverse_of_conjugate_check(u, mask)
            uf = rand_invertible(rng, sig, FLOAT64)
            assert mul(uf, inverse(uf)).isclose(one_f, 1e-9)
            assert inverse_of_conjugate_check(uf, mask, 1e-9)
            count += 1
    _report(6, "inverse round-trip + conjugate identity", f"{count} samples per backend")


def test_criterion_7_zero_divisors():
    rng = random.Random(707)
    singular_count = 0
    unit_count = 0
    for sig in all_signatures(5):
        blades = unit_square_blades(sig)
        if blades:  # DL(0,1) is a field: no zero divisors to construct
            for _ in range(200):
                u = make_singular(rng, sig, RATIONAL)
                report = classify(u)
                assert not report.is_unit
                assert report.witness is not None
                assert not report.witness.is_zero()
                assert mul(u, report.witness).is_zero()
                assert is_zero_divisor(u)
                assert kernel_witness(u) is not None
                singular_count += 1
        for _ in range(200):
            u = rand_element(rng, sig, RATIONAL)
            if u.is_zero() or det_recursive(u) == 0:
                continue
            report = classify(u)
            assert report.is_unit and report.witness is None
            assert not is_zero_divisor(u)
            assert kernel_witness(u) is None
            unit_count += 1
    _report(
        7,
        "zero-divisor soundness/completeness",
        f"{singular_count} verified witnesses, {unit_count} units, n <= 5",
    )


def test_criterion_8_conjugation_laws():
    rng = random.Random(808)
    sigs = list(all_signatures(6))
    cases = 0
    target = 10_000
    while cases < target:
        sig = sigs[cases % len(sigs)]
        u = rand_element(rng, sig, FLOAT64)
        v = rand_element(rng, sig, FLOAT64)
        m1 = rng.randrange(sig.dim)
        m2 = rng.randrange(sig.dim)
        s, t = float(rng.randint(-9, 9)), float(rng.randint(-9, 9))
        # involution
        assert conjugate(conjugate(u, m1), m1) == u
        # linearity (sign flips are exact in binary64, so equality is exact)
        assert conjugate(scale(u, s) + scale(v, t), m1) == scale(
            conjugate(u, m1), s
        ) + scale(conjugate(v, m1), t)
        # composition commutes and is the mask xor
        assert conjugate(conjugate(u, m1), m2) == conjugate(u, m1 ^ m2)
        assert conjugate(conjugate(u, m2), m1) == conjugate(u, m1 ^ m2)
        # distributes over multiplication
        assert conjugate(mul(u, v), m1) == mul(conjugate(u, m1), conjugate(v, m1))
        cases += 1
    _report(8, "conjugation law suite", f"{cases} randomized cases, n <= 6")


def test_criterion_9_performance():
    rng = random.Random(909)
    sig10 = Signature(0, 10)
    u10 = element(sig10, [rng.uniform(-1, 1) for _ in range(sig10.dim)], FLOAT64)
    det_recursive(u10)  # warm the kernel tables before timing
    t0 = time.perf_counter()
    det_recursive(u10)
    elapsed10 = time.perf_counter() - t0
    assert elapsed10 < 5.0, f"det_recursive on DL(0,10) took {elapsed10:.2f}s"

    def best_of(fn, reps=3):
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        return min(times)

    ratios = {}
    for n in (4, 6, 8):
        sig = Signature(0, n)
        u = element(sig, [rng.uniform(-1, 1) for _ in range(sig.dim)], FLOAT64)
        det_recursive(u)
        det_full_product(u)
        t_rec = best_of(lambda: det_recursive(u))
        t_full = best_of(lambda: det_full_product(u))
        ratios[n] = t_full / t_rec
    assert ratios[8] > ratios[4], f"no asymptotic separation: {ratios}"
    assert ratios[8] > 1.0, f"recursive not faster at n=8: {ratios}"
    _report(
        9,
        "performance",
        f"DL(0,10) det_recursive {elapsed10*1e3:.0f} ms; "
        f"full/recursive time ratio n=4: {ratios[4]:.1f}, n=6: {ratios[6]:.1f}, "
        f"n=8: {ratios[8]:.1f}",
    )
