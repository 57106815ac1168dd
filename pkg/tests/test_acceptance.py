"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
summary lines. Tolerances are fixed here and match the package contracts.
"""

import cmath
import math
import time

import numpy as np
import pytest

from leafspec import (CurveSpec, Exponent, JumpDatum, Leaf, PCCoefficient,
                      SymbolContext, a_P_plus_Q, arc_contains, build_curve,
                      bundle_fredholm_test, carleson_constant, criterion_interval,
                      boundedness_ok, discrete_S, find_p0, find_shift_k,
                      finite_section_trend, indicators, is_fredholm_scalar,
                      leaf_boundary_sample, leaf_contains, local_exponent_gamma,
                      luxemburg_norm, median_point, proximity_components,
                      spiral_contains, spirality_indices)


def _report(num, name, detail=""):
    print(f"ACCEPTANCE {num:02d} PASS  {name}  {detail}")


def random_jump(rng, flat=False):
    p = rng.uniform(1.1, 10.0)
    if flat:
        dm = dp = 0.0
    else:
        dm, dp = sorted(rng.uniform(-3.0, 3.0, 2))
    a_m = complex(rng.normal(), rng.normal())
    a_p = complex(rng.normal(), rng.normal())
    return JumpDatum("t", a_m, a_p, p, dm, dp)


def test_01_leaf_degeneracy():
    t0 = time.time()
    rng = np.random.default_rng(101)
    z = rng.uniform(-3, 3, 10000) + 1j * rng.uniform(-3, 3, 10000)
    flat = Leaf(0, 1, 2.7, 0.0, 0.0)
    assert np.array_equal(leaf_contains(flat, z), arc_contains(0, 1, 2.7, z))
    for delta in (-2.0, -0.5, 1.0):
        leaf = Leaf(0, 1, 2.7, delta, delta)
        assert np.array_equal(leaf_contains(leaf, z),
                              spiral_contains(0, 1, 2.7, delta, z))
    elapsed = time.time() - t0
    assert elapsed < 5.0
    _report(1, "leaf degeneracy (arc and double-spiral limits)",
            f"4x10^4 points, {elapsed:.2f}s")


def test_02_median_separating_point():
    rng = np.random.default_rng(102)
    checked = 0
    while checked < 100:
        p = rng.uniform(1.1, 10.0)
        dm, dp = sorted(rng.uniform(-3, 3, 2))
        z1 = complex(rng.normal(), rng.normal())
        z2 = complex(rng.normal(), rng.normal())
        if abs(z1 - z2) < 0.1:
            continue
        leaf = Leaf(z1, z2, p, dm, dp)
        m = median_point(leaf)
        assert abs(abs(m - z1) - abs(m - z2)) <= 1e-12 * max(1.0, abs(m - z1))
        samples = leaf_boundary_sample(leaf, 128)
        assert proximity_components(samples, include_median=True) == 1
        assert proximity_components(samples, include_median=False) >= 2
        checked += 1
    _report(2, "median point: equidistance 1e-12 + graph disconnection",
            "100 random leaves")


def test_03_criterion_symbol_equivalence():
    t0 = time.time()
    rng = np.random.default_rng(103)
    agree = 0
    for _ in range(1000):
        j = random_jump(rng)
        verdict = is_fredholm_scalar([j]).fredholm
        # exact root-membership determinant test: det sigma(aP+Q) =
        # a+ z + a- (1-z) vanishes at z0 = a-/(a- - a+)
        if j.a_minus == j.a_plus:
            exact = j.a_minus != 0
        else:
            z0 = j.a_minus / (j.a_minus - j.a_plus)
            exact = not leaf_contains(
                Leaf(0.0, 1.0, j.p_t, j.delta_minus, j.delta_plus), z0)
        assert verdict == exact
        agree += 1
    elapsed = time.time() - t0
    assert elapsed < 10.0
    _report(3, "criterion <-> symbol determinant equivalence",
            f"{agree}/1000 agree, {elapsed:.2f}s")


def test_04_classical_reduction():
    rng = np.random.default_rng(104)
    for _ in range(1000):
        j = random_jump(rng, flat=True)
        verdict = is_fredholm_scalar([j]).fredholm
        v = 1.0 / j.p_t - cmath.phase(j.a_minus / j.a_plus) / (2 * math.pi)
        assert verdict == (v != round(v))
    _report(4, "classical reduction (flat curve, constant p)", "1000/1000 agree")


def test_05_curve_induced_massiveness():
    massive = JumpDatum("t", math.e, 1.0, 2.0, -2 * math.pi, 2 * math.pi)
    lo, hi = criterion_interval(massive)
    assert lo == pytest.approx(-0.5, abs=1e-12)
    assert hi == pytest.approx(1.5, abs=1e-12)
    assert not is_fredholm_scalar([massive]).fredholm

    flat = JumpDatum("t", math.e, 1.0, 2.0, 0.0, 0.0)
    lo2, hi2 = criterion_interval(flat)
    assert lo2 == pytest.approx(0.5, abs=1e-12)
    assert hi2 == pytest.approx(0.5, abs=1e-12)
    assert is_fredholm_scalar([flat]).fredholm
    _report(5, "curve-induced massiveness fixture",
            f"[{lo:.1f},{hi:.1f}] blocked vs [{lo2:.1f},{hi2:.1f}] clear")


def test_06_spirality_estimation():
    checks = []

    t0 = time.time()
    circle = build_curve(CurveSpec.circle(), 4096)
    est = spirality_indices(circle, "t")
    dt = time.time() - t0
    assert abs(est.delta_minus) <= 0.05 and abs(est.delta_plus) <= 0.05
    assert dt < 10.0
    checks.append(f"circle ({est.delta_minus:+.3f},{est.delta_plus:+.3f})")

    for delta in (-1.0, 0.5, 2.0):
        t0 = time.time()
        c = build_curve(CurveSpec.log_spiral(delta), 4096)
        est = spirality_indices(c, "t")
        dt = time.time() - t0
        assert abs(est.delta_minus - delta) <= 0.05
        assert abs(est.delta_plus - delta) <= 0.05
        assert dt < 10.0
        checks.append(f"log({delta:+.1f})")

    t0 = time.time()
    osc = build_curve(CurveSpec.oscillating_spiral(-1.0, 1.0), 4096)
    est = spirality_indices(osc, "t", R_grid=np.exp(-np.linspace(2.0, 111.0, 56)))
    dt = time.time() - t0
    assert abs(est.delta_minus + 1.0) <= 0.1
    assert abs(est.delta_plus - 1.0) <= 0.1
    assert dt < 10.0
    checks.append(f"osc ({est.delta_minus:+.3f},{est.delta_plus:+.3f})")
    _report(6, "spirality estimation at n=4096", "; ".join(checks))


def test_07_carleson_circle():
    c = build_curve(CurveSpec.circle(), 512)
    val = carleson_constant(c, np.geomspace(0.02, 1.0, 50) * c.diameter)
    assert abs(val - math.pi) / math.pi < 0.02
    _report(7, "Carleson constant of the unit circle",
            f"{val:.5f} vs pi, rel err {abs(val - math.pi) / math.pi:.2e}")


def test_08_discrete_operator_oracle():
    c = build_curve(CurveSpec.circle(), 256)
    S = discrete_S(c).matrix
    ones_err = np.max(np.abs(S @ np.ones(256) - 1.0))
    assert ones_err < 1e-13
    worst = 0.0
    z = c.nodes
    for k in range(-5, 6):
        f = z ** k
        want = f if k >= 0 else -f
        err = np.linalg.norm(S @ f - want) / np.linalg.norm(want)
        worst = max(worst, err)
    assert worst <= 1e-2
    _report(8, "discrete Cauchy operator Fourier oracle",
            f"max rel err {worst:.1e}, S@1 err {ones_err:.1e}")


def test_09_finite_section_consistency():
    t0 = time.time()
    sizes = (64, 128, 256)
    spec = CurveSpec.circle()
    a_good = PCCoefficient.scalar([("t", 1j), ("u", 1.0)])
    rep_good = finite_section_trend(a_P_plus_Q("a"), spec, {"a": a_good}, sizes)
    assert rep_good.trend == "bounded_below"
    a_bad = PCCoefficient.scalar([("t", -1.0), ("u", 1.0)])
    rep_bad = finite_section_trend(a_P_plus_Q("a"), spec, {"a": a_bad}, sizes)
    assert rep_bad.trend == "decaying"
    elapsed = time.time() - t0
    assert elapsed < 60.0
    _report(9, "finite-section trends (1->i vs 1->-1)",
            f"{rep_good.min_svs[-1]:.3f} bounded vs "
            f"{rep_bad.min_svs[-1]:.4f} decaying, {elapsed:.1f}s")


def test_10_luxemburg_norm():
    circle = build_curve(CurveSpec.circle(), 512)
    got = luxemburg_norm(np.ones(512), Exponent.constant(2.0), None, circle)
    assert abs(got - math.sqrt(2 * math.pi)) < 1e-8
    rng = np.random.default_rng(110)
    for _ in range(100):
        p = rng.uniform(1.1, 10.0)
        f = rng.normal(size=512) + 1j * rng.normal(size=512)
        val = luxemburg_norm(f, Exponent.constant(p), None, circle)
        classical = float(np.sum(np.abs(f) ** p * circle.arclen_weights) ** (1 / p))
        assert abs(val - classical) < 1e-10 * max(1.0, classical)
    _report(10, "Luxemburg norm vs classical L^p",
            f"sqrt(2pi) to {abs(got - math.sqrt(2 * math.pi)):.1e}, 100 random")


def test_11_boundedness_shift_chain():
    rng = np.random.default_rng(111)
    done = 0
    while done < 1000:
        p = rng.uniform(1.1, 10.0)
        dm, dp = sorted(rng.uniform(-3, 3, 2))
        a_m = complex(rng.normal(), rng.normal())
        a_p = complex(rng.normal(), rng.normal())
        j = JumpDatum("t", a_m, a_p, p, dm, dp)
        k = find_shift_k(j)
        if k is None:
            continue
        gamma = local_exponent_gamma(a_m, a_p)
        shifted = k - gamma
        assert boundedness_ok(p, dm, dp, shifted)
        p_min = rng.uniform(1.0 + 1e-9, p)
        p0 = find_p0(p_min, p, dm, dp, shifted)
        assert p0 is not None and 1.0 < p0 < p_min
        a_neg, b_neg = indicators(dm, dp, -p0 * shifted.imag)
        ineq1 = (p - p0) / p - p0 * shifted.real + a_neg
        ineq2 = (p - p0) / p - p0 * shifted.real + b_neg
        assert ineq1 > 0.0 and ineq2 < 1.0
        done += 1
    _report(11, "shift/boundedness/p0 chain", "1000 positive scenarios, 0 violations")


def test_12_full_stack_symbol_consistency():
    # cross-check the packaged bundle test against the scalar criterion on a
    # real curve context (beyond the inline formula of criterion 3)
    circle = build_curve(CurveSpec.circle(), 256)
    rng = np.random.default_rng(112)
    for _ in range(25):
        p = rng.uniform(1.1, 10.0)
        dm, dp = sorted(rng.uniform(-3, 3, 2))
        a_t = complex(rng.normal(), rng.normal())
        a_u = complex(rng.normal(), rng.normal())
        coeff = PCCoefficient.scalar([("t", a_t), ("u", a_u)])
        ctx = SymbolContext(curve=circle, coefficients={"a": coeff},
                            point_data={"t": (p, dm, dp), "u": (p, dm, dp)})
        bundle = bundle_fredholm_test(a_P_plus_Q("a"), ctx)
        jumps = [JumpDatum("t", a_u, a_t, p, dm, dp),
                 JumpDatum("u", a_t, a_u, p, dm, dp)]
        assert bundle.fredholm == is_fredholm_scalar(jumps).fredholm
    _report(12, "bundle test vs scalar criterion on curve contexts", "25 scenarios")
