import numpy as np
import pytest

from leafspec import (AT_INFINITY, Leaf, ParameterError, arc_contains,
                      indicators, leaf_boundary_sample, leaf_contains,
                      median_point, moebius, moebius_inverse,
                      proximity_components, spiral_contains)

TWO_PI = 2 * np.pi


def random_leaves(rng, count, dmax=3.0):
    out = []
    while len(out) < count:
        p = rng.uniform(1.1, 10.0)
        d1, d2 = sorted(rng.uniform(-dmax, dmax, 2))
        z1 = complex(rng.normal(), rng.normal())
        z2 = complex(rng.normal(), rng.normal())
        if abs(z1 - z2) > 0.1:
            out.append(Leaf(z1, z2, p, d1, d2))
    return out


def oracle_contains(leaf, z):
    """Independent membership check: solve the congruence for the spiral
    parameter and ask whether it lies in [delta_minus, delta_plus]."""
    if z == leaf.z1 or z == leaf.z2:
        return True
    zeta = (z - leaf.z1) / (z - leaf.z2)
    x = np.log(abs(zeta)) / TWO_PI
    y0 = np.angle(zeta) / TWO_PI
    if x == 0.0:
        return any(abs(y0 + k - 1.0 / leaf.p) <= 1e-12
                   for k in range(-3, 4))
    ks = range(int(np.floor(1.0 / leaf.p + min(leaf.delta_minus * x,
                                               leaf.delta_plus * x) - y0)) - 1,
               int(np.ceil(1.0 / leaf.p + max(leaf.delta_minus * x,
                                              leaf.delta_plus * x) - y0)) + 2)
    for k in ks:
        delta_star = (y0 + k - 1.0 / leaf.p) / x
        if leaf.delta_minus - 1e-12 <= delta_star <= leaf.delta_plus + 1e-12:
            return True
    return False


def test_indicators_examples():
    assert indicators(0.0, 0.0, 5.0) == (0.0, 0.0)
    assert indicators(-1.0, 2.0, 1.0) == (-1.0, 2.0)
    assert indicators(-1.0, 2.0, -1.0) == (-2.0, 1.0)


def test_moebius_examples():
    assert moebius(0, 1, 0j) == 0
    assert moebius(0, 1, -1 + 0j) == 0.5
    assert moebius(2j, 3 + 1j, AT_INFINITY) == 3 + 1j
    assert moebius(0, 1, 1 + 0j) is AT_INFINITY


def test_moebius_involution():
    rng = np.random.default_rng(5)
    for _ in range(50):
        z1 = complex(rng.normal(), rng.normal())
        z2 = complex(rng.normal(), rng.normal())
        if abs(z1 - z2) < 0.1:
            continue
        zeta = complex(rng.normal(), rng.normal())
        z = moebius(z1, z2, zeta)
        if z is AT_INFINITY:
            continue
        back = moebius_inverse(z1, z2, z)
        assert abs(back - zeta) < 1e-9 * max(1.0, abs(zeta))
    assert moebius(1j, 2j, 0j) == 1j
    assert moebius_inverse(1j, 2j, 2j) is AT_INFINITY


def test_arc_examples():
    assert arc_contains(0, 1, 2.0, 0.3 + 0j)
    assert not arc_contains(0, 1, 2.0, 0.5 + 0.1j)
    assert arc_contains(0, 1, 3.7, 0j) and arc_contains(0, 1, 3.7, 1 + 0j)


def test_spiral_delta_zero_is_arc():
    rng = np.random.default_rng(6)
    z = rng.normal(size=10000) + 1j * rng.normal(size=10000)
    assert np.array_equal(arc_contains(0, 1, 2.5, z),
                          spiral_contains(0, 1, 2.5, 0.0, z))


def test_spiral_examples():
    assert spiral_contains(0, 1, 2.0, 1.0, 0.5 + 0j)   # |zeta|=1 kills the log
    assert spiral_contains(0, 1, 2.0, -2.0, 0j)
    assert spiral_contains(0, 1, 2.0, -2.0, 1 + 0j)


def test_leaf_reduces_to_arc():
    rng = np.random.default_rng(7)
    leaf = Leaf(0, 1, 2.0, 0.0, 0.0)
    z = rng.normal(size=10000) + 1j * rng.normal(size=10000)
    got = leaf_contains(leaf, z)
    want = arc_contains(0, 1, 2.0, z)
    assert np.array_equal(got, want)
    # points constructed on the arc must land inside
    ang = np.exp(1j * TWO_PI / 2.0)
    on_arc = moebius(0, 1, ang * 1.0000)
    assert leaf_contains(leaf, on_arc)


def test_leaf_reduces_to_spiral():
    rng = np.random.default_rng(8)
    for delta in (-2.0, -0.5, 1.0):
        leaf = Leaf(0, 1, 2.0, delta, delta)
        z = rng.normal(size=10000) + 1j * rng.normal(size=10000)
        assert np.array_equal(leaf_contains(leaf, z),
                              spiral_contains(0, 1, 2.0, delta, z))
        # constructed on-spiral points
        for x in (-0.5, 0.2, 0.9):
            gamma = x + 1j * (1.0 / 2.0 + delta * x)
            z_on = moebius(0, 1, np.exp(TWO_PI * gamma))
            assert leaf_contains(leaf, z_on)
            assert spiral_contains(0, 1, 2.0, delta, z_on)


def test_leaf_union_of_spirals_identity():
    rng = np.random.default_rng(9)
    for leaf in random_leaves(rng, 20):
        z = rng.normal(size=500) + 1j * rng.normal(size=500)
        got = leaf_contains(leaf, z)
        want = np.array([oracle_contains(leaf, complex(v)) for v in z])
        assert np.array_equal(got, want)
        # interior points: pick a spiral in the range and a point on it
        for frac in (0.0, 0.5, 1.0):
            delta = leaf.delta_minus + frac * (leaf.delta_plus - leaf.delta_minus)
            gamma = 0.3 + 1j * (1.0 / leaf.p + delta * 0.3)
            z_on = moebius(leaf.z1, leaf.z2, np.exp(TWO_PI * gamma))
            assert leaf_contains(leaf, z_on)


def test_leaf_branch_robustness():
    rng = np.random.default_rng(10)
    for leaf in random_leaves(rng, 10):
        z = rng.normal(size=200) + 1j * rng.normal(size=200)
        got = leaf_contains(leaf, z)
        # shifting the argument branch shifts y0 by 1; the integer search
        # absorbs it, so membership computed with y0 + 1 must agree
        zeta = (z - leaf.z1) / (z - leaf.z2)
        x = np.log(np.abs(zeta)) / TWO_PI
        y0 = np.angle(zeta) / TWO_PI + 1.0
        a, b = indicators(leaf.delta_minus, leaf.delta_plus, x)
        lo = 1.0 / leaf.p + a - y0
        hi = 1.0 / leaf.p + b - y0
        shifted = np.ceil(lo - 1e-12) <= np.floor(hi + 1e-12)
        assert np.array_equal(got, shifted)


def test_leaf_swap_symmetry():
    # L(z1, z2; p, dm, dp) = L(z2, z1; q, dm, dp) with 1/p + 1/q = 1
    rng = np.random.default_rng(11)
    for leaf in random_leaves(rng, 15):
        q = leaf.p / (leaf.p - 1.0)
        swapped = Leaf(leaf.z2, leaf.z1, q, leaf.delta_minus, leaf.delta_plus)
        z = rng.normal(size=400) + 1j * rng.normal(size=400)
        assert np.array_equal(leaf_contains(leaf, z), leaf_contains(swapped, z))
        for frac in (0.0, 1.0):
            delta = leaf.delta_minus + frac * (leaf.delta_plus - leaf.delta_minus)
            gamma = -0.4 + 1j * (1.0 / leaf.p + delta * -0.4)
            z_on = moebius(leaf.z1, leaf.z2, np.exp(TWO_PI * gamma))
            assert leaf_contains(swapped, z_on)


def test_median_examples():
    leaf = Leaf(0, 1, 2.0, -1.0, 1.0)
    m = median_point(leaf)
    assert abs(m - 0.5) < 1e-14
    rng = np.random.default_rng(12)
    for lf in random_leaves(rng, 100):
        m = median_point(lf)
        assert abs(abs(m - lf.z1) - abs(m - lf.z2)) \
            <= 1e-12 * max(1.0, abs(m - lf.z1))
        # independent of the deltas
        flat = Leaf(lf.z1, lf.z2, lf.p, 0.0, 0.0)
        assert median_point(flat) == m


def test_boundary_degenerate_lies_on_arc():
    leaf = Leaf(0, 1, 2.0, 0.0, 0.0)
    samples = leaf_boundary_sample(leaf, 128)
    assert len(samples.pieces) == 2
    for piece in samples.pieces:
        assert np.all(arc_contains(0, 1, 2.0, piece.points))


def test_boundary_samples_inside_leaf_and_split():
    rng = np.random.default_rng(13)
    for leaf in random_leaves(rng, 25):
        samples = leaf_boundary_sample(leaf, 128)
        assert len(samples.pieces) == 4
        for piece in samples.pieces:
            assert np.all(leaf_contains(leaf, piece.points))
        assert proximity_components(samples, include_median=True) == 1
        assert proximity_components(samples, include_median=False) >= 2


def test_boundary_accumulates_at_endpoints():
    leaf = Leaf(0, 1, 2.0, -1.0, 1.0)
    samples = leaf_boundary_sample(leaf, 256)
    for piece in samples.pieces:
        target = leaf.z2 if piece.toward == "z2" else leaf.z1
        d = np.abs(piece.points - target)
        assert d[-1] < 5e-3          # geometric approach to the endpoint
        assert np.all(np.diff(d) < 0)


def test_boundary_records_format():
    leaf = Leaf(0, 1, 2.0, -1.0, 1.0)
    rows = leaf_boundary_sample(leaf, 64).records()
    assert all(set(r) == {"x", "y", "label"} for r in rows)
    labels = {r["label"] for r in rows}
    assert {"median", "z1", "z2"} <= labels
    assert len(labels) == 7      # four spiral pieces + the three markers


def test_leaf_validation():
    with pytest.raises(ParameterError):
        Leaf(0, 0, 2.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        Leaf(0, 1, 1.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        Leaf(0, 1, 2.0, 1.0, -1.0)
    with pytest.raises(ParameterError):
        leaf_boundary_sample(Leaf(0, 1, 2.0, 0.0, 0.0), 32)
