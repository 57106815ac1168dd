"""How curve geometry near a point is measured: Carleson constants and
spirality indices.

A smooth curve has spirality indices (0, 0) at every point. A logarithmic
spiral with arg(tau - t) = -delta*log|tau - t| has indices (delta, delta),
and modulating the winding rate on a log-log scale produces curves whose
lower and upper indices differ. The estimator fits the growth of the
oscillation functional W0 on a log-log grid.
"""

import numpy as np

from leafspec import (CurveSpec, W0, build_curve, carleson_constant,
                      default_radius_grid, spirality_indices)


def show(title, spec, n=4096, R_grid=None):
    curve = build_curve(spec, n)
    est = spirality_indices(curve, "t", R_grid=R_grid)
    print(f"{title:34s} delta- = {est.delta_minus:+7.4f}   "
          f"delta+ = {est.delta_plus:+7.4f}   "
          f"(fit residuals {est.fit_residual_minus:.3f}/{est.fit_residual_plus:.3f})")
    return curve


print("== Carleson constants ==")
circle = build_curve(CurveSpec.circle(), 512)
print(f"unit circle:     {carleson_constant(circle):.5f}   (sup attained at R = "
      f"diameter, value pi = {np.pi:.5f})")
square = build_curve(CurveSpec.polyline([0, 2, 2 + 2j, 2j]), 256)
print(f"square polyline: {carleson_constant(square):.5f}   (chord <= arc keeps "
      "every ratio >= 1)")

print()
print("== Spirality indices ==")
show("circle (smooth)", CurveSpec.circle())
for delta in (-1.0, 0.5, 2.0):
    show(f"log spiral, delta = {delta:+.1f}", CurveSpec.log_spiral(delta))
show("oscillating spiral (-1, +1)",
     CurveSpec.oscillating_spiral(-1.0, 1.0),
     R_grid=np.exp(-np.linspace(2.0, 111.0, 56)))

print()
print("== The functional behind the estimate ==")
spiral = build_curve(CurveSpec.log_spiral(1.0), 4096)
grid = default_radius_grid(spiral)
print("log spiral delta = 1: W0(x) tracks x^1 up to the bounded cross-arm factor")
for x in (0.01, 0.1, 0.5, 2.0, 20.0):
    w = W0(spiral, "t", x, grid)
    print(f"  x = {x:6.2f}   W0 = {w:10.4e}   W0/x = {w / x:8.3f}")
