"""The geometry of local spectra: arcs, double spirals, and leaves.

The local spectrum attached to a jump from z1 to z2 is the leaf
L(z1, z2; p, delta-, delta+). With flat indices it is the circular arc seen
on smooth curves; with equal nonzero indices it is a logarithmic double
spiral; in general it is the union of the double spirals over all
intermediate winding rates, a two-petal region whose median point is
equidistant from the endpoints and disconnects it.

Writes SVG plots into demos/output/.
"""

from pathlib import Path

import numpy as np

from leafspec import (Leaf, arc_contains, emit_leaf_svg, leaf_boundary_sample,
                      leaf_contains, median_point, proximity_components,
                      spiral_contains)

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

gallery = [
    ("arc.svg", Leaf(0, 1, 2.0, 0.0, 0.0), "circular arc (smooth curve, p = 2)"),
    ("arc_p4.svg", Leaf(0, 1, 4.0, 0.0, 0.0), "circular arc, p = 4"),
    ("double_spiral.svg", Leaf(0, 1, 2.0, 1.0, 1.0), "double spiral, delta = 1"),
    ("leaf_thin.svg", Leaf(0, 1, 2.0, -0.2, 0.3), "thin leaf"),
    ("leaf_fat.svg", Leaf(0, 1, 2.0, -1.0, 1.0), "fat leaf, deltas (-1, 1)"),
]
for fname, leaf, title in gallery:
    samples = leaf_boundary_sample(leaf, 512)
    emit_leaf_svg(leaf, samples, out / fname)
    m = median_point(leaf)
    with_m = proximity_components(samples, include_median=True)
    without = proximity_components(samples, include_median=False)
    print(f"{title:38s} -> {fname:18s} median {m:.3f}  "
          f"components with/without median: {with_m}/{without}")

print()
print("== Degenerations, checked pointwise ==")
rng = np.random.default_rng(0)
z = rng.uniform(-2, 3, 5000) + 1j * rng.uniform(-2, 2, 5000)
flat = Leaf(0, 1, 3.0, 0.0, 0.0)
agree = np.mean(leaf_contains(flat, z) == arc_contains(0, 1, 3.0, z))
print(f"flat leaf vs arc membership agreement:      {agree:.4f}")
spiral = Leaf(0, 1, 3.0, -0.7, -0.7)
agree = np.mean(leaf_contains(spiral, z) == spiral_contains(0, 1, 3.0, -0.7, z))
print(f"equal-delta leaf vs double spiral agreement: {agree:.4f}")

print()
print("== The leaf is the union of its double spirals ==")
leaf = Leaf(0, 1, 2.0, -1.0, 1.0)
for delta in (-1.0, -0.5, 0.0, 0.5, 1.0):
    gamma = 0.25 + 1j * (0.5 + delta * 0.25)
    z_on = (1.0 * np.exp(2 * np.pi * gamma)) / (np.exp(2 * np.pi * gamma) - 1)
    print(f"  point on the delta = {delta:+.1f} spiral: leaf_contains = "
          f"{leaf_contains(leaf, complex(z_on))}")
