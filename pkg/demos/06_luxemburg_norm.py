"""Variable exponents and the Luxemburg-Nakano norm on sampled functions.

The norm is the unique lambda solving the modular equation
sum (|f| w / lambda)^p(.) |dtau| = 1. For constant p it collapses to the
classical discrete L^p norm. The Dini-Lipschitz constant quantifies how
fast the exponent may oscillate: a 1/(-log d) perturbation has a finite
constant, which is the regularity the Fredholm theory requires.
"""

import numpy as np

from leafspec import (CurveSpec, Exponent, build_curve, conjugate,
                      dini_lipschitz_constant, log_perturbation,
                      luxemburg_norm, phi_weight)

circle = build_curve(CurveSpec.circle(), 512)
ones = np.ones(len(circle))

print("== Constant exponent: the classical case ==")
for p in (1.5, 2.0, 4.0):
    val = luxemburg_norm(ones, Exponent.constant(p), None, circle)
    print(f"  ||1||_{p} = {val:.6f}   (closed form (2 pi)^(1/p) = "
          f"{(2 * np.pi) ** (1 / p):.6f})")

print()
print("== Variable exponent ==")
p_var = log_perturbation(circle, "t", base=2.0, amplitude=1.0)
print(f"  p ranges over [{p_var.p_min:.4f}, {p_var.p_max:.4f}]")
print(f"  Dini-Lipschitz constant: {dini_lipschitz_constant(p_var, circle):.4f}")
q_var = conjugate(p_var)
print(f"  conjugate exponent ranges over [{q_var.p_min:.4f}, {q_var.p_max:.4f}]")
rng = np.random.default_rng(1)
f = rng.normal(size=len(circle)) + 1j * rng.normal(size=len(circle))
nf = luxemburg_norm(f, p_var, None, circle)
print(f"  ||f|| = {nf:.6f} for a random sample f")
print(f"  homogeneity check: ||3f|| / ||f|| = "
      f"{luxemburg_norm(3 * f, p_var, None, circle) / nf:.12f}")

print()
print("== Weighted norms ==")
w = phi_weight(circle, "t", 0.25 + 0.5j)
val = luxemburg_norm(ones, p_var, w, circle)
print(f"  ||1|| with the weight |tau - t|^0.25 eta^0.5: {val:.6f}")
print("  (the node at t is masked; the weight degenerates there)")
