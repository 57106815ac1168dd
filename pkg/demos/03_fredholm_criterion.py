"""The scalar Fredholm criterion for aP + Q from local jump data.

At each coefficient jump the criterion forms an interval from the exponent
value, the jump ratio, and the curve's spirality indices; the operator is
Fredholm iff no interval touches an integer. Flat indices recover the
classical arc condition; nonzero indices widen the interval, so a jump that
is harmless on a smooth curve can be blocked by curve geometry alone.
"""

import math

from leafspec import (JumpDatum, boundedness_ok, criterion_interval, find_p0,
                      find_shift_k, is_fredholm_scalar, local_exponent_gamma)


def show(title, jump):
    lo, hi = criterion_interval(jump)
    rep = is_fredholm_scalar([jump])
    verdict = "Fredholm" if rep.fredholm else "NOT Fredholm"
    k = rep.per_point[0].blocking_integer
    blocked = f", blocked by integer {k}" if k is not None else ""
    print(f"{title:44s} interval [{lo:+.4f}, {hi:+.4f}]  {verdict}{blocked}")


print("== Jumps on a smooth curve (indices 0) ==")
show("no jump, p = 2", JumpDatum("t", 1, 1, 2.0, 0.0, 0.0))
show("jump 1 -> i, p = 2", JumpDatum("t", 1, 1j, 2.0, 0.0, 0.0))
show("jump 1 -> -1, p = 2 (arc through 0)", JumpDatum("t", 1, -1, 2.0, 0.0, 0.0))
show("jump 1 -> -1, p = 3", JumpDatum("t", 1, -1, 3.0, 0.0, 0.0))

print()
print("== Curve-induced massiveness: same jump, different curves ==")
show("jump e -> 1 on a smooth curve",
     JumpDatum("t", math.e, 1.0, 2.0, 0.0, 0.0))
show("jump e -> 1, indices (-2pi, 2pi)",
     JumpDatum("t", math.e, 1.0, 2.0, -2 * math.pi, 2 * math.pi))
show("jump e -> 1 on a delta = pi spiral",
     JumpDatum("t", math.e, 1.0, 2.0, math.pi, math.pi))

print()
print("== The sufficiency chain behind the criterion ==")
jump = JumpDatum("t", 1, 1j, 2.0, -0.5, 0.5)
gamma = local_exponent_gamma(jump.a_minus, jump.a_plus)
k = find_shift_k(jump)
print(f"local exponent gamma = {gamma:.4f}")
print(f"integer shift k = {k}")
shifted = k - gamma
print(f"boundedness conditions at k - gamma: {boundedness_ok(2.0, -0.5, 0.5, shifted)}")
p0 = find_p0(2.0, 2.0, -0.5, 0.5, shifted)
print(f"auxiliary exponent p0 = {p0:.4f}  (1 < p0 < min p, and the weighted "
      "maximal operator bound transfers through it)")
