"""Scalar Fredholm criterion for aP + Q from local jump data.

At a jump point t with one-sided limits a(t-0), a(t+0), exponent value p_t
and spirality indices (delta_minus, delta_plus), the criterion evaluates

    1/p_t - arg(a-/a+)/(2 pi) + theta*alpha(x) + (1-theta)*beta(x),
    x = log|a-/a+| / (2 pi),

over theta in [0, 1]. The expression is affine in theta, so its range is the
closed interval [base + alpha(x), base + beta(x)]; the operator is Fredholm
iff no jump interval meets the integers and no one-sided limit vanishes.
The companion routines expose the local exponent, the boundedness conditions
for the weighted Cauchy operator, the integer shift that places the interval
inside (0, 1), and the auxiliary exponent p0 used by the boundedness proof.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ContractError, DegenerateSymbolError, ParameterError
from .leaves import indicators

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class JumpDatum:
    """Local data of one coefficient discontinuity."""

    t_label: str
    a_minus: complex
    a_plus: complex
    p_t: float
    delta_minus: float
    delta_plus: float

    def __post_init__(self):
        if not (1.0 < self.p_t < math.inf):
            raise ParameterError("p_t must lie in (1, inf)")
        if self.delta_minus > self.delta_plus:
            raise ParameterError("need delta_minus <= delta_plus")


@dataclass(frozen=True)
class PointVerdict:
    t_label: str
    interval_low: float
    interval_high: float
    blocking_integer: Optional[int]
    degenerate: bool = False


@dataclass(frozen=True)
class CriterionReport:
    fredholm: bool
    per_point: tuple[PointVerdict, ...]


def local_exponent_gamma(a_minus: complex, a_plus: complex,
                         branch_k: int = 0) -> complex:
    """gamma with Re = (arg(a-/a+) + 2*pi*branch_k)/(2*pi), Im = -log|a-/a+|/(2*pi)."""
    if a_minus == 0 or a_plus == 0:
        raise DegenerateSymbolError("one-sided limit vanishes")
    ratio = a_minus / a_plus
    re = (cmath.phase(ratio) + _TWO_PI * branch_k) / _TWO_PI
    im = -math.log(abs(ratio)) / _TWO_PI
    return complex(re, im)


def criterion_interval(j: JumpDatum) -> tuple[float, float]:
    """Range over theta of the criterion expression: [base+alpha(x), base+beta(x)]."""
    if j.a_minus == 0 or j.a_plus == 0:
        raise DegenerateSymbolError("one-sided limit vanishes")
    ratio = j.a_minus / j.a_plus
    base = 1.0 / j.p_t - cmath.phase(ratio) / _TWO_PI
    x = math.log(abs(ratio)) / _TWO_PI
    alpha, beta = indicators(j.delta_minus, j.delta_plus, x)
    return base + alpha, base + beta


def _blocking_integer(low: float, high: float) -> Optional[int]:
    """Smallest integer in the closed interval, if any (endpoints count)."""
    k = math.ceil(low)
    return k if k <= high else None


def is_fredholm_scalar(jumps: Sequence[JumpDatum]) -> CriterionReport:
    """Apply the criterion at every listed jump. Continuity points need not be
    listed: their interval is the single value 1/p(t) which is never an
    integer. The verdict is invariant under the branch of arg since a branch
    change translates the interval by an integer."""
    verdicts = []
    ok = True
    for j in jumps:
        if j.a_minus == 0 or j.a_plus == 0:
            verdicts.append(PointVerdict(j.t_label, math.nan, math.nan,
                                         None, degenerate=True))
            ok = False
            continue
        low, high = criterion_interval(j)
        k = _blocking_integer(low, high)
        verdicts.append(PointVerdict(j.t_label, low, high, k))
        if k is not None:
            ok = False
    return CriterionReport(fredholm=ok, per_point=tuple(verdicts))


def boundedness_ok(p_t: float, delta_minus: float, delta_plus: float,
                   gamma: complex) -> bool:
    """Both boundedness conditions for the Cauchy operator on the weighted
    variable space: 0 < 1/p + Re(gamma) + alpha(Im gamma) and
    1/p + Re(gamma) + beta(Im gamma) < 1 (strict)."""
    alpha, beta = indicators(delta_minus, delta_plus, gamma.imag)
    lower = 1.0 / p_t + gamma.real + alpha
    upper = 1.0 / p_t + gamma.real + beta
    return 0.0 < lower and upper < 1.0


def find_shift_k(j: JumpDatum, branch_k: int = 0) -> Optional[int]:
    """The unique integer k with the shifted criterion interval inside (0, 1),
    or None when the interval contains an integer. When k is returned,
    boundedness_ok(p_t, deltas, k - gamma) holds."""
    low, high = criterion_interval(j)
    low -= branch_k
    high -= branch_k
    if _blocking_integer(low, high) is not None:
        return None
    return -math.floor(low)


def find_p0(p_min: float, p_t: float, delta_minus: float, delta_plus: float,
            gamma: complex) -> Optional[float]:
    """Auxiliary exponent p0 with 1 < p0 < p_min and
    1/p_t + Re(gamma) + beta(Im gamma) < 1/p0, or None when no such p0 exists.

    Returns the midpoint of the feasible interval and verifies the two
    algebraic identities that rewrite the boundedness conditions after
    multiplication by -p0 (which swaps the roles of alpha and beta).
    """
    if not (1.0 < p_min <= p_t):
        raise ParameterError("need 1 < p_min <= p_t")
    alpha, beta = indicators(delta_minus, delta_plus, gamma.imag)
    bound = 1.0 / p_t + gamma.real + beta
    if bound >= 1.0:
        return None
    upper = min(p_min, 1.0 / bound) if bound > 0.0 else p_min
    p0 = 0.5 * (1.0 + upper)

    # identity checks: 1 - p0/p - p0*(Re g + beta(Im g))
    #                = (p - p0)/p - p0*Re g + alpha(-p0*Im g),  and dually.
    a_neg, b_neg = indicators(delta_minus, delta_plus, -p0 * gamma.imag)
    lhs1 = 1.0 - p0 / p_t - p0 * (gamma.real + beta)
    rhs1 = (p_t - p0) / p_t - p0 * gamma.real + a_neg
    lhs2 = 1.0 - p0 / p_t - p0 * (gamma.real + alpha)
    rhs2 = (p_t - p0) / p_t - p0 * gamma.real + b_neg
    scale = 1.0 + abs(lhs1) + abs(lhs2)
    if abs(lhs1 - rhs1) > 1e-12 * scale or abs(lhs2 - rhs2) > 1e-12 * scale:
        raise ContractError("indicator identities violated at p0")
    if lhs1 <= 0.0:
        raise ContractError("p0 midpoint fails its defining inequality")
    return p0
