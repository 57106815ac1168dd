"""Circular arcs, logarithmic double spirals, and leaves with a median point.

Everything is computed in the chart zeta = (z - z1)/(z - z2), the inverse of
the Moebius transform M(zeta) = (z2*zeta - z1)/(zeta - 1). Writing
zeta = exp(2*pi*(x + i*y)), a point lies on the leaf determined by p and the
slope pair (delta_minus, delta_plus) iff some integer shift of y lands in
[1/p + alpha(x), 1/p + beta(x)], where alpha and beta are the min/max of the
two slopes times x. The arc is the degenerate case alpha = beta = 0 and a
single double spiral is alpha = beta = delta*x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterError

_TWO_PI = 2.0 * math.pi

# Default half-extent of the x chart used when sampling leaf boundaries.
# exp(2*pi*X) controls how close samples approach the endpoints; beyond
# X ~ 1.25 the Moebius round trip starts losing the 1e-12 membership slack
# to cancellation.
BOUNDARY_X_EXTENT = 1.25


class _PointAtInfinity:
    """Explicit tag for the point at infinity on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"


AT_INFINITY = _PointAtInfinity()
ExtendedComplex = Union[complex, _PointAtInfinity]


@dataclass(frozen=True)
class Leaf:
    """Leaf between z1 and z2 determined by p and the slope pair (dm, dp)."""

    z1: complex
    z2: complex
    p: float
    delta_minus: float
    delta_plus: float

    def __post_init__(self):
        if self.z1 == self.z2:
            raise ParameterError("leaf endpoints must differ")
        if not (1.0 < self.p < math.inf):
            raise ParameterError("p must lie in (1, inf)")
        if self.delta_minus > self.delta_plus:
            raise ParameterError("need delta_minus <= delta_plus")


def indicators(delta_minus: float, delta_plus: float, x):
    """(alpha, beta)(x) = (min, max) of delta_minus*x and delta_plus*x."""
    a = np.minimum(delta_minus * np.asarray(x), delta_plus * np.asarray(x))
    b = np.maximum(delta_minus * np.asarray(x), delta_plus * np.asarray(x))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(a), float(b)
    return a, b


def moebius(z1: complex, z2: complex, zeta: ExtendedComplex) -> ExtendedComplex:
    """M(zeta) = (z2*zeta - z1)/(zeta - 1); maps 0 to z1, infinity to z2,
    and signals the pole at zeta = 1 with the AT_INFINITY tag."""
    if z1 == z2:
        raise ParameterError("moebius needs z1 != z2")
    if zeta is AT_INFINITY:
        return z2
    if zeta == 1:
        return AT_INFINITY
    return (z2 * zeta - z1) / (zeta - 1)


def moebius_inverse(z1: complex, z2: complex, z: ExtendedComplex) -> ExtendedComplex:
    """zeta = (z - z1)/(z - z2), with z = z2 mapped to AT_INFINITY."""
    if z is AT_INFINITY:
        return 1.0 + 0.0j
    if z == z2:
        return AT_INFINITY
    return (z - z1) / (z - z2)


def _angle_defect(value, tol):
    """True where value is within tol of a multiple of 2*pi (False at nan)."""
    with np.errstate(invalid="ignore"):
        k = np.round(value / _TWO_PI)
        return np.abs(value - _TWO_PI * k) <= tol


def arc_contains(z1: complex, z2: complex, p: float, z, tol: float = 1e-9):
    """Membership in the circular arc: arg((z-z1)/(z-z2)) = 2*pi/p (mod 2*pi)."""
    z = np.asarray(z, dtype=complex)
    at_end = (z == z1) | (z == z2)
    with np.errstate(invalid="ignore", divide="ignore"):
        zeta = (z - z1) / (z - z2)
        ang = np.angle(zeta)
    out = np.where(at_end, True, _angle_defect(ang - _TWO_PI / p, tol))
    return bool(out) if out.ndim == 0 else out


def spiral_contains(z1: complex, z2: complex, p: float, delta: float, z,
                    tol: float = 1e-9):
    """Membership in the logarithmic double spiral:
    arg(zeta) - delta*log|zeta| = 2*pi/p (mod 2*pi) with zeta = (z-z1)/(z-z2)."""
    z = np.asarray(z, dtype=complex)
    at_end = (z == z1) | (z == z2)
    with np.errstate(invalid="ignore", divide="ignore"):
        zeta = (z - z1) / (z - z2)
        val = np.angle(zeta) - delta * np.log(np.abs(zeta))
    out = np.where(at_end, True, _angle_defect(val - _TWO_PI / p, tol))
    return bool(out) if out.ndim == 0 else out


def leaf_contains(leaf: Leaf, z, slack: float = 1e-12):
    """Exact membership test in the zeta chart.

    With x = log|zeta|/(2 pi) and y0 = arg(zeta)/(2 pi), the point belongs to
    the leaf iff some integer k satisfies
    1/p + alpha(x) <= y0 + k <= 1/p + beta(x). The comparison carries ``slack``
    at the strip boundary only.
    """
    z = np.asarray(z, dtype=complex)
    at_end = (z == leaf.z1) | (z == leaf.z2)
    with np.errstate(invalid="ignore", divide="ignore"):
        zeta = (z - leaf.z1) / (z - leaf.z2)
        x = np.log(np.abs(zeta)) / _TWO_PI
        y0 = np.angle(zeta) / _TWO_PI
    alpha, beta = indicators(leaf.delta_minus, leaf.delta_plus, x)
    lo = 1.0 / leaf.p + alpha - y0
    hi = 1.0 / leaf.p + beta - y0
    with np.errstate(invalid="ignore"):
        inside = np.ceil(lo - slack) <= np.floor(hi + slack)
    out = np.where(at_end, True, inside)
    return bool(out) if out.ndim == 0 else out


def median_point(leaf: Leaf) -> complex:
    """m = M(exp(2*pi*i/p)): the point of the leaf equidistant from z1 and z2
    whose removal disconnects the leaf."""
    return complex(moebius(leaf.z1, leaf.z2, np.exp(2j * math.pi / leaf.p)))


@dataclass(frozen=True, eq=False)
class BoundaryPiece:
    """Ordered samples along one boundary spiral piece, running away from the
    median point toward the endpoint named in the label."""

    label: str
    delta: float
    toward: str       # "z1" | "z2"
    points: np.ndarray


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    """Labeled boundary sampling of a leaf: spiral pieces, median, endpoints."""

    leaf: Leaf
    pieces: tuple[BoundaryPiece, ...]
    median: complex

    def records(self) -> list[dict]:
        """Flat {x, y, label} records (external plot format)."""
        rows = [{"x": self.median.real, "y": self.median.imag, "label": "median"},
                {"x": self.leaf.z1.real, "y": self.leaf.z1.imag, "label": "z1"},
                {"x": self.leaf.z2.real, "y": self.leaf.z2.imag, "label": "z2"}]
        for piece in self.pieces:
            rows.extend({"x": z.real, "y": z.imag, "label": piece.label}
                        for z in piece.points)
        return rows


def leaf_boundary_sample(leaf: Leaf, n: int,
                         x_extent: float = BOUNDARY_X_EXTENT) -> BoundarySamples:
    """Sample the boundary spirals of the leaf.

    The boundary of the strip in the gamma chart consists of the lines
    y = 1/p + delta*x for delta in {delta_minus, delta_plus}, restricted to
    half-axes; their Moebius images are at most four spiral pieces that all
    meet at the median point and wind into z1 (x -> -inf) and z2 (x -> +inf).
    Uniform sampling in x accumulates geometrically at the endpoints. A gap
    proportional to the local sampling step is left around x = 0 so that the
    two halves of the leaf remain separated once the median is removed.
    """
    if n < 64:
        raise ParameterError("need n >= 64 boundary samples")
    dm, dp = leaf.delta_minus, leaf.delta_plus
    degenerate = dm == dp
    specs = ([(dm, "z2"), (dm, "z1")] if degenerate
             else [(dm, "z2"), (dp, "z2"), (dp, "z1"), (dm, "z1")])
    per_piece = max(n // len(specs), 8)
    step = x_extent / per_piece
    gap = 2.0 * step * math.hypot(1.0, max(abs(dm), abs(dp)))
    grid = np.linspace(gap, x_extent, per_piece)

    pieces = []
    for delta, toward in specs:
        x = grid if toward == "z2" else -grid
        gamma = x + 1j * (1.0 / leaf.p + delta * x)
        zeta = np.exp(_TWO_PI * gamma)
        pts = (leaf.z2 * zeta - leaf.z1) / (zeta - 1.0)
        name = "d" if degenerate else ("d-" if delta == dm else "d+")
        pieces.append(BoundaryPiece(label=f"{name}_to_{toward}", delta=delta,
                                    toward=toward, points=pts))
    return BoundarySamples(leaf=leaf, pieces=tuple(pieces),
                           median=median_point(leaf))


def proximity_components(samples: BoundarySamples, include_median: bool = True) -> int:
    """Connected components of the sample proximity graph.

    Consecutive samples on a piece are adjacent; each piece is anchored to its
    endpoint, and to the median when it is included. Additionally any two
    samples closer than 3x the smaller of their local sampling steps are
    joined. With the median present the graph is connected; removing it
    splits the graph into the two halves of the leaf.
    """
    pts = [samples.leaf.z1, samples.leaf.z2]
    steps = [0.0, 0.0]
    extra_edges = []
    if include_median:
        pts.append(samples.median)
        steps.append(0.0)
    for piece in samples.pieces:
        endpoint_idx = 0 if piece.toward == "z1" else 1
        base = len(pts)
        zs = piece.points
        for j, z in enumerate(zs):
            succ = zs[j + 1] if j + 1 < len(zs) else complex(pts[endpoint_idx])
            pts.append(complex(z))
            steps.append(abs(complex(z) - succ))
            if j > 0:
                extra_edges.append((base + j - 1, base + j))
        extra_edges.append((base + len(zs) - 1, endpoint_idx))
        if include_median:
            extra_edges.append((base, 2))

    pts_arr = np.asarray(pts)
    steps_arr = np.asarray(steps)
    dist = np.abs(pts_arr[None, :] - pts_arr[:, None])
    thr = 3.0 * np.minimum(steps_arr[None, :], steps_arr[:, None])
    adj = dist < thr
    for a, b in extra_edges:
        adj[a, b] = adj[b, a] = True
    np.fill_diagonal(adj, False)

    n = len(pts_arr)
    seen = np.zeros(n, dtype=bool)
    count = 0
    for s in range(n):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            nxt = np.flatnonzero(adj[v] & ~seen)
            seen[nxt] = True
            stack.extend(nxt.tolist())
    return count
