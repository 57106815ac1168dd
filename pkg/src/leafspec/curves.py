"""Discretized Jordan curves and their local oscillation data.

A curve is sampled into nodes with arc-length cell weights. Around a
distinguished point t the module computes continuous argument branches,
the exponential weight eta_t(tau) = exp(-arg(tau - t)), the finite-scale
oscillation functional W0, and least-squares estimates of the lower/upper
spirality indices (the log-log growth rates of W0 at x -> 0 and x -> inf).

Model families:

* ``circle`` / ``ellipse``: smooth reference curves, both indices 0.
* ``log_spiral``: two arms tau = t + r*exp(i*phi(r)) with phi(r) = -delta*log r
  (the second arm offset by pi), closed by a half circle at the outer radius.
  Both indices equal delta.
* ``oscillating_spiral``: same two-arm construction with the slope of the
  unwrapped argument modulated on a log-log scale, so that the window-averaged
  slope attains delta_minus on some scales and delta_plus on others. The
  indices then differ: (delta_minus, delta_plus).
* ``polyline``: closed polygon through given vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull
from shapely.geometry import Polygon

from .errors import ConfigurationError, GeometryError, ParameterError, ResolutionError

SHELL_HALF_WIDTH = 0.05
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


# ---------------------------------------------------------------------------
# specs and data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveSpec:
    """Parametric description of a closed curve; build with the classmethods."""

    family: str
    center: complex = 0j
    radius: float = 1.0
    axes: Optional[tuple[float, float]] = None
    delta: Optional[float] = None
    delta_minus: Optional[float] = None
    delta_plus: Optional[float] = None
    omega: float = 3.0
    r_outer: Optional[float] = None
    r_inner: Optional[float] = None
    points: Optional[tuple[complex, ...]] = None
    ccw: bool = True
    marks: Optional[Mapping[str, float]] = None

    @classmethod
    def circle(cls, radius: float = 1.0, center: complex = 0j, ccw: bool = True,
               marks: Optional[Mapping[str, float]] = None) -> "CurveSpec":
        return cls(family="circle", radius=radius, center=center, ccw=ccw, marks=marks)

    @classmethod
    def ellipse(cls, a: float, b: float, center: complex = 0j, ccw: bool = True,
                marks: Optional[Mapping[str, float]] = None) -> "CurveSpec":
        return cls(family="ellipse", axes=(a, b), center=center, ccw=ccw, marks=marks)

    @classmethod
    def log_spiral(cls, delta: float, r_outer: float = 1.0, r_inner: float = 1e-8,
                   center: complex = 0j, ccw: bool = True) -> "CurveSpec":
        return cls(family="log_spiral", delta=delta, r_outer=r_outer,
                   r_inner=r_inner, center=center, ccw=ccw)

    @classmethod
    def oscillating_spiral(cls, delta_minus: float, delta_plus: float,
                           omega: float = 3.0,
                           r_outer: float = math.exp(-1.0),
                           r_inner: float = math.exp(-116.0),
                           center: complex = 0j, ccw: bool = True) -> "CurveSpec":
        return cls(family="oscillating_spiral", delta_minus=delta_minus,
                   delta_plus=delta_plus, omega=omega, r_outer=r_outer,
                   r_inner=r_inner, center=center, ccw=ccw)

    @classmethod
    def polyline(cls, points: Sequence[complex], ccw: bool = True) -> "CurveSpec":
        return cls(family="polyline", points=tuple(complex(p) for p in points), ccw=ccw)


@dataclass(frozen=True, eq=False)
class DiscretizedCurve:
    """Sampled Jordan curve: nodes (counter-clockwise unless built otherwise),
    arc-length cell weights, registered distinguished points, total length."""

    nodes: np.ndarray
    arclen_weights: np.ndarray
    distinguished_points: dict[str, int]
    total_length: float
    diameter: float
    spec: Optional[CurveSpec] = None

    def __len__(self) -> int:
        return len(self.nodes)

    def index_of(self, label: str) -> int:
        try:
            return self.distinguished_points[label]
        except KeyError:
            raise ConfigurationError(f"no distinguished point labeled {label!r}") from None

    def point(self, label: str) -> complex:
        return complex(self.nodes[self.index_of(label)])


@dataclass(frozen=True, eq=False)
class ArgumentBranch:
    """Continuous branch of arg(tau - t) along the curve minus the point t.

    ``values[k]`` is the unwrapped argument at node k (nan where masked);
    ``mask[k]`` is False exactly at nodes coinciding with t.
    """

    values: np.ndarray
    mask: np.ndarray
    t_index: int
    t_label: str

    def shifted(self, turns: int) -> "ArgumentBranch":
        """Same branch plus 2*pi*turns (used to test branch invariance)."""
        return ArgumentBranch(self.values + 2.0 * np.pi * turns, self.mask,
                              self.t_index, self.t_label)


@dataclass(frozen=True, eq=False)
class SpiralityData:
    """Estimated spirality indices with least-squares fit diagnostics."""

    delta_minus: float
    delta_plus: float
    fit_residual_minus: float
    fit_residual_plus: float
    x_grid: np.ndarray
    W_values: np.ndarray


# ---------------------------------------------------------------------------
# model argument functions (closed forms used both by builders and as oracles)
# ---------------------------------------------------------------------------

def model_argument(spec: CurveSpec, radii: np.ndarray) -> np.ndarray:
    """Closed-form arg(tau - t) of the primary arm at the given radii."""
    radii = np.asarray(radii, dtype=float)
    if spec.family == "log_spiral":
        return -spec.delta * np.log(radii)
    if spec.family == "oscillating_spiral":
        dbar = 0.5 * (spec.delta_minus + spec.delta_plus)
        amp = 0.5 * (spec.delta_plus - spec.delta_minus)
        u = -np.log(radii)
        lu = np.log(u)
        w = spec.omega
        osc = u * (np.sin(w * lu) - w * np.cos(w * lu)) / (1.0 + w * w)
        return dbar * u + amp * osc
    raise ParameterError(f"family {spec.family!r} has no closed-form argument model")


def _model_arg_slope(spec: CurveSpec) -> Callable[[np.ndarray], np.ndarray]:
    """r * d(arg)/dr for the spiral families (enters the arc-length element)."""
    if spec.family == "log_spiral":
        return lambda r: np.full_like(np.asarray(r, float), -spec.delta)
    dbar = 0.5 * (spec.delta_minus + spec.delta_plus)
    amp = 0.5 * (spec.delta_plus - spec.delta_minus)
    w = spec.omega

    def slope(r: np.ndarray) -> np.ndarray:
        u = -np.log(np.asarray(r, float))
        return -(dbar + amp * np.sin(w * np.log(u)))

    return slope


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_curve(spec: CurveSpec, n: int) -> DiscretizedCurve:
    """Sample the curve described by ``spec`` into n nodes with arc weights.

    Registers distinguished points: ``t`` (and ``u`` opposite it) for the
    smooth and spiral families, ``v0``, ``v1``, ... for polyline vertices.
    """
    if n < 4:
        raise ParameterError("need n >= 4 nodes")
    if spec.family in ("log_spiral", "oscillating_spiral") and n < 64:
        raise ParameterError("spiral models need n >= 64 nodes")
    if spec.family == "circle":
        nodes, pairlen, marks = _build_circle(spec, n)
    elif spec.family == "ellipse":
        nodes, pairlen, marks = _build_ellipse(spec, n)
    elif spec.family in ("log_spiral", "oscillating_spiral"):
        nodes, pairlen, marks = _build_spiral(spec, n)
    elif spec.family == "polyline":
        nodes, pairlen, marks = _build_polyline(spec, n)
    else:
        raise ParameterError(f"unknown curve family {spec.family!r}")

    if np.min(np.abs(np.roll(nodes, -1) - nodes)) == 0.0:
        raise GeometryError("coincident consecutive nodes")
    if not Polygon(np.c_[nodes.real, nodes.imag]).is_valid:
        raise GeometryError("sampled curve self-intersects")

    area = _shoelace(nodes)
    if (area > 0.0) != spec.ccw:
        nodes, pairlen, marks = _reverse(nodes, pairlen, marks)

    weights = 0.5 * (pairlen + np.roll(pairlen, 1))
    hull = ConvexHull(np.c_[nodes.real, nodes.imag])
    hx = nodes.real[hull.vertices]
    hy = nodes.imag[hull.vertices]
    best = 0.0
    chunk = max(1, 2 ** 21 // max(1, len(hx)))
    for s in range(0, len(hx), chunk):
        d2 = ((hx[s:s + chunk, None] - hx[None, :]) ** 2
              + (hy[s:s + chunk, None] - hy[None, :]) ** 2)
        best = max(best, float(d2.max()))
    diam = math.sqrt(best)
    return DiscretizedCurve(nodes=nodes, arclen_weights=weights,
                            distinguished_points=marks,
                            total_length=float(pairlen.sum()),
                            diameter=diam, spec=spec)


def _shoelace(nodes: np.ndarray) -> float:
    x, y = nodes.real, nodes.imag
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _reverse(nodes, pairlen, marks):
    n = len(nodes)
    order = np.concatenate([[0], np.arange(n - 1, 0, -1)])
    new_pair = pairlen[(order - 1) % n]
    new_marks = {lab: int(np.where(order == idx)[0][0]) for lab, idx in marks.items()}
    return nodes[order], new_pair, new_marks


def _angle_marks(spec: CurveSpec, n: int) -> dict[str, int]:
    marks = {"t": 0, "u": n // 2}
    if spec.marks:
        step = 2.0 * np.pi / n
        for lab, ang in spec.marks.items():
            marks[lab] = int(round((ang % (2.0 * np.pi)) / step)) % n
    return marks


def _build_circle(spec: CurveSpec, n: int):
    if spec.radius <= 0:
        raise ParameterError("circle radius must be positive")
    theta = 2.0 * np.pi * np.arange(n) / n
    nodes = spec.center + spec.radius * np.exp(1j * theta)
    pairlen = np.full(n, 2.0 * np.pi * spec.radius / n)
    return nodes, pairlen, _angle_marks(spec, n)


def _build_ellipse(spec: CurveSpec, n: int):
    if spec.axes is None or min(spec.axes) <= 0:
        raise ParameterError("ellipse axes must be positive")
    a, b = spec.axes
    theta = 2.0 * np.pi * np.arange(n) / n
    nodes = spec.center + a * np.cos(theta) + 1j * b * np.sin(theta)
    speed = lambda th: np.sqrt((a * np.sin(th)) ** 2 + (b * np.cos(th)) ** 2)
    pairlen = _cell_lengths(theta, np.append(theta[1:], 2.0 * np.pi), speed)
    return nodes, pairlen, _angle_marks(spec, n)


def _cell_lengths(lo: np.ndarray, hi: np.ndarray, speed) -> np.ndarray:
    """Gauss-Legendre arc length of each parameter cell [lo_i, hi_i]."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    return half * (speed(pts) @ _GL_WEIGHTS)


def _build_spiral(spec: CurveSpec, n: int):
    r0, r1 = spec.r_outer, spec.r_inner
    if r0 is None or r1 is None or not (0 < r1 < r0):
        raise ParameterError("need 0 < r_inner < r_outer")
    if spec.family == "oscillating_spiral":
        if spec.delta_minus is None or spec.delta_plus is None \
                or spec.delta_minus > spec.delta_plus:
            raise ParameterError("need delta_minus <= delta_plus")
        if r0 >= math.exp(-0.5):
            raise ParameterError("oscillating model needs r_outer <= exp(-1/2)")
    elif spec.delta is None:
        raise ParameterError("log spiral needs delta")

    n_circ = max(8, n // 8)
    n_arm = (n - 1 - n_circ) // 2
    n_circ = n - 1 - 2 * n_arm
    r = np.geomspace(r1, r0, n_arm)
    phi = model_argument(spec, r)
    arm_a = spec.center + r * np.exp(1j * phi)
    th0 = float(model_argument(spec, np.array([r0]))[0])
    th = th0 + np.pi * np.arange(1, n_circ + 1) / (n_circ + 1)
    outer = spec.center + r0 * np.exp(1j * th)
    arm_b = spec.center + r[::-1] * np.exp(1j * (phi[::-1] + np.pi))
    nodes = np.concatenate([[spec.center], arm_a, outer, arm_b])

    slope = _model_arg_slope(spec)
    arm_pair = _cell_lengths(r[:-1], r[1:], lambda rr: np.sqrt(1.0 + slope(rr) ** 2))
    circ_step = r0 * np.pi / (n_circ + 1)
    pairlen = np.concatenate([
        [r1],                       # chord from t to the innermost arm-A node
        arm_pair,                   # along arm A
        [circ_step],                # arm A end to first outer-arc node
        np.full(n_circ - 1, circ_step),
        [circ_step],                # last outer-arc node to arm B end
        arm_pair[::-1],             # along arm B, inward
        [r1],                       # innermost arm-B node back to t
    ])
    assert len(pairlen) == len(nodes)
    marks = {"t": 0, "u": 1 + n_arm + n_circ // 2}
    return nodes, pairlen, marks


def _build_polyline(spec: CurveSpec, n: int):
    if spec.points is None or len(spec.points) < 3:
        raise ParameterError("polyline needs at least 3 vertices")
    pts = np.asarray(spec.points, dtype=complex)
    if n < len(pts):
        raise ParameterError("n must be at least the vertex count")
    edges = np.roll(pts, -1) - pts
    lengths = np.abs(edges)
    if np.min(lengths) == 0:
        raise ParameterError("polyline has a zero-length edge")
    # apportion n nodes over edges by length, one minimum per edge
    quota = lengths / lengths.sum() * n
    counts = np.maximum(1, np.floor(quota).astype(int))
    while counts.sum() > n:
        counts[np.argmax(counts)] -= 1
    while counts.sum() < n:
        counts[np.argmax(quota - counts)] += 1
    nodes, pairlen, marks = [], [], {}
    for i, (p, e, m) in enumerate(zip(pts, edges, counts)):
        marks[f"v{i}"] = len(nodes)
        frac = np.arange(m) / m
        nodes.extend(p + frac * e)
        pairlen.extend(np.full(m, lengths[i] / m))
    marks["t"] = 0
    return np.asarray(nodes, complex), np.asarray(pairlen, float), marks


# ---------------------------------------------------------------------------
# geometric functionals
# ---------------------------------------------------------------------------

def winding_number(curve: DiscretizedCurve, z0: complex) -> int:
    """Winding number of the node sequence about z0 (z0 off the curve)."""
    rel = curve.nodes - z0
    if np.min(np.abs(rel)) == 0.0:
        raise ParameterError("z0 lies on a node")
    ang = np.unwrap(np.angle(np.append(rel, rel[:1])))
    return int(round((ang[-1] - ang[0]) / (2.0 * np.pi)))


def carleson_constant(curve: DiscretizedCurve,
                      radius_grid: Optional[np.ndarray] = None) -> float:
    """max over nodes t and grid radii R of |Gamma(t, R)| / R, where
    |Gamma(t, R)| sums the arc cells within distance R of t."""
    if radius_grid is None:
        radius_grid = np.geomspace(0.02, 1.0, 50) * curve.diameter
    radius_grid = np.asarray(radius_grid, dtype=float)
    if radius_grid.size == 0:
        raise ParameterError("empty radius grid")
    if np.any(radius_grid <= 0) or np.any(np.diff(radius_grid) < 0):
        raise ParameterError("radius grid must be positive and sorted ascending")
    nodes, w = curve.nodes, curve.arclen_weights
    best = 0.0
    chunk = max(1, 2 ** 22 // len(nodes))
    for s in range(0, len(nodes), chunk):
        d = np.abs(nodes[None, :] - nodes[s:s + chunk, None])
        for r in radius_grid:
            mass = (d < r) @ w
            best = max(best, float(mass.max()) / r)
    return best


def unwrap_argument(curve: DiscretizedCurve, t_label: str) -> ArgumentBranch:
    """Continuous branch of arg(tau_k - t) along the curve minus t.

    Traversal starts at the node after t (curve order); the base value there
    is the principal argument. Nodes coinciding with t are masked out.
    """
    i_t = curve.index_of(t_label)
    t = curve.nodes[i_t]
    n = len(curve.nodes)
    order = (i_t + 1 + np.arange(n)) % n
    rel = curve.nodes[order] - t
    keep = np.abs(rel) > 0.0
    ang = np.unwrap(np.angle(rel[keep]))
    values = np.full(n, np.nan)
    values[order[keep]] = ang
    mask = np.zeros(n, dtype=bool)
    mask[order[keep]] = True
    return ArgumentBranch(values=values, mask=mask, t_index=i_t, t_label=t_label)


def eta(curve: DiscretizedCurve, t_label: str,
        branch: Optional[ArgumentBranch] = None) -> np.ndarray:
    """eta_t(tau_k) = exp(-arg(tau_k - t)) on the chosen branch (nan at t)."""
    if branch is None:
        branch = unwrap_argument(curve, t_label)
    return np.exp(-branch.values)


REGIME_CAP = 0.25


def _log_w0(log_eta: np.ndarray, radii: np.ndarray, x: float,
            R_grid: np.ndarray, h: float, r_cap: float = np.inf) -> float:
    """log of the finite-R surrogate of (W_t^0 eta_t)(x); -inf if unresolvable.

    Radii are dropped when either shell is empty or leaves the local regime
    (radius beyond r_cap): the defining limsup runs R -> 0, so shells near the
    curve diameter say nothing about behavior at t and would contaminate the
    surrogate with the bounded far-field argument variation.
    """
    best = -np.inf
    for R in R_grid:
        if R > r_cap or x * R > r_cap:
            continue
        near = (radii >= x * R * (1.0 - h)) & (radii <= x * R * (1.0 + h))
        base = (radii >= R * (1.0 - h)) & (radii <= R * (1.0 + h))
        if not near.any() or not base.any():
            continue
        best = max(best, float(log_eta[near].max() - log_eta[base].min()))
    return best


def W0(curve: DiscretizedCurve, t_label: str, x: float, R_grid: np.ndarray,
       shell_halfwidth: float = SHELL_HALF_WIDTH,
       branch: Optional[ArgumentBranch] = None) -> float:
    """Finite-scale surrogate of the oscillation functional:
    max over grid radii R of (max eta on the shell at x*R) / (min eta on the
    shell at R), with relative shell half-width ``shell_halfwidth``.
    Radii whose shells contain no node are dropped."""
    if x <= 0:
        raise ParameterError("x must be positive")
    if branch is None:
        branch = unwrap_argument(curve, t_label)
    i_t = branch.t_index
    rel = curve.nodes - curve.nodes[i_t]
    radii = np.abs(rel)[branch.mask]
    log_eta = -branch.values[branch.mask]
    out = _log_w0(log_eta, radii, x, np.asarray(R_grid, float), shell_halfwidth,
                  REGIME_CAP * curve.diameter)
    if not np.isfinite(out):
        raise ResolutionError(f"no usable shells for x={x}")
    return float(np.exp(out))


def default_radius_grid(curve: DiscretizedCurve, count: int = 16) -> np.ndarray:
    return np.geomspace(1e-1, 1e-4, count) * curve.diameter


def spirality_indices(curve: DiscretizedCurve, t_label: str,
                      x_grid_small: Optional[np.ndarray] = None,
                      x_grid_large: Optional[np.ndarray] = None,
                      R_grid: Optional[np.ndarray] = None,
                      shell_halfwidth: float = SHELL_HALF_WIDTH,
                      branch: Optional[ArgumentBranch] = None) -> SpiralityData:
    """Estimate (delta_minus, delta_plus) at t as the least-squares slopes of
    log W0(x) against log x over the small-x and large-x grids."""
    if x_grid_small is None:
        x_grid_small = np.geomspace(0.005, 0.5, 12)
    if x_grid_large is None:
        x_grid_large = np.geomspace(2.0, 200.0, 12)
    x_grid_small = np.asarray(x_grid_small, float)
    x_grid_large = np.asarray(x_grid_large, float)
    if np.any(x_grid_small <= 0) or np.any(x_grid_small >= 1):
        raise ParameterError("x_grid_small must lie in (0, 1)")
    if np.any(x_grid_large <= 1):
        raise ParameterError("x_grid_large must lie in (1, inf)")
    for g in (x_grid_small, x_grid_large):
        if g.max() / g.min() < 100.0 * (1 - 1e-12):
            raise ParameterError("each x grid must span at least two decades")
    if R_grid is None:
        R_grid = default_radius_grid(curve)
    R_grid = np.asarray(R_grid, float)

    if branch is None:
        branch = unwrap_argument(curve, t_label)
    rel = curve.nodes - curve.nodes[branch.t_index]
    radii = np.abs(rel)[branch.mask]
    log_eta = -branch.values[branch.mask]

    fits = {}
    used_x, used_w = [], []
    r_cap = REGIME_CAP * curve.diameter
    for side, grid in (("minus", x_grid_small), ("plus", x_grid_large)):
        lx, lw = [], []
        for x in grid:
            v = _log_w0(log_eta, radii, float(x), R_grid, shell_halfwidth, r_cap)
            if np.isfinite(v):
                lx.append(math.log(x))
                lw.append(v)
        if len(lx) < 3:
            raise ResolutionError(
                f"fewer than 3 usable x values on the {side} side")
        lx, lw = np.asarray(lx), np.asarray(lw)
        slope, intercept = np.polyfit(lx, lw, 1)
        resid = float(np.sqrt(np.mean((lw - slope * lx - intercept) ** 2)))
        fits[side] = (float(slope), resid)
        used_x.extend(np.exp(lx))
        used_w.extend(np.exp(lw))

    dm, rm = fits["minus"]
    dp, rp = fits["plus"]
    if dm > dp:
        # the two sides are fitted independently, so ordering can be lost to
        # estimation noise; small violations are averaged away, large ones
        # mean the curve is not resolved at these scales
        if dm - dp < 0.1:
            dm = dp = 0.5 * (dm + dp)
        else:
            raise ResolutionError(
                f"estimated delta_minus {dm:.4f} exceeds delta_plus {dp:.4f}")
    return SpiralityData(delta_minus=dm, delta_plus=dp,
                         fit_residual_minus=rm, fit_residual_plus=rp,
                         x_grid=np.asarray(used_x), W_values=np.asarray(used_w))
