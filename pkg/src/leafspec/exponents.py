"""Variable exponents p(.) and the Luxemburg-Nakano norm on sampled functions.

The norm of f in the discrete model is the unique lambda > 0 with

    sum_k (|f_k| w_k / lambda)^(p_k) * arclen_k = 1,

which reproduces the classical discrete L^p norm for constant p.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from .curves import ArgumentBranch, DiscretizedCurve, unwrap_argument
from .errors import ParameterError

_MAX_P = 1e12  # sanity bound standing in for "p finite"


@dataclass(frozen=True, eq=False)
class Exponent:
    """Exponent function on a curve: constant or sampled at the nodes."""

    kind: str                      # "constant" | "sampled"
    p: Optional[float] = None
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind == "constant":
            if self.p is None or not (1.0 < self.p < _MAX_P):
                raise ParameterError("constant exponent must lie in (1, inf)")
        elif self.kind == "sampled":
            v = np.asarray(self.values, dtype=float)
            if v.ndim != 1 or not np.all(np.isfinite(v)):
                raise ParameterError("sampled exponent must be a finite 1-d array")
            if not np.all((v > 1.0) & (v < _MAX_P)):
                raise ParameterError("sampled exponent values must lie in (1, inf)")
            object.__setattr__(self, "values", v)
        else:
            raise ParameterError(f"unknown exponent kind {self.kind!r}")

    @classmethod
    def constant(cls, p: float) -> "Exponent":
        return cls(kind="constant", p=float(p))

    @classmethod
    def sampled(cls, values: np.ndarray) -> "Exponent":
        return cls(kind="sampled", values=np.asarray(values, dtype=float))

    @property
    def p_min(self) -> float:
        return self.p if self.kind == "constant" else float(self.values.min())

    @property
    def p_max(self) -> float:
        return self.p if self.kind == "constant" else float(self.values.max())

    def on_nodes(self, curve: DiscretizedCurve) -> np.ndarray:
        if self.kind == "constant":
            return np.full(len(curve), self.p)
        if len(self.values) != len(curve):
            raise ParameterError("sampled exponent is not aligned with the curve")
        return self.values

    def at(self, curve: DiscretizedCurve, label: str) -> float:
        return float(self.on_nodes(curve)[curve.index_of(label)])


@dataclass(frozen=True, eq=False)
class WeightSamples:
    """Power-type weight |tau - t|^Re(gamma) * eta_t(tau)^Im(gamma) at the nodes.

    ``mask`` is False at nodes coinciding with t, where the weight degenerates.
    """

    values: np.ndarray
    mask: np.ndarray
    t_label: str
    gamma: complex


def log_perturbation(curve: DiscretizedCurve, anchor_label: str,
                     base: float = 2.0, amplitude: float = 1.0) -> Exponent:
    """p(tau) = base + amplitude / (1 - log|tau - anchor|), p(anchor) = base.

    Oscillation decays like 1/(-log d): the canonical exponent that meets the
    Dini-Lipschitz condition with a nonzero constant. The curve must have
    diameter < e so the denominator stays positive.
    """
    if curve.diameter >= np.e:
        raise ParameterError("log perturbation needs curve diameter < e")
    d = np.abs(curve.nodes - curve.point(anchor_label))
    with np.errstate(divide="ignore"):
        vals = base + amplitude / (1.0 - np.log(d))
    vals[d == 0.0] = base
    return Exponent.sampled(vals)


def holder_perturbation(curve: DiscretizedCurve, anchor_label: str,
                        base: float = 2.0, amplitude: float = 1.0,
                        exponent: float = 0.5) -> Exponent:
    """p(tau) = base + amplitude * |tau - anchor|^exponent (Holder beats log)."""
    d = np.abs(curve.nodes - curve.point(anchor_label))
    return Exponent.sampled(base + amplitude * d ** exponent)


def dini_lipschitz_constant(p: Exponent, curve: DiscretizedCurve) -> float:
    """max over node pairs with |tau - t| <= 1/2 of |p(tau) - p(t)| * (-log|tau - t|)."""
    if p.kind == "constant":
        return 0.0
    vals = p.on_nodes(curve)
    nodes = curve.nodes
    best = 0.0
    found = False
    chunk = max(1, 2 ** 22 // len(nodes))
    for s in range(0, len(nodes), chunk):
        d = np.abs(nodes[None, :] - nodes[s:s + chunk, None])
        sel = (d > 0.0) & (d <= 0.5)
        if sel.any():
            found = True
            dp = np.abs(vals[None, :] - vals[s:s + chunk, None])
            best = max(best, float((dp[sel] * (-np.log(d[sel]))).max()))
    if not found:
        warnings.warn("no node pairs with |tau - t| <= 1/2; constant is vacuous")
        return 0.0
    return best


def conjugate(p: Exponent) -> Exponent:
    """Pointwise conjugate exponent q with 1/p + 1/q = 1."""
    if p.kind == "constant":
        return Exponent.constant(p.p / (p.p - 1.0))
    return Exponent.sampled(p.values / (p.values - 1.0))


def phi_weight(curve: DiscretizedCurve, t_label: str, gamma: complex,
               branch: Optional[ArgumentBranch] = None) -> WeightSamples:
    """Samples of |tau - t|^Re(gamma) * eta_t(tau)^Im(gamma); the node at t is masked."""
    if branch is None:
        branch = unwrap_argument(curve, t_label)
    rel = curve.nodes - curve.nodes[branch.t_index]
    rad = np.abs(rel)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = rad ** gamma.real * np.exp(-branch.values) ** gamma.imag
    vals[~branch.mask] = np.nan
    return WeightSamples(values=vals, mask=branch.mask.copy(),
                         t_label=t_label, gamma=complex(gamma))


def luxemburg_norm(f: np.ndarray, p: Exponent,
                   w: Union[WeightSamples, np.ndarray, None],
                   curve: DiscretizedCurve) -> float:
    """Luxemburg-Nakano norm of the node samples f with weight w.

    Solves the modular equation rho(lambda) = 1 by bracketing and bisection
    (Brent) to 1e-10 relative accuracy; returns 0 for f identically zero.
    Masked weight nodes are excluded from the modular.
    """
    f = np.asarray(f)
    if len(f) != len(curve):
        raise ParameterError("f is not aligned with the curve nodes")
    pk = p.on_nodes(curve)
    cells = curve.arclen_weights
    if w is None:
        g = np.abs(f).astype(float)
    elif isinstance(w, WeightSamples):
        g = np.where(w.mask, np.abs(f) * w.values, 0.0)
        pk = pk[w.mask]
        cells = cells[w.mask]
        g = g[w.mask]
    else:
        g = np.abs(f) * np.asarray(w, dtype=float)
    if not (np.all(np.isfinite(g)) and np.all(np.isfinite(cells))):
        raise ParameterError("non-finite samples in the modular")
    gmax = float(g.max(initial=0.0))
    if gmax == 0.0:
        return 0.0

    gn = g / gmax  # rescale so the root for gn lies in (0, L^(1/p_min)]

    def modular_minus_one(lam: float) -> float:
        with np.errstate(over="ignore"):
            return float(np.sum((gn / lam) ** pk * cells)) - 1.0

    hi = max(1.0, float(cells.sum())) ** (1.0 / p.p_min) * 2.0
    lo = hi
    while modular_minus_one(lo) < 0.0:
        lo /= 2.0
        if lo < 1e-300:
            return 0.0
    while modular_minus_one(hi) > 0.0:
        hi *= 2.0
    lam = brentq(modular_minus_one, lo, hi, rtol=1e-12, maxiter=200)
    return gmax * float(lam)
