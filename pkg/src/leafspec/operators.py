"""Dense discretizations: the Cauchy operator, assembled expressions,
minimum-singular-value trends, and the discrete maximal function.

The Cauchy matrix is a Nystrom scheme for the principal-value integral
(1/pi i) PV int f(tau)/(tau - t) dtau. Off the diagonal it uses the
chord-midpoint increments dtau_k = (tau_{k+1} - tau_{k-1})/2; the singular
cell is closed by a centered finite difference of the regularized kernel
(f(tau) - f(t))/(tau - t), and the diagonal is then fixed by the row-sum
rule so that S applied to the constant 1 returns exactly 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._parallel import thread_count
from .curves import CurveSpec, DiscretizedCurve, build_curve
from .errors import ConfigurationError, GeometryError, ParameterError
from .symbols import (GenMult, GenS, Identity, OperatorExpr, PCCoefficient,
                      Product, Scale, Sum)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """n*N x n*N matrix bound to a discretized curve."""

    matrix: np.ndarray
    curve: DiscretizedCurve
    size_N: int
    provenance: str

    @property
    def shape(self):
        return self.matrix.shape


def discrete_S(curve: DiscretizedCurve) -> DenseOperator:
    """Discretized Cauchy singular integral operator on the curve nodes."""
    nodes = curve.nodes
    n = len(nodes)
    if n < 32:
        raise ParameterError("need at least 32 nodes")
    dtau = (np.roll(nodes, -1) - np.roll(nodes, 1)) / 2.0
    denom = nodes[None, :] - nodes[:, None]
    off = ~np.eye(n, dtype=bool)
    if np.min(np.abs(denom[off])) == 0.0:
        raise GeometryError("coincident nodes")
    denom[~off] = 1.0
    mat = (1.0 / (np.pi * 1j)) * dtau[None, :] / denom
    mat[~off] = 0.0
    # singular-cell closure: the regularized kernel at tau = t is f'(t); use
    # the centered difference (f_{j+1} - f_{j-1}) / (tau_{j+1} - tau_{j-1})
    jj = np.arange(n)
    gap = nodes[(jj + 1) % n] - nodes[(jj - 1) % n]
    c = (1.0 / (np.pi * 1j)) * dtau / gap
    mat[jj, (jj + 1) % n] += c
    mat[jj, (jj - 1) % n] -= c
    mat[jj, jj] = 1.0 - mat.sum(axis=1)
    return DenseOperator(matrix=mat, curve=curve, size_N=1, provenance="S")


def assemble_operator(expr: OperatorExpr, curve: DiscretizedCurve,
                      coefficients: dict[str, PCCoefficient]) -> DenseOperator:
    """Dense matrix of an operator expression, mirroring the symbol recursion:
    multiplications become block-diagonal samplings, S acts componentwise."""
    sizes = {c.size for c in coefficients.values()}
    if len(sizes) > 1:
        raise ConfigurationError("coefficients disagree on matrix size")
    N = sizes.pop() if sizes else 1
    n = len(curve)
    dim = n * N
    s_cache: Optional[np.ndarray] = None

    def gen_s() -> np.ndarray:
        nonlocal s_cache
        if s_cache is None:
            s_cache = discrete_S(curve).matrix
        if N == 1:
            return s_cache
        return np.kron(np.eye(N), s_cache)

    def gen_mult(name: str) -> np.ndarray:
        try:
            coeff = coefficients[name]
        except KeyError:
            raise ConfigurationError(f"unresolved coefficient {name!r}") from None
        vals = coeff.sample_on(curve)          # (n, N, N)
        out = np.zeros((dim, dim), dtype=complex)
        for i in range(N):
            for j in range(N):
                d = np.arange(n)
                out[i * n + d, j * n + d] = vals[:, i, j]
        return out

    def rec(node) -> np.ndarray:
        if isinstance(node, Identity):
            return np.eye(dim, dtype=complex)
        if isinstance(node, GenS):
            return gen_s()
        if isinstance(node, GenMult):
            return gen_mult(node.coeff)
        if isinstance(node, Sum):
            return sum((rec(t) for t in node.terms),
                       np.zeros((dim, dim), dtype=complex))
        if isinstance(node, Product):
            out = np.eye(dim, dtype=complex)
            for f in node.factors:
                out = out @ rec(f)
            return out
        if isinstance(node, Scale):
            return node.factor * rec(node.child)
        raise ConfigurationError(f"unknown expression node {node!r}")

    return DenseOperator(matrix=rec(expr), curve=curve, size_N=N,
                         provenance=repr(expr))


def min_singular_value(op: DenseOperator) -> float:
    """Smallest singular value of the dense matrix (deterministic)."""
    if not np.all(np.isfinite(op.matrix)):
        raise ParameterError("operator has non-finite entries")
    return float(np.linalg.svd(op.matrix, compute_uv=False)[-1])


@dataclass(frozen=True)
class TrendReport:
    sizes: tuple[int, ...]
    min_svs: tuple[float, ...]
    trend: str    # "bounded_below" | "decaying" | "inconclusive"

    def to_json_dict(self) -> dict:
        return {"sizes": list(self.sizes), "min_svs": list(self.min_svs),
                "trend": self.trend}


def classify_trend(min_svs: Sequence[float]) -> str:
    first, last = min_svs[0], min_svs[-1]
    if last >= 0.5 * first and last >= 1e-3:
        return "bounded_below"
    if last <= 0.5 * first:
        return "decaying"
    return "inconclusive"


def finite_section_trend(expr: OperatorExpr, curve_spec: CurveSpec,
                         coefficients: dict[str, PCCoefficient],
                         sizes: Sequence[int]) -> TrendReport:
    """Assemble the expression at each size and track the smallest singular
    value: bounded-below trends are the numerical signature of invertibility,
    decaying trends of its failure. Sizes run in parallel threads (capped by
    LEAFSPEC_THREADS)."""
    sizes = tuple(int(s) for s in sizes)
    if any(s < 64 for s in sizes) or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ParameterError("sizes must be increasing and each >= 64")

    def one(n: int) -> float:
        curve = build_curve(curve_spec, n)
        return min_singular_value(assemble_operator(expr, curve, coefficients))

    workers = min(thread_count(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            svs = tuple(pool.map(one, sizes))
    else:
        svs = tuple(one(s) for s in sizes)
    return TrendReport(sizes=sizes, min_svs=svs, trend=classify_trend(svs))


def discrete_maximal(f: np.ndarray, curve: DiscretizedCurve,
                     eps_grid: Sequence[float]) -> np.ndarray:
    """(Mf)(t_j) = max over eps of the average of |f| over the ball
    {|tau_k - t_j| < eps} with arc-length cell weights as the measure."""
    f = np.asarray(f)
    if len(f) != len(curve):
        raise ParameterError("f is not aligned with the curve nodes")
    eps_grid = np.asarray(eps_grid, dtype=float)
    if eps_grid.size == 0 or np.any(eps_grid <= 0):
        raise ParameterError("eps grid must be positive")
    nodes, w = curve.nodes, curve.arclen_weights
    absf = np.abs(f)
    out = np.zeros(len(curve))
    chunk = max(1, 2 ** 22 // len(nodes))
    for s in range(0, len(nodes), chunk):
        d = np.abs(nodes[None, :] - nodes[s:s + chunk, None])
        best = np.zeros(d.shape[0])
        for eps in eps_grid:
            ball = d < eps
            mass = ball @ w
            avg = np.divide(ball @ (absf * w), mass, out=np.zeros_like(mass),
                            where=mass > 0)
            best = np.maximum(best, avg)
        out[s:s + chunk] = best
    return out
