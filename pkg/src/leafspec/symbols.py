"""Operator expressions over {S, aI} and their 2N x 2N symbol calculus.

An operator expression is a small immutable AST over the generators: the
Cauchy operator S and multiplications by piecewise-constant N x N matrix
coefficients. At a point t and a leaf coordinate z, the symbol map sends

    S   ->  diag(E, -E)
    aI  ->  [[a+ z + a- (1-z),   (a+ - a-) w],
             [(a+ - a-) w,       a+ (1-z) + a- z]],   w^2 = z (1-z),

with a-+ the one-sided limits at t, and extends multiplicatively and
additively over the AST. The Fredholm test evaluates det of the symbol over
the bundle of leaves attached to the coefficient jump points; determinants
are independent of the square-root branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .curves import DiscretizedCurve
from .errors import ConfigurationError, ContractError, ParameterError
from .leaves import Leaf, leaf_boundary_sample, leaf_contains, median_point

# ---------------------------------------------------------------------------
# piecewise-constant coefficients
# ---------------------------------------------------------------------------


def _as_matrix(value, size: int) -> np.ndarray:
    m = np.atleast_2d(np.asarray(value, dtype=complex))
    if m.shape != (size, size):
        raise ConfigurationError(f"coefficient piece must be {size}x{size}")
    return m


@dataclass(frozen=True, eq=False)
class PCCoefficient:
    """Piecewise-constant N x N matrix function on a curve.

    ``pieces`` lists (arc_start_label, value); piece i occupies the arc from
    its start label to the next piece's start label, following orientation.
    One-sided limits at a start label t: a(t-0) is the previous piece's value
    (the side from which the orientation arrives), a(t+0) the starting piece's.
    """

    size: int
    pieces: tuple[tuple[str, np.ndarray], ...]

    @classmethod
    def scalar(cls, pieces: Iterable[tuple[str, complex]]) -> "PCCoefficient":
        return cls(size=1, pieces=tuple(
            (lab, _as_matrix(v, 1)) for lab, v in pieces))

    @classmethod
    def matrix(cls, size: int, pieces: Iterable[tuple[str, np.ndarray]]) -> "PCCoefficient":
        return cls(size=size, pieces=tuple(
            (lab, _as_matrix(v, size)) for lab, v in pieces))

    def start_indices(self, curve: DiscretizedCurve) -> list[int]:
        idx = [curve.index_of(lab) for lab, _ in self.pieces]
        if len(self.pieces) > 1 and any(b <= a for a, b in zip(idx, idx[1:])):
            raise ConfigurationError(
                "piece start labels must be strictly ordered along orientation")
        return idx

    def boundary_labels(self) -> list[str]:
        return [lab for lab, _ in self.pieces]

    def _piece_covering(self, curve: DiscretizedCurve, node_index: int) -> int:
        starts = self.start_indices(curve)
        for i in range(len(starts) - 1, -1, -1):
            if starts[i] <= node_index:
                return i
        return len(starts) - 1  # wrap-around: before the first start

    def one_sided_limits(self, curve: DiscretizedCurve,
                         label: str) -> tuple[np.ndarray, np.ndarray]:
        """(a(t-0), a(t+0)) at a registered point; equal at continuity points."""
        idx = curve.index_of(label)
        starts = self.start_indices(curve)
        if idx in starts:
            i = starts.index(idx)
            return self.pieces[i - 1][1], self.pieces[i][1]
        i = self._piece_covering(curve, idx)
        return self.pieces[i][1], self.pieces[i][1]

    def sample_on(self, curve: DiscretizedCurve) -> np.ndarray:
        """Node samples, shape (n, N, N); a node at an arc start belongs to
        the arc it starts."""
        starts = self.start_indices(curve)
        which = np.searchsorted(starts, np.arange(len(curve)), side="right") - 1
        out = np.empty((len(curve), self.size, self.size), dtype=complex)
        for i, (_, value) in enumerate(self.pieces):
            out[which == i] = value
        out[which < 0] = self.pieces[-1][1]   # wrap-around before the first start
        return out


# ---------------------------------------------------------------------------
# operator expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class GenS:
    pass


@dataclass(frozen=True)
class GenMult:
    coeff: str


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Scale:
    factor: complex
    child: object


OperatorExpr = Union[Identity, GenS, GenMult, Sum, Product, Scale]

P_TREE: OperatorExpr = Scale(0.5, Sum((Identity(), GenS())))
Q_TREE: OperatorExpr = Scale(0.5, Sum((Identity(), Scale(-1.0 + 0j, GenS()))))


def a_P_plus_Q(coeff: str) -> OperatorExpr:
    """The canonical expression aP + Q with P = (I+S)/2, Q = (I-S)/2."""
    return Sum((Product((GenMult(coeff), P_TREE)), Q_TREE))


def _parse_complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(value[0], value[1])
    raise ConfigurationError(f"cannot parse complex scalar from {value!r}")


def parse_expression(obj) -> OperatorExpr:
    """Expression from its JSON form. Generators: {"gen": "S"|"I"|"P"|"Q"} or
    {"gen": "mult", "coeff": name}; combinators: {"op": "sum"|"prod", "args":
    [...]} and {"op": "scale", "factor": c, "child": ...}. P and Q expand to
    (I +- S)/2 at parse time."""
    if not isinstance(obj, dict):
        raise ConfigurationError("expression node must be an object")
    if "gen" in obj:
        gen = obj["gen"]
        if gen == "S":
            return GenS()
        if gen == "I":
            return Identity()
        if gen == "P":
            return P_TREE
        if gen == "Q":
            return Q_TREE
        if gen == "mult":
            if "coeff" not in obj:
                raise ConfigurationError("mult generator needs a coeff name")
            return GenMult(str(obj["coeff"]))
        raise ConfigurationError(f"unknown generator {gen!r}")
    op = obj.get("op")
    if op == "sum":
        return Sum(tuple(parse_expression(a) for a in obj["args"]))
    if op == "prod":
        return Product(tuple(parse_expression(a) for a in obj["args"]))
    if op == "scale":
        return Scale(_parse_complex(obj["factor"]), parse_expression(obj["child"]))
    raise ConfigurationError(f"unknown expression node {obj!r}")


def collect_coefficients(expr: OperatorExpr) -> set[str]:
    if isinstance(expr, GenMult):
        return {expr.coeff}
    if isinstance(expr, Sum):
        return set().union(*(collect_coefficients(t) for t in expr.terms))
    if isinstance(expr, Product):
        return set().union(*(collect_coefficients(f) for f in expr.factors))
    if isinstance(expr, Scale):
        return collect_coefficients(expr.child)
    return set()


def match_scalar_apq(expr: OperatorExpr) -> Optional[str]:
    """Coefficient name when expr is structurally aP + Q, else None."""
    if not isinstance(expr, Sum) or len(expr.terms) != 2:
        return None
    for a, b in (expr.terms, expr.terms[::-1]):
        if (b == Q_TREE and isinstance(a, Product) and len(a.factors) == 2
                and isinstance(a.factors[0], GenMult) and a.factors[1] == P_TREE):
            return a.factors[0].coeff
    return None


# ---------------------------------------------------------------------------
# symbol matrices
# ---------------------------------------------------------------------------

def sigma_S(N: int) -> np.ndarray:
    """Symbol of S: diag(E, -E); an involution."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    return np.diag(np.concatenate([np.ones(N), -np.ones(N)])).astype(complex)


def sqrt_zz(z: complex, branch: int = +1) -> complex:
    """A square root of z*(1-z); ``branch`` flips its sign."""
    return branch * complex(np.sqrt(complex(z) * (1.0 - complex(z))))


def sigma_a(a_minus: np.ndarray, a_plus: np.ndarray, z: complex,
            sqrt_branch: int = +1) -> np.ndarray:
    """Symbol of the multiplication generator at a jump (a-, a+)."""
    am = np.atleast_2d(np.asarray(a_minus, dtype=complex))
    ap = np.atleast_2d(np.asarray(a_plus, dtype=complex))
    if am.shape != ap.shape or am.shape[0] != am.shape[1]:
        raise ParameterError("jump matrices must be square and of equal size")
    w = sqrt_zz(z, sqrt_branch)
    top = ap * z + am * (1.0 - z)
    bot = ap * (1.0 - z) + am * z
    off = (ap - am) * w
    return np.block([[top, off], [off, bot]])


def sigma_c(c: np.ndarray) -> np.ndarray:
    """Two-projections image of a constant matrix: diag(c, c)."""
    c = np.atleast_2d(np.asarray(c, dtype=complex))
    zero = np.zeros_like(c)
    return np.block([[c, zero], [zero, c]])


def sigma_r(N: int) -> np.ndarray:
    """Two-projections image of the first idempotent: diag(E, O)."""
    r = np.zeros((2 * N, 2 * N), dtype=complex)
    r[np.arange(N), np.arange(N)] = 1.0
    return r


def sigma_s(z: complex, N: int, sqrt_branch: int = +1) -> np.ndarray:
    """Two-projections image of the second idempotent:
    [[z E, w E], [w E, (1-z) E]] with w^2 = z(1-z)."""
    w = sqrt_zz(z, sqrt_branch)
    eye = np.eye(N, dtype=complex)
    return np.block([[z * eye, w * eye], [w * eye, (1.0 - z) * eye]])


@dataclass(frozen=True, eq=False)
class SymbolContext:
    """Everything the symbol map needs: the curve (label ordering), the named
    coefficients, and per-point spectral data (p_t, delta_minus, delta_plus)."""

    curve: DiscretizedCurve
    coefficients: dict[str, PCCoefficient]
    point_data: dict[str, tuple[float, float, float]]

    def coefficient(self, name: str) -> PCCoefficient:
        try:
            return self.coefficients[name]
        except KeyError:
            raise ConfigurationError(f"unresolved coefficient {name!r}") from None

    @property
    def size_N(self) -> int:
        sizes = {c.size for c in self.coefficients.values()}
        if len(sizes) > 1:
            raise ConfigurationError("coefficients disagree on matrix size")
        return sizes.pop() if sizes else 1


def sigma_expr(expr: OperatorExpr, t_label: str, z: complex,
               context: SymbolContext, sqrt_branch: int = +1) -> np.ndarray:
    """Symbol of an expression at (t, z): structural recursion over the AST
    with a square-root branch fixed for the whole evaluation."""
    N = context.size_N

    def rec(node) -> np.ndarray:
        if isinstance(node, Identity):
            return np.eye(2 * N, dtype=complex)
        if isinstance(node, GenS):
            return sigma_S(N)
        if isinstance(node, GenMult):
            coeff = context.coefficient(node.coeff)
            if coeff.size != N:
                raise ConfigurationError("coefficient size mismatch")
            am, ap = coeff.one_sided_limits(context.curve, t_label)
            return sigma_a(am, ap, z, sqrt_branch)
        if isinstance(node, Sum):
            return sum((rec(t) for t in node.terms),
                       np.zeros((2 * N, 2 * N), dtype=complex))
        if isinstance(node, Product):
            out = np.eye(2 * N, dtype=complex)
            for f in node.factors:
                out = out @ rec(f)
            return out
        if isinstance(node, Scale):
            return node.factor * rec(node.child)
        raise ConfigurationError(f"unknown expression node {node!r}")

    return rec(expr)


def two_projections_x(p_mat: np.ndarray, q_mat: np.ndarray) -> np.ndarray:
    """x = p q p + (e-p)(e-q)(e-p) for idempotents p, q (checked to 1e-10)."""
    p = np.asarray(p_mat, dtype=complex)
    q = np.asarray(q_mat, dtype=complex)
    eye = np.eye(p.shape[0], dtype=complex)
    for name, m in (("p", p), ("q", q)):
        if np.max(np.abs(m @ m - m)) > 1e-10:
            raise ContractError(f"matrix {name} is not idempotent")
    return p @ q @ p + (eye - p) @ (eye - q) @ (eye - p)


# ---------------------------------------------------------------------------
# bundle determinant test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BundleVerdict:
    fredholm: bool
    min_abs_det: float
    witness: Optional[tuple[str, complex]]
    method: str   # "exact" | "sampled"


def _leaf_z_samples(leaf: Leaf, count: int, strip_rows: int = 5) -> np.ndarray:
    """{0, 1, m}, boundary samples, and an interior strip grid of the leaf."""
    samples = [0.0 + 0j, 1.0 + 0j, median_point(leaf)]
    boundary = leaf_boundary_sample(leaf, max(64, count // 2))
    for piece in boundary.pieces:
        samples.extend(piece.points)
    n_x = max(8, count // (2 * strip_rows))
    x = np.linspace(-1.25, 1.25, n_x)
    fracs = np.linspace(0.0, 1.0, strip_rows)
    for frac in fracs:
        delta = leaf.delta_minus + frac * (leaf.delta_plus - leaf.delta_minus)
        gamma = x + 1j * (1.0 / leaf.p + delta * x)
        zeta = np.exp(2.0 * math.pi * gamma)
        samples.extend((leaf.z2 * zeta - leaf.z1) / (zeta - 1.0))
    return np.asarray(samples, dtype=complex)


def bundle_fredholm_test(expr: OperatorExpr, context: SymbolContext,
                         z_samples_per_leaf: int = 256,
                         det_margin: float = 1e-8,
                         continuity_points: int = 16) -> BundleVerdict:
    """Evaluate det sigma_{t,z}(expr) over the leaf bundle.

    At every coefficient jump point the leaf 𝓁(0, 1; p(t), deltas) is sampled
    ({0, 1, median} + boundary + interior strip); at a grid of continuity
    points the z-independent symbol is checked once. For the scalar family
    aP + Q the sampling verdict is replaced by the exact root test: the
    determinant a+ z + a- (1-z) vanishes on the leaf iff a-/(a- - a+)
    belongs to it.
    """
    if z_samples_per_leaf < 256:
        raise ParameterError("need z_samples_per_leaf >= 256")
    names = collect_coefficients(expr)
    for name in names:
        context.coefficient(name)
    jump_labels: list[str] = []
    for name in sorted(names):
        for lab in context.coefficients[name].boundary_labels():
            if lab not in jump_labels:
                jump_labels.append(lab)
    for lab in jump_labels:
        if lab not in context.point_data:
            raise ConfigurationError(f"missing spectral data at jump point {lab!r}")

    min_abs = math.inf
    witness: Optional[tuple[str, complex]] = None

    def track(label: str, zs: np.ndarray, dets: np.ndarray):
        nonlocal min_abs, witness
        mags = np.abs(dets)
        i = int(np.argmin(mags))
        if mags[i] < min_abs:
            min_abs = float(mags[i])
            witness = (label, complex(zs[i]))

    for lab in jump_labels:
        p_t, dm, dp = context.point_data[lab]
        leaf = Leaf(0.0, 1.0, p_t, dm, dp)
        zs = _leaf_z_samples(leaf, z_samples_per_leaf)
        mats = np.stack([sigma_expr(expr, lab, complex(z), context) for z in zs])
        track(lab, zs, np.linalg.det(mats))

    # continuity points: the symbol does not depend on z there
    n = len(context.curve)
    jump_idx = {context.curve.index_of(lab) for lab in jump_labels}
    cont_idx = [i for i in np.linspace(0, n - 1, continuity_points, dtype=int)
                if i not in jump_idx]
    for i in cont_idx:
        sub = _continuity_context(context, int(i))
        det = np.linalg.det(sigma_expr(expr, "_node_", 0.5 + 0j, sub))
        track(f"node[{i}]", np.array([0.5 + 0j]), np.array([det]))

    exact_coeff = match_scalar_apq(expr)
    if exact_coeff is not None and context.size_N == 1:
        coeff = context.coefficient(exact_coeff)
        ok = True
        for lab in jump_labels:
            am_m, ap_m = coeff.one_sided_limits(context.curve, lab)
            am, ap = complex(am_m[0, 0]), complex(ap_m[0, 0])
            if am == 0 or ap == 0:
                ok = False
                break
            if am != ap:
                p_t, dm, dp = context.point_data[lab]
                root = am / (am - ap)
                if leaf_contains(Leaf(0.0, 1.0, p_t, dm, dp), root):
                    ok = False
                    witness = (lab, root)
                    min_abs = 0.0
                    break
        if ok:
            samples = coeff.sample_on(context.curve)[:, 0, 0]
            ok = bool(np.all(samples != 0))
        return BundleVerdict(fredholm=ok, min_abs_det=min_abs,
                             witness=witness, method="exact")

    return BundleVerdict(fredholm=min_abs > det_margin, min_abs_det=min_abs,
                         witness=witness, method="sampled")


def _continuity_context(context: SymbolContext, node_index: int) -> SymbolContext:
    """Context whose coefficients are frozen to their value at one node, with
    a synthetic label there, so the symbol machinery sees no jump."""
    curve = context.curve
    marked = dict(curve.distinguished_points)
    marked["_node_"] = node_index
    sub_curve = DiscretizedCurve(nodes=curve.nodes,
                                 arclen_weights=curve.arclen_weights,
                                 distinguished_points=marked,
                                 total_length=curve.total_length,
                                 diameter=curve.diameter, spec=curve.spec)
    frozen = {}
    for name, coeff in context.coefficients.items():
        value = coeff.sample_on(curve)[node_index]
        frozen[name] = PCCoefficient(size=coeff.size,
                                     pieces=(("_node_", value),))
    return SymbolContext(curve=sub_curve, coefficients=frozen,
                         point_data=context.point_data)
