"""Local spectral data of Cauchy singular integral operators with piecewise
continuous coefficients on variable Lebesgue spaces over Carleson curves."""

from .curves import (ArgumentBranch, CurveSpec, DiscretizedCurve, SpiralityData,
                     W0, build_curve, carleson_constant, default_radius_grid,
                     eta, model_argument, spirality_indices, unwrap_argument,
                     winding_number)
from .errors import (ConfigurationError, ContractError, DegenerateSymbolError,
                     GeometryError, LeafspecError, ParameterError,
                     ResolutionError)
from .exponents import (Exponent, WeightSamples, conjugate,
                        dini_lipschitz_constant, holder_perturbation,
                        log_perturbation, luxemburg_norm, phi_weight)
from .fredholm import (CriterionReport, JumpDatum, PointVerdict, boundedness_ok,
                       criterion_interval, find_p0, find_shift_k,
                       is_fredholm_scalar, local_exponent_gamma)
from .leaves import (AT_INFINITY, BoundaryPiece, BoundarySamples, Leaf,
                     arc_contains, indicators, leaf_boundary_sample,
                     leaf_contains, median_point, moebius, moebius_inverse,
                     proximity_components, spiral_contains)
from .operators import (DenseOperator, TrendReport, assemble_operator,
                        classify_trend, discrete_S, discrete_maximal,
                        finite_section_trend, min_singular_value)
from .scenario import Scenario, load_scenario, run_scenario
from .svg import emit_leaf_svg, render_leaf_svg
from .symbols import (BundleVerdict, GenMult, GenS, Identity, OperatorExpr,
                      PCCoefficient, Product, P_TREE, Q_TREE, Scale, Sum,
                      SymbolContext, a_P_plus_Q, bundle_fredholm_test,
                      collect_coefficients, match_scalar_apq, parse_expression,
                      sigma_S, sigma_a, sigma_c, sigma_expr, sigma_r, sigma_s,
                      sqrt_zz, two_projections_x)

__version__ = "0.1.0"
