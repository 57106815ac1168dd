"""Command-line entry points.

    leafspec run <scenario.json> --out <dir>
    leafspec leaf --z1 0,0 --z2 1,0 --p 2 --dminus -1 --dplus 1 --out leaf.svg
    leafspec spirality --curve '{"family":"log_spiral","delta":0.5}' --t t

Exit codes: 0 success, 2 configuration/schema error, 3 resolution error.
LEAFSPEC_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import curves
from .errors import LeafspecError, ResolutionError
from .leaves import Leaf, leaf_boundary_sample
from .scenario import _jsonable, _parse_curve_spec, run_scenario
from .svg import emit_leaf_svg


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]))
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"cannot parse complex value {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leafspec")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("scenario", type=Path)
    run.add_argument("--out", type=Path, required=True)

    leaf = sub.add_parser("leaf", help="render one leaf to SVG")
    leaf.add_argument("--z1", type=_parse_complex, default=0j)
    leaf.add_argument("--z2", type=_parse_complex, default=1 + 0j)
    leaf.add_argument("--p", type=float, required=True)
    leaf.add_argument("--dminus", type=float, required=True)
    leaf.add_argument("--dplus", type=float, required=True)
    leaf.add_argument("--n", type=int, default=256)
    leaf.add_argument("--out", type=Path, required=True)

    spir = sub.add_parser("spirality", help="estimate spirality indices")
    spir.add_argument("--curve", required=True,
                      help="curve spec as inline JSON or @file")
    spir.add_argument("--t", default="t", help="distinguished point label")
    spir.add_argument("--n", type=int, default=4096)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return run_scenario(args.scenario, args.out)
        if args.command == "leaf":
            leaf = Leaf(args.z1, args.z2, args.p, args.dminus, args.dplus)
            emit_leaf_svg(leaf, leaf_boundary_sample(leaf, args.n), args.out)
            return 0
        if args.command == "spirality":
            text = args.curve
            if text.startswith("@"):
                text = Path(text[1:]).read_text()
            spec = _parse_curve_spec(json.loads(text))
            curve = curves.build_curve(spec, args.n)
            est = curves.spirality_indices(curve, args.t)
            print(json.dumps(_jsonable({
                "t": args.t,
                "delta_minus": est.delta_minus,
                "delta_plus": est.delta_plus,
                "fit_residual_minus": est.fit_residual_minus,
                "fit_residual_plus": est.fit_residual_plus,
            }), indent=2, sort_keys=True))
            return 0
    except ResolutionError as exc:
        print(f"resolution error: {exc}", file=sys.stderr)
        return 3
    except (LeafspecError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
