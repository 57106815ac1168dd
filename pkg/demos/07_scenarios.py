"""Scenario files tie everything together: one JSON in, verdicts and plots out.

The same pipeline is exposed on the command line as

    leafspec run scenario.json --out outdir
    leafspec leaf --z1 0,0 --z2 1,0 --p 2 --dminus -1 --dplus 1 --out leaf.svg
    leafspec spirality --curve '{"family": "log_spiral", "delta": 0.5}' --t t
"""

import json
from pathlib import Path

from leafspec import run_scenario

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

scenario = {
    "v": 1,
    "n": 256,
    "curve": {"family": "circle"},
    "exponent": {"kind": "constant", "p": 2.0},
    "coefficients": {"a": {"size": 1, "pieces": [
        {"start": "t", "value": [0.0, 1.0]},
        {"start": "u", "value": 1.0},
    ]}},
    "expression": {"op": "sum", "args": [
        {"op": "prod", "args": [{"gen": "mult", "coeff": "a"}, {"gen": "P"}]},
        {"gen": "Q"},
    ]},
    "points": [
        {"t": "t", "p_t": 2.0, "delta_minus": 0.0, "delta_plus": 0.0},
        {"t": "u", "p_t": 2.0, "delta_minus": 0.0, "delta_plus": 0.0},
    ],
    "tasks": ["fredholm", "symbol_test", "leaf_plot", "verify"],
    "sizes": [64, 128, 256],
}
path = out / "demo_scenario.json"
path.write_text(json.dumps(scenario, indent=2))

code = run_scenario(path, out / "demo_run")
print(f"run_scenario exit code: {code}")
verdict = json.loads((out / "demo_run" / "verdict.json").read_text())
print(f"criterion fredholm: {verdict['criterion']['fredholm']}")
print(f"symbol    fredholm: {verdict['symbol']['fredholm']} "
      f"(method {verdict['symbol']['method']})")
print(f"trend: {verdict['trend']['trend']}  min svs {verdict['trend']['min_svs']}")
print(f"artifacts: {sorted(p.name for p in (out / 'demo_run').iterdir())}")
