"""Command-line front end: ``mdlcert <subcommand> ...``.

Single values go out as JSON and grids as CSV. Every output echoes the fully
resolved configuration (a ``# config:`` line for CSV, a ``config`` key for
JSON) so a run can be reproduced byte for byte. Exit status is 0 on success,
2 on a usage error and 1 on a numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import inequalities as ineq
from .behavior import Behavior, InvalidBehaviorError, ObservedBehavior, behavior_from_json, behavior_to_json
from .detector import DetectorParams, apply_detectors
from .lp import InfeasibleError, UnboundedError
from .mdl_models import (
    MAX_ORACLE_LAMBDAS,
    PRESETS,
    AdversaryAngles,
    adversary_model,
    bruteforce_md_tilted_max,
    md_measures,
    settings_marginal,
)
from .quantum import TiltedFamilyParams, amp_tilted_behavior, w_to_theta, zrlh_behavior
from .scan import ScanError, critical_M_curve, md_region_grid, scan_detectors, zrlh_detector_region


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    return format(float(v), ".17g")


def parse_step_grid(spec: str) -> np.ndarray:
    """``a:b:step`` -> a, a+step, ..., b (endpoint included)."""
    try:
        a, b, step = (float(s) for s in spec.split(":"))
    except ValueError:
        raise UsageError(f"grid {spec!r} is not of the form a:b:step") from None
    if step <= 0 or b < a:
        raise UsageError(f"grid {spec!r} needs step > 0 and b >= a")
    n = int(round((b - a) / step))
    return np.linspace(a, a + n * step, n + 1)


def parse_count_grid(spec: str) -> np.ndarray:
    """``a:b:n`` -> n evenly spaced points from a to b."""
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"grid {spec!r} is not of the form a:b:n") from None
    if n < 1:
        raise UsageError(f"grid {spec!r} needs n >= 1")
    return np.linspace(a, b, n)


def parse_floats(spec: str) -> list[float]:
    try:
        return [float(s) for s in spec.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"{spec!r} is not a comma-separated list of numbers") from None


# -- output helpers -----------------------------------------------------------


def _config(args) -> dict:
    skip = {"func", "output", "input"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, text: str):
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def _emit_json(args, payload: dict):
    payload = dict(payload, config=_config(args))
    _emit(args, json.dumps(payload) + "\n")


def _emit_csv(args, header, rows):
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(_config(args)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in r])
    _emit(args, buf.getvalue())


def _read_behavior(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    try:
        return behavior_from_json(text)
    except (json.JSONDecodeError, KeyError) as e:
        raise InvalidBehaviorError(f"cannot parse behavior JSON: {e}") from None


# -- subcommands --------------------------------------------------------------


def cmd_gen(args):
    if args.family == "amp-tilted":
        if args.alpha is None or args.phi is None:
            raise UsageError("gen amp-tilted needs --alpha and --phi")
        b = amp_tilted_behavior(TiltedFamilyParams(args.alpha, args.phi))
    else:
        if (args.theta is None) == (args.w is None):
            raise UsageError("gen zrlh needs exactly one of --theta, --w")
        theta = args.theta if args.theta is not None else w_to_theta(args.w)
        b = zrlh_behavior(theta)
    _emit(args, behavior_to_json(b, config=_config(args)) + "\n")


def cmd_eval(args):
    b = _read_behavior(args)
    name = args.ineq
    if name == "sauer":
        if not isinstance(b, ObservedBehavior):
            raise InvalidBehaviorError("sauer needs an observed (4-outcome) behavior")
        value, bound = ineq.sauer_lhs(b), 0.0
    else:
        if not isinstance(b, Behavior):
            raise InvalidBehaviorError(f"{name} needs an ideal (2-outcome) behavior")
        if name == "prblg":
            value, bound = ineq.prblg_lhs(b, ineq.MDLParams(args.l).l), 0.0
        elif name == "zrlh":
            p = ineq.MDLParams(args.l, w=args.w)
            value, bound = ineq.zrlh_lhs(b, p.l, p.w), 0.0
        elif name == "tilted":
            t = ineq.TiltedParams(args.alpha, args.beta)
            value, bound = ineq.tilted_value(b, t), ineq.tilted_local_bound(t)
        else:
            value, bound = ineq.chsh_value(b), 2.0
    verdict = "NONLOCAL" if value > bound else "LOCAL-CONSISTENT"
    if args.json:
        _emit_json(args, {"ineq": name, "value": value, "bound": bound, "verdict": verdict})
    else:
        _emit(args, f"{name} {fmt(value)} (bound {fmt(bound)})\n{verdict}\n")


def cmd_apply_detectors(args):
    b = _read_behavior(args)
    if not isinstance(b, Behavior):
        raise InvalidBehaviorError("apply-detectors needs an ideal (2-outcome) behavior")
    o = apply_detectors(b, DetectorParams(args.eta, args.delta))
    _emit(args, behavior_to_json(o, config=_config(args)) + "\n")


def cmd_scan_detectors(args):
    deltas = parse_step_grid(args.delta_grid)
    w = args.w if args.ineq == "zrlh" else 0.0
    res = scan_detectors(
        deltas, args.ineq, args.l, w, args.epsilon, args.eta_step, args.tol, workers=args.workers
    )
    _emit_csv(
        args,
        ["delta", "eta_min", "optimum", "l", "w"],
        [(r.delta, r.eta_min, r.optimum, args.l, w) for r in res.rows],
    )


def cmd_region_zrlh(args):
    if (args.theta is None) == (args.w is None):
        raise UsageError("region-zrlh needs exactly one of --theta, --w")
    theta = args.theta if args.theta is not None else w_to_theta(args.w)
    try:
        eta_spec, delta_spec = args.grid.split(",")
    except ValueError:
        raise UsageError("--grid must be eta_a:eta_b:n,delta_a:delta_b:m") from None
    reg = zrlh_detector_region(theta, parse_count_grid(eta_spec), parse_count_grid(delta_spec))
    rows = [
        (e, d, reg.value[i, j], reg.in_region[i, j])
        for i, e in enumerate(reg.eta)
        for j, d in enumerate(reg.delta)
    ]
    _emit_csv(args, ["eta", "delta", "sauer_lhs", "in_region"], rows)


def cmd_tilted_curves(args):
    c = critical_M_curve(parse_count_grid(args.alpha_grid), args.beta)
    rows = zip(c["alpha"], c["symmetric"], c["alice_only"], c["bob_only"])
    _emit_csv(args, ["alpha", "M_symmetric", "M_alice_only", "M_bob_only"], rows)


def cmd_tilted_regions(args):
    t = ineq.TiltedParams(args.alpha, args.beta)
    grid = parse_count_grid(args.m_grid)
    reg = md_region_grid(t, parse_floats(args.I), grid)
    rows = [
        (I, m1, m2, reg.nonlocal_[k, i, j])
        for k, I in enumerate(reg.I_values)
        for i, m1 in enumerate(reg.M1)
        for j, m2 in enumerate(reg.M2)
    ]
    _emit_csv(args, ["I", "M1", "M2", "md_nonlocal"], rows)


def cmd_adversary(args):
    if (args.preset is None) == (args.angles is None):
        raise UsageError("adversary needs exactly one of --preset, --angles")
    if args.preset is not None:
        angles = PRESETS[args.preset]
    else:
        vals = parse_floats(args.angles)
        if len(vals) != 7:
            raise UsageError("--angles takes 7 values: theta_lambda,theta_s1,phi_s1,delta_s1,theta_s2,phi_s2,delta_s2")
        angles = AdversaryAngles(*vals)
    m = adversary_model(angles)
    rep = md_measures(m)
    _emit_json(args, {"p_xy": settings_marginal(m).reshape(-1).tolist(), **rep._asdict()})


def cmd_oracle_tilted(args):
    t = ineq.TiltedParams(args.alpha, args.beta)
    cap = ineq.MDMeasures(args.m1, args.m2)
    value = bruteforce_md_tilted_max(t, cap, args.lambdas)
    bound = ineq.md_tilted_bound(t, cap)
    _emit_json(args, {"oracle_max": value, "closed_form_bound": bound, "gap": bound - value})


def cmd_selfcheck(args):
    from .selfcheck import run_anchors

    results = run_anchors()
    _emit(args, "".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n" for name, ok, detail in results))
    return 0 if all(ok for _, ok, _ in results) else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: standard output)")
    common.add_argument("--seed", type=int, default=0, help="reserved; every path is deterministic")

    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("-i", "--input", help="behavior JSON file (default: standard input)")

    ap = argparse.ArgumentParser(prog="mdlcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a quantum behavior as JSON")
    p.add_argument("family", choices=["amp-tilted", "zrlh"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--phi", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--w", type=float)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", parents=[common, reader], help="evaluate an inequality on a behavior")
    p.add_argument("--ineq", required=True, choices=["prblg", "zrlh", "sauer", "tilted", "chsh"])
    p.add_argument("--l", type=float, default=0.0)
    p.add_argument("--w", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("apply-detectors", parents=[common, reader], help="push a behavior through the detectors")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_apply_detectors)

    p = sub.add_parser("scan-detectors", parents=[common], help="minimum efficiency over a dark-count grid")
    p.add_argument("--ineq", choices=["prblg", "zrlh"], default="prblg")
    p.add_argument("--l", type=float, default=0.0)
    p.add_argument("--w", type=float, default=0.0)
    p.add_argument("--delta-grid", default="0:0.02:0.002", help="a:b:step")
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--eta-step", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--workers", type=int, help="worker processes (default: $MDLCERT_WORKERS or 1)")
    p.set_defaults(func=cmd_scan_detectors)

    p = sub.add_parser("region-zrlh", parents=[common], help="detector region of the tilted-Hardy behavior")
    p.add_argument("--theta", type=float)
    p.add_argument("--w", type=float)
    p.add_argument("--grid", default="0.9:1:51,0:0.05:51", help="eta_a:eta_b:n,delta_a:delta_b:m")
    p.set_defaults(func=cmd_region_zrlh)

    p = sub.add_parser("tilted-curves", parents=[common], help="critical measurement dependence against alpha")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--alpha-grid", default="1:5:41", help="a:b:n")
    p.set_defaults(func=cmd_tilted_curves)

    p = sub.add_parser("tilted-regions", parents=[common], help="MD-nonlocal (M1, M2) regions")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--I", required=True, help="comma-separated tilted values")
    p.add_argument("--m-grid", default="0:2:41", help="a:b:n, shared by M1 and M2")
    p.set_defaults(func=cmd_tilted_regions)

    p = sub.add_parser("adversary", parents=[common], help="measurement-dependent adversary model")
    p.add_argument("--preset", type=int, choices=sorted(PRESETS))
    p.add_argument("--angles", help="7 comma-separated angles")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("oracle-tilted", parents=[common], help="brute-force MD tilted maximum")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--m1", type=float, default=0.0)
    p.add_argument("--m2", type=float, default=0.0)
    p.add_argument("--lambdas", type=int, default=2, choices=range(1, MAX_ORACLE_LAMBDAS + 1))
    p.set_defaults(func=cmd_oracle_tilted)

    p = sub.add_parser("selfcheck", parents=[common], help="run the quick numerical anchors")
    p.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # exits with status 2 on bad usage
    try:
        rc = args.func(args)
    except UsageError as e:
        ap.error(str(e))
    except (ValueError, ArithmeticError, InfeasibleError, UnboundedError, ScanError) as e:
        print(f"mdlcert {args.command}: error: {e}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
