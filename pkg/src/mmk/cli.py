"""Command-line entry point: ``mmk <command> --config job.json``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 validation or usage
error, 3 resource guard exceeded, 4 internal consistency failure.
"""
import argparse
import json
import sys

from .errors import (InternalError, ResourceGuardError, UsageError,
                     ValidationError)
from .fan import classify_fan, resolve
from .gnat import (canonical_family, fiber, fiber_monomials, make_family,
                   theta_cone, walk)
from .grp import group_from_config
from .jsonio import (fan_to_json, family_to_json, group_to_json, parse_matrix,
                     parse_rat_vec, rat_vec)
from .lift import build_special_family, chart_report, junior_charts
from .mckay import build_mckay, check_stability, components, to_dot
from .moduli import quotient_fan

COMMANDS = ["group-info", "resolve", "quiver", "family", "fibers", "moduli",
            "lift"]
FAMILY_ACTIONS = ["validate", "canonical", "special", "walk"]


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"malformed JSON in {path} at line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise _InputError(f"{path}: top-level JSON value must be an object")
    return cfg


class _InputError(Exception):
    pass


def _theta(args, cfg, r, required=False):
    raw = args.theta
    if raw is not None:
        theta = parse_rat_vec([t.strip() for t in raw.split(",")])
    elif "theta" in cfg:
        theta = parse_rat_vec(cfg["theta"])
    elif required:
        raise ValidationError("a stability parameter is required (--theta)")
    else:
        return None
    if len(theta) != r or sum(theta) != 0:
        raise ValidationError(f"theta must have {r} entries summing to zero")
    return theta


def _setup(cfg):
    if "group" not in cfg:
        raise ValidationError("config needs a 'group' entry")
    group = group_from_config(cfg["group"])
    order = cfg.get("junior_order")
    return group, order


def _family(fan, group, order, spec, args, cfg):
    if spec is None or spec == "canonical":
        return canonical_family(fan)
    if spec == "special":
        return build_special_family(group, order)[1]
    if isinstance(spec, dict) and "walk" in spec:
        start = _family(fan, group, order, spec.get("start", "canonical"),
                        args, cfg)
        return walk(start, parse_rat_vec(spec["walk"]))
    if isinstance(spec, dict) and "b" in spec:
        spec = spec["b"]
    if isinstance(spec, list):
        return make_family(fan, parse_matrix(spec))
    raise ValidationError(f"unrecognized family specification {spec!r}")


def _pattern_json(pattern):
    return {"support": [list(a) for a in pattern.support()],
            "components": [list(c) for c in components(pattern)]}


def cmd_group_info(args, cfg):
    group, _ = _setup(cfg)
    return group_to_json(group)


def cmd_resolve(args, cfg):
    group, order = _setup(cfg)
    fan, history = resolve(group, order)
    out = fan_to_json(fan)
    out["history"] = [rat_vec(v) for v in history]
    out["classification"] = classify_fan(fan)
    return out


def cmd_quiver(args, cfg):
    group, _ = _setup(cfg)
    quiver = build_mckay(group)
    dot = to_dot(group)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    return {"r": quiver.r, "n": quiver.n,
            "k_table": [list(row) for row in group.k_table],
            "characters": [list(m) for m in group.char_reps],
            "dot": dot}


def cmd_family(args, cfg):
    group, order = _setup(cfg)
    fan, _ = resolve(group, order)
    action = args.action
    if action == "validate":
        if "family" not in cfg:
            raise ValidationError("config has no 'family' to validate")
        fam = _family(fan, group, order, cfg["family"], args, cfg)
    elif action == "canonical":
        fam = canonical_family(fan)
    elif action == "special":
        fam = build_special_family(group, order)[1]
    else:
        theta = _theta(args, cfg, group.r, required=True)
        start = _family(fan, group, order, cfg.get("family"), args, cfg)
        fam = walk(start, theta)
    out = family_to_json(fam)
    out["valid"] = True
    return out


def cmd_fibers(args, cfg):
    group, order = _setup(cfg)
    fan, _ = resolve(group, order)
    fam = _family(fan, group, order, cfg.get("family"), args, cfg)
    theta = _theta(args, cfg, group.r)
    cones = []
    for ids in fan.max_cones:
        pattern = fiber(fam, ids)
        entry = {"cone": list(ids)}
        entry.update(_pattern_json(pattern))
        tc = theta_cone(fam, ids)
        entry["summands"] = tc.summands
        entry["theta_cone_dim"] = tc.dim
        entry["monomials"] = [rat_vec(m) for m in fiber_monomials(fam, ids)]
        if theta is not None:
            entry["stability"] = check_stability(pattern, theta).value
        cones.append(entry)
    return {"cones": cones}


def cmd_moduli(args, cfg):
    group, order = _setup(cfg)
    fan, _ = resolve(group, order)
    fam = _family(fan, group, order, cfg.get("family"), args, cfg)
    rep = quotient_fan(fan, fam)
    return {
        "verdict": rep.verdict.value,
        "alpha_is_iso": rep.alpha_is_iso,
        "contracted_rays": rep.contracted_rays,
        "witnesses": [list(w) for w in rep.witnesses],
        "sigma_F": {
            "rays": [rat_vec(r) for r in rep.rays],
            "max_cones": [[rat_vec(r) for r in c.extreme_rays]
                          for c in rep.max_cones],
            "max_cones_as_ray_ids": [list(c) if c is not None else None
                                     for c in rep.cone_ray_ids(fan)],
        },
        "steps": rep.steps,
    }


def cmd_lift(args, cfg):
    group, order = _setup(cfg)
    charts = []
    for ctx in junior_charts(group, order):
        rep = chart_report(ctx)
        charts.append({"v": rat_vec(rep["v"]), "ell": rep["ell"],
                       "order": rep["order"],
                       "xi": [rat_vec(x) for x in rep["xi"]],
                       "char_map": list(rep["char_map"])})
    return {"charts": charts}


HANDLERS = {
    "group-info": cmd_group_info, "resolve": cmd_resolve,
    "quiver": cmd_quiver, "family": cmd_family, "fibers": cmd_fibers,
    "moduli": cmd_moduli, "lift": cmd_lift,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mmk",
        description="Exact computations with abelian quotient singularities, "
                    "their crepant resolutions and families of "
                    "G-constellations.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("action", nargs="?", choices=FAMILY_ACTIONS,
                        help="sub-action for the 'family' command")
    parser.add_argument("--config", required=True, help="job JSON file")
    parser.add_argument("--theta", help='stability parameter, e.g. "-3,1,1,1"')
    parser.add_argument("--out", help="write the JSON report here")
    parser.add_argument("--dot", help="write the quiver in DOT format here")
    return parser


def _join_theta(argv):
    # "--theta -3,1,1,1" would otherwise be read as an unknown option
    out = list(argv)
    for i in range(len(out) - 1):
        if out[i] == "--theta" and out[i + 1].startswith("-"):
            out[i:i + 2] = [f"--theta={out[i + 1]}"]
            break
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(_join_theta(argv))
    if args.command == "family" and args.action is None:
        parser.error("the family command needs one of: "
                     + ", ".join(FAMILY_ACTIONS))
    try:
        cfg = load_config(args.config)
        result = HANDLERS[args.command](args, cfg)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValidationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    text = json.dumps(result, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
