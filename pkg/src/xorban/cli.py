"""Command-line front end.

Exit codes: 0 success, 1 bad input or out-of-scope request, 2 internal
defect (a plan or witness failed its own verification, or a reproduction
check failed).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import atg as A
from .core import (
    StructuralError,
    apply_update,
    as_config,
    canonical,
    config_to_str,
    contraction,
    dual,
    format_network,
    image,
    parse_network,
    reverse,
    unstable_mask,
)
from .equiv import (
    check_witness,
    classify_chain,
    classify_flower,
    find_isomorphism,
    fixed_points_symbolic,
    normalize_signs,
)
from .families import FamilyLabeling, gen_badc, gen_chain, gen_flower, gen_random_cactus
from .planner import PlanDefect, plan_badc, plan_general, verify_plan


class Defect(RuntimeError):
    """Self-verification failed."""


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _net(path: str):
    return parse_network(_read(path))


def _labeling(path: Optional[str]) -> Optional[FamilyLabeling]:
    return FamilyLabeling.from_json(_read(path)) if path else None


def _config(text: str, n: int, lab: Optional[FamilyLabeling]) -> int:
    if text.startswith("("):
        if lab is None:
            raise StructuralError("cycle-vector notation needs --labeling")
        return lab.parse_vector(text)
    return as_config(text, n)


def _ints(text: Optional[str]) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()] if text else []


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    sizes = args.sizes
    if args.family == "badc":
        if len(sizes) != 2:
            raise StructuralError("badc takes exactly two sizes")
        net, lab = gen_badc(sizes[0], sizes[1], args.cls)
    elif args.family == "flower":
        net, lab = gen_flower(sizes, args.cls)
    elif args.family == "chain":
        net, lab = gen_chain(sizes, _ints(args.offsets) or None, args.cls)
    else:
        net, lab = gen_random_cactus(args.seed, args.n_max, args.cycles)
    sys.stdout.write(format_network(net))
    if args.labeling:
        Path(args.labeling).write_text(lab.to_json() + "\n")
    return 0


def cmd_eval(args) -> int:
    net = _net(args.network)
    lab = _labeling(args.labeling)
    x = _config(args.config, net.n, lab)
    W = _ints(args.update) or list(net.automata)
    y = apply_update(net, W, x)
    if args.json:
        _emit_json({
            "x": config_to_str(x, net.n),
            "update": W,
            "result": config_to_str(y, net.n),
            "image": config_to_str(image(net, x), net.n),
            "unstable": [i for i in net.automata if (unstable_mask(net, x) >> (i - 1)) & 1],
        })
    else:
        print(config_to_str(y, net.n))
    return 0


def cmd_atg(args) -> int:
    net = _net(args.network)
    g = A.build_atg(net, limit=args.limit_n, workers=args.workers)
    if args.dot:
        sys.stdout.write(A.to_dot(g))
    elif args.json:
        print(A.to_json(g))
    if args.report or not (args.dot or args.json):
        r = A.check_theorem_shape(net, limit=args.limit_n, atg=g, diameter=args.diameter)
        out = r.summary()
        out["attractors"] = len(A.attractors(g))
        if args.dot or args.json:
            print(json.dumps(out, sort_keys=True), file=sys.stderr)
        else:
            _emit_json(out)
    return 0


def cmd_plan(args) -> int:
    net = _net(args.network)
    lab = _labeling(args.labeling)
    x = _config(args.start, net.n, lab)
    y = _config(args.target, net.n, lab)
    if args.badc:
        plan = plan_badc(net, x, y, labeling=lab, shortcut=args.shortcut)
    else:
        plan = plan_general(net, x, y, shortcut=args.shortcut)
    if not verify_plan(net, plan).ok:
        raise Defect("plan failed replay")
    out = plan.to_dict()
    if args.oracle:
        g = A.build_atg(net, limit=args.limit_n)
        out["bfs_distance"] = A.bfs_distance(g, x, y)
        out["bound_4n2"] = 4 * net.n * net.n
    if args.json:
        _emit_json(out)
    else:
        print(" ".join(map(str, plan.steps)))
        if args.oracle:
            print(f"length {len(plan)}, bfs distance {out['bfs_distance']}, bound {out['bound_4n2']}")
    return 0


def cmd_fixpoints(args) -> int:
    net = _net(args.network)
    sym = fixed_points_symbolic(net)
    out = {"fixed_points": [config_to_str(x, net.n) for x in sym]}
    if args.oracle:
        brute = A.fixed_points(A.build_atg(net, limit=args.limit_n))
        if brute != sym:
            raise Defect("symbolic fixed points disagree with the ATG")
        out["checked_against_atg"] = True
    _emit_json(out)
    return 0


def cmd_iso(args) -> int:
    a, b = _net(args.a), _net(args.b)
    w = find_isomorphism(a, b)
    if w is None:
        _emit_json({"isomorphic": False})
        return 0
    if not check_witness(a, b, w):
        raise Defect("isomorphism witness failed its check")
    _emit_json({"isomorphic": True, "witness": w.to_dict()})
    return 0


def cmd_classify(args) -> int:
    net = _net(args.network)
    lab = _labeling(args.labeling)
    if lab is None:
        raise StructuralError("classify needs --labeling (written by `gen --labeling`)")
    fn = classify_flower if lab.family in ("flower", "badc") else classify_chain
    if lab.family not in ("flower", "badc", "chain"):
        raise StructuralError(f"no classifier for family {lab.family!r}")
    c = fn(net, lab)
    out = c.to_dict(net.n)
    if args.oracle:
        g = A.build_atg(net, limit=args.limit_n)
        if list(c.fixed_points) != A.fixed_points(g) or list(c.unreachables) != A.unreachables(g):
            raise Defect("classification disagrees with the ATG")
        out["checked_against_atg"] = True
    _emit_json(out)
    return 0


def cmd_canon(args) -> int:
    net = _net(args.network)
    if args.form == "normalized":
        out = normalize_signs(net)[0]
    else:
        out = {"canonical": canonical, "dual": dual, "reverse": reverse, "contraction": contraction}[args.form](net)
    sys.stdout.write(format_network(out))
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import reproduce

    only = [s for o in args.only for s in o.split(",")] if args.only else None
    results = reproduce(only, seed=args.corpus_seed)
    if args.json:
        _emit_json([
            {"name": r.name, "passed": r.passed, "measured": r.measured, "expected": r.expected,
             "seconds": round(r.seconds, 3), "details": r.details}
            for r in results
        ])
    else:
        for r in results:
            print(r.line())
            for d in r.details[: args.details]:
                print(f"    {d}")
    return 0 if all(r.passed for r in results) else 2


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xorban", description="XOR Boolean automata networks: ATGs, plans, equivalence.")
    p.add_argument("--limit-n", type=int, default=A.DEFAULT_LIMIT, help="ATG size ceiling (default 24)")
    p.add_argument("--seed", type=int, default=0)
    # the global flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit-n", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a family network")
    g.add_argument("family", choices=["badc", "flower", "chain", "cactus"])
    g.add_argument("sizes", type=int, nargs="*")
    g.add_argument("--class", dest="cls", default="positive")
    g.add_argument("--offsets", help="chain offsets, comma separated")
    g.add_argument("--n-max", type=int, default=10)
    g.add_argument("--cycles", type=int, default=3)
    g.add_argument("--labeling", help="write the cycle labeling JSON here")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", parents=[common], help="apply an update set to a configuration")
    e.add_argument("network")
    e.add_argument("config")
    e.add_argument("--update", help="automata, comma separated (default: all)")
    e.add_argument("--labeling")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    a = sub.add_parser("atg", parents=[common], help="asynchronous transition graph")
    a.add_argument("network")
    a.add_argument("--dot", action="store_true")
    a.add_argument("--json", action="store_true")
    a.add_argument("--report", action="store_true")
    a.add_argument("--diameter", action="store_true")
    a.add_argument("--workers", type=int, default=1)
    a.set_defaults(func=cmd_atg)

    pl = sub.add_parser("plan", parents=[common], help="update plan between two configurations")
    pl.add_argument("network")
    pl.add_argument("start")
    pl.add_argument("target")
    pl.add_argument("--labeling", help="labeling JSON; enables (0101,011) vector notation")
    pl.add_argument("--badc", action="store_true", help="use the double-cycle algorithm directly")
    pl.add_argument("--shortcut", action=argparse.BooleanOptionalAction, default=None)
    pl.add_argument("--oracle", action="store_true", help="compare with the BFS distance")
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(func=cmd_plan)

    f = sub.add_parser("fixpoints", parents=[common], help="fixed points via the nude structure")
    f.add_argument("network")
    f.add_argument("--oracle", action="store_true")
    f.set_defaults(func=cmd_fixpoints)

    i = sub.add_parser("iso", parents=[common], help="isomorphism witness between two networks")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    c = sub.add_parser("classify", parents=[common], help="sign class of a flower or chain")
    c.add_argument("network")
    c.add_argument("--labeling")
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_classify)

    cn = sub.add_parser("canon", parents=[common], help="derived networks")
    cn.add_argument("network")
    cn.add_argument("--form", choices=["canonical", "dual", "reverse", "normalized", "contraction"], default="canonical")
    cn.set_defaults(func=cmd_canon)

    r = sub.add_parser("reproduce", parents=[common], help="run the acceptance checks")
    r.add_argument("--only", action="append", help="check name(s), repeatable or comma separated")
    r.add_argument("--corpus-seed", type=int, default=None)
    r.add_argument("--json", action="store_true")
    r.add_argument("--details", type=int, default=5, help="detail lines per check")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "shortcut", "absent") is None:
        args.shortcut = not args.badc
    if args.command == "reproduce" and args.corpus_seed is None:
        args.corpus_seed = args.seed
    if args.command == "gen" and args.family == "cactus":
        args.sizes = []
    try:
        return args.func(args)
    except (Defect, PlanDefect) as e:
        print(f"internal defect: {e}", file=sys.stderr)
        return 2
    except (StructuralError, OSError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
