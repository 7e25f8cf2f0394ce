"""BFS distance from (10..0, 10..0) to the alternating waypoint on BADC(k,k).

    python3 scripts/tightness_probe.py --sizes 3 5 7 9
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from xorban.atg import bfs_distance, build_atg
from xorban.families import gen_badc
from xorban.planner import plan_badc


@dataclass
class Row:
    k: int
    n: int
    bfs: int
    plan: int
    bound: int
    seconds: float


def probe(k: int) -> Row:
    t = time.perf_counter()
    net, lab = gen_badc(k, k)
    src = lab.parse_vector(f"({'1' + '0' * (k - 1)},{'1' + '0' * (k - 1)})")
    if k % 2:
        alt = "0" + "10" * ((k - 1) // 2)
    else:
        alt = "01" * (k // 2)
    dst = lab.parse_vector(f"({alt},{alt})")
    d = bfs_distance(build_atg(net), src, dst)
    p = plan_badc(net, src, dst, labeling=lab)
    return Row(k, net.n, d, len(p), 4 * net.n ** 2, round(time.perf_counter() - t, 2))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8, 9])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [probe(k) for k in args.sizes]
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    print(f"{'k':>3} {'n':>3} {'bfs':>6} {'plan':>6} {'4n^2':>6} {'bfs/n^2':>8}")
    for r in rows:
        print(f"{r.k:>3} {r.n:>3} {r.bfs:>6} {r.plan:>6} {r.bound:>6} {r.bfs / r.n ** 2:>8.3f}")


if __name__ == "__main__":
    main()
