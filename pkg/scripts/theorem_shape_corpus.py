"""ATG shape of every theorem-scope corpus net, with the big SCC's diameter."""
import argparse
import json

from xorban.atg import check_theorem_shape
from xorban.corpus import theorem_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--diameter-max-n", type=int, default=8, help="compute diameters only up to this n")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for e in theorem_corpus(args.seed, args.n_max):
        r = check_theorem_shape(e.net, diameter=e.n <= args.diameter_max_n)
        rows.append({"name": e.name, **r.summary()})
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'net':<28} {'n':>2} {'|U|':>4} {'|S|':>4} {'SCC':>6} {'diam':>5} verdict")
    for r in rows:
        d = "-" if r["diameter"] is None else r["diameter"]
        print(f"{r['name']:<28} {r['n']:>2} {len(r['unreachables']):>4} {len(r['fixed_points']):>4} "
              f"{r['big_scc_size']:>6} {d:>5} {r['verdict']}")
    print(f"{sum(r['verdict'] for r in rows)}/{len(rows)} match the shape")


if __name__ == "__main__":
    main()
