"""Plan length against the BFS optimum on random pairs of corpus nets."""
import argparse
import random
import statistics
from dataclasses import dataclass

from xorban.atg import bfs_distance, build_atg
from xorban.corpus import in_theorem_scope, small_corpus
from xorban.planner import plan_general, verify_plan


@dataclass
class SurveyConfig:
    seed: int = 0
    pairs: int = 20
    n_max: int = 10
    shortcut: bool = True


def survey(cfg: SurveyConfig) -> None:
    rng = random.Random(cfg.seed)
    print(f"{'net':<28} {'n':>2} {'mean':>6} {'max':>4} {'opt':>5} {'ratio':>6} {'/4n^2':>6}")
    for e in small_corpus(cfg.seed, cfg.n_max):
        if not in_theorem_scope(e.net):
            continue
        g = build_atg(e.net)
        has_in = g.has_in_arc()
        lengths, opts = [], []
        while len(lengths) < cfg.pairs:
            x, y = rng.randrange(g.size), rng.randrange(g.size)
            if g.unstable[x] == 0 or (x != y and not has_in[y]):
                continue
            p = plan_general(e.net, x, y, shortcut=cfg.shortcut)
            assert verify_plan(e.net, p).ok
            lengths.append(len(p))
            opts.append(bfs_distance(g, x, y))
        ratio = sum(lengths) / max(1, sum(opts))
        print(
            f"{e.name:<28} {e.n:>2} {statistics.mean(lengths):>6.1f} {max(lengths):>4} "
            f"{statistics.mean(opts):>5.1f} {ratio:>6.2f} {max(lengths) / (4 * e.n ** 2):>6.2f}"
        )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--no-shortcut", action="store_true", help="disable the greedy first attempt")
    a = ap.parse_args()
    survey(SurveyConfig(a.seed, a.pairs, a.n_max, not a.no_shortcut))


if __name__ == "__main__":
    main()
