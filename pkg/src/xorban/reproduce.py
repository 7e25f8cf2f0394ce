"""Acceptance checks.

Each check returns a :class:`CheckResult`. ``passed`` reflects the literal
criterion; when a criterion cannot hold as stated, ``measured`` says why
and what does hold.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from . import atg as A
from .core import (
    Network,
    apply_update,
    canonical,
    config_to_str,
    dual,
    flip,
    is_unreachable,
    reverse,
)
from .corpus import small_corpus, theorem_corpus
from .equiv import (
    check_conjugacy,
    check_witness,
    expand_chain_pattern,
    find_isomorphism,
    fixed_points_symbolic,
    isomorphism_classes,
)
from .families import gen_badc, gen_chain, gen_flower
from .planner import plan_badc, plan_general, synchronous_unreachable_witness, verify_plan


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: str
    expected: str
    seconds: float = 0.0
    details: List[str] = field(default_factory=list)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.measured} (expected {self.expected}) [{self.seconds:.1f}s]"


# ---------------------------------------------------------------------------
# 1. figure fixtures

# edge lists read off the two ATG figures; strings are x_1 x_2 ... x_n
FIG_12 = {
    ("00", 1, "00"), ("00", 2, "00"), ("01", 1, "11"), ("01", 2, "00"),
    ("10", 1, "10"), ("10", 2, "11"), ("11", 1, "01"), ("11", 2, "11"),
}
# drawn with the center at automaton 2: f1 = x2, f2 = x1 ^ x3, f3 = x2
FIG_22 = {
    ("000", 1, "000"), ("000", 2, "000"), ("000", 3, "000"),
    ("001", 1, "001"), ("001", 2, "011"), ("001", 3, "000"),
    ("010", 1, "110"), ("010", 2, "000"), ("010", 3, "011"),
    ("011", 1, "111"), ("011", 2, "011"), ("011", 3, "011"),
    ("100", 1, "000"), ("100", 2, "110"), ("100", 3, "100"),
    ("101", 1, "001"), ("101", 2, "101"), ("101", 3, "100"),
    ("110", 1, "110"), ("110", 2, "110"), ("110", 3, "111"),
    ("111", 1, "111"), ("111", 2, "101"), ("111", 3, "111"),
}
# generator ids (center 1) -> figure ids (center 2)
FIG_22_PERM = {1: 2, 2: 1, 3: 3}


def edge_set(net: Network, perm: Optional[Dict[int, int]] = None) -> set:
    """Labeled ATG edges as strings, optionally carried through a relabeling."""
    g = A.build_atg(net)
    n = net.n
    perm = perm or {i: i for i in range(1, n + 1)}

    def mv(x: int) -> str:
        y = 0
        for i in range(1, n + 1):
            if (x >> (i - 1)) & 1:
                y |= 1 << (perm[i] - 1)
        return config_to_str(y, n)

    return {(mv(s), perm[i], mv(d)) for s, i, d in g.edges()}


def check_atg_fixtures(**_) -> CheckResult:
    got12 = edge_set(gen_badc(1, 2)[0])
    got22 = edge_set(gen_badc(2, 2)[0], FIG_22_PERM)
    ok12, ok22 = got12 == FIG_12, got22 == FIG_22
    return CheckResult(
        "atg-fixtures",
        ok12 and ok22,
        f"(1,2): {len(got12)} edges {'equal' if ok12 else 'differ'}; (2,2): {len(got22)} edges {'equal' if ok22 else 'differ'}",
        "exact edge-set equality for both figures",
    )


# ---------------------------------------------------------------------------
# 2. theorem shape


def check_theorem_shape(seed: int = 0, **_) -> CheckResult:
    corpus = theorem_corpus(seed)
    bad = []
    for e in corpus:
        r = A.check_theorem_shape(e.net)
        if not (r.in_scope and r.verdict):
            bad.append(e.name)
    fams = sorted({e.family for e in corpus})
    return CheckResult(
        "theorem-shape",
        len(corpus) >= 50 and not bad,
        f"{len(corpus) - len(bad)}/{len(corpus)} nets match (families {','.join(fams)}, n<={max(e.n for e in corpus)})",
        ">= 50 nets, all unreachables -> one SCC -> fixed points",
        details=bad,
    )


# ---------------------------------------------------------------------------
# 3. planner


def _badc_sweep(n1: int, n2: int, cls: str) -> tuple:
    net, lab = gen_badc(n1, n2, cls)
    g = A.build_atg(net)
    U = set(A.unreachables(g))
    S = set(A.fixed_points(g))
    n = net.n
    pairs = fails = longest = 0
    for x in range(1 << n):
        if x in S:
            continue
        for y in range(1 << n):
            if y in U and y != x:
                continue
            pairs += 1
            try:
                p = plan_badc(net, x, y, labeling=lab)
                ok = verify_plan(net, p).ok and len(p) <= 4 * n * n
                longest = max(longest, len(p))
            except Exception:
                ok = False
            fails += not ok
    return pairs, fails, longest


def check_planner(seed: int = 0, samples: int = 200, **_) -> CheckResult:
    parts = []
    fails = 0
    for n1, n2 in ((3, 3), (3, 4)):
        for cls in ("positive", "mixed", "negative"):
            pairs, f, longest = _badc_sweep(n1, n2, cls)
            fails += f
            parts.append(f"({n1},{n2}) {cls}: {pairs} pairs, longest {longest}")
    rng = random.Random(seed)
    nets = [e for e in small_corpus(seed) if e.net.n <= 10]
    from .corpus import in_theorem_scope

    nets = [e for e in nets if in_theorem_scope(e.net)]
    atgs: Dict[str, A.Atg] = {}
    sampled = gen_fail = 0
    details = []
    while sampled < samples:
        e = rng.choice(nets)
        g = atgs.setdefault(e.name, A.build_atg(e.net))
        x = rng.randrange(g.size)
        y = rng.randrange(g.size)
        if g.unstable[x] == 0 or (y != x and not g.has_in_arc()[y]):
            continue
        sampled += 1
        try:
            p = plan_general(e.net, x, y)
            ok = verify_plan(e.net, p).ok and len(p) >= A.bfs_distance(g, x, y)
        except Exception as exc:  # reported, not raised
            ok = False
            details.append(f"{e.name} {config_to_str(x, e.n)}->{config_to_str(y, e.n)}: {exc!r}")
        gen_fail += not ok
    parts.append(f"plan_general: {sampled - gen_fail}/{sampled} sampled pairs verify")
    return CheckResult(
        "planner",
        fails == 0 and gen_fail == 0,
        f"{fails} double-cycle failures; " + "; ".join(parts),
        "zero failures, |plan| <= 4n^2, |plan| >= bfs distance",
        details=details,
    )


# ---------------------------------------------------------------------------
# 4. fixed points


def check_fixed_points(**_) -> CheckResult:
    chain4, lab4 = gen_chain((3, 3, 3, 3), (2, 3, 1))
    cases = [
        ("flower(3,3)+", gen_flower((3, 3))[0], None, 1),
        ("flower(3,3,3)+", gen_flower((3, 3, 3))[0], ["0000000", "1111111"], 2),
        ("flower(3,3,3)-", gen_flower((3, 3, 3), "negative")[0], [], 0),
        ("chain m=3 +", gen_chain((3, 3, 3))[0], None, 1),
        ("chain m=4 +", chain4, ["0" * chain4.n, config_to_str(expand_chain_pattern(chain4, lab4, "101"), chain4.n)], 2),
        ("chain m=4 -", gen_chain((3, 3, 3, 3), (2, 3, 1), "negative")[0], [], 0),
    ]
    parts, ok = [], True
    for name, net, want, count in cases:
        brute = A.fixed_points(A.build_atg(net))
        sym = fixed_points_symbolic(net)
        got = sorted(config_to_str(x, net.n) for x in brute)
        good = sym == brute and len(brute) == count and (want is None or got == sorted(want))
        ok &= good
        parts.append(f"{name}: {len(brute)}" + ("" if sym == brute else " (symbolic differs)"))
    return CheckResult("fixed-points", ok, "; ".join(parts), "1, 2 {0^7,1^7}, 0, 1, 2 {0^n,101-pattern}, 0")


# ---------------------------------------------------------------------------
# 5. reverse duality


def check_reverse_duality(seed: int = 0, **_) -> CheckResult:
    corpus = [e for e in small_corpus(seed) if e.n <= 10]
    bad = [
        e.name
        for e in corpus
        if sorted(A.unreachables(A.build_atg(e.net))) != sorted(A.fixed_points(A.build_atg(reverse(e.net))))
    ]
    return CheckResult(
        "reverse-duality",
        not bad,
        f"{len(corpus) - len(bad)}/{len(corpus)} nets match",
        "unreachables(net) = fixed_points(reverse(net)) on every net",
        details=bad,
    )


# ---------------------------------------------------------------------------
# 6. isomorphism


def atg_invariants(net: Network) -> tuple:
    g = A.build_atg(net)
    c = A.condense(g)
    return (len(A.fixed_points(g)), len(A.unreachables(g)), tuple(sorted(c.sizes.tolist())))


def _iso_ok(a: Network, b: Network) -> bool:
    w = find_isomorphism(a, b)
    if w is None or not check_witness(a, b, w):
        return False
    return a.n > 8 or check_conjugacy(a, b, w)


def check_isomorphism(seed: int = 0, flips: int = 20, **_) -> CheckResult:
    rng = random.Random(seed)
    corpus = [e for e in small_corpus(seed) if e.n <= 10]
    dual_ok = dual_cert = canon_ok = flip_ok = flip_total = self_dual_ok = 0
    details = []
    for e in corpus:
        net = e.net
        d = dual(net)
        if _iso_ok(net, d):
            dual_ok += 1
        elif atg_invariants(net) != atg_invariants(d):
            dual_cert += 1
            details.append(f"{e.name}: not isomorphic to dual, invariants {atg_invariants(net)} vs {atg_invariants(d)}")
        else:
            details.append(f"{e.name}: no dual witness found and invariants agree")
        canon_ok += _iso_ok(net, canonical(net))
        self_dual_ok += _iso_ok(net, flip(net, net.automata))
        for _ in range(flips):
            S = [i for i in net.automata if rng.random() < 0.5]
            flip_total += 1
            flip_ok += _iso_ok(net, flip(net, S))
    k = len(corpus)
    passed = dual_ok == k and canon_ok == k and flip_ok == flip_total
    return CheckResult(
        "isomorphism",
        passed,
        f"dual {dual_ok}/{k} ({dual_cert} certified non-isomorphic by ATG invariants); canonical {canon_ok}/{k}; "
        f"flip {flip_ok}/{flip_total}; not f(not x) {self_dual_ok}/{k}",
        "every net isomorphic to dual, canonical and 20 flips, witnesses verified",
        details=details,
    )


# ---------------------------------------------------------------------------
# 7. class counts


def all_sign_variants(sizes: Sequence[int], gen: Callable) -> List[Network]:
    nets = []
    for bits in itertools.product([False, True], repeat=sum(sizes)):
        it = iter(bits)
        nets.append(gen([[next(it) for _ in range(s)] for s in sizes])[0])
    return nets


CLASS_CASES = [
    ("flower (2,2,2)", (2, 2, 2), lambda s: gen_flower((2, 2, 2), s), 2),
    ("flower (2,2)", (2, 2), lambda s: gen_flower((2, 2), s), 1),
    ("chain (1,2,2,1)", (1, 2, 2, 1), lambda s: gen_chain((1, 2, 2, 1), None, s), 2),
    ("chain (1,2,1)", (1, 2, 1), lambda s: gen_chain((1, 2, 1), None, s), 1),
]


def check_class_counts(**_) -> CheckResult:
    parts, ok = [], True
    for name, sizes, gen, want in CLASS_CASES:
        got = len(isomorphism_classes(all_sign_variants(sizes, gen)))
        ok &= got == want
        parts.append(f"{name}: {got}")
    return CheckResult("class-counts", ok, "; ".join(parts), "2, 1, 2, 1")


# ---------------------------------------------------------------------------
# 8. synchronous witness


def check_sync_witness(**_) -> CheckResult:
    net, lab = gen_badc(3, 3)
    c1 = lab.cycles[0]
    o = lab.center
    W = [a for a in c1 if a != o]
    U = A.unreachables(A.build_atg(net))
    literal = corrected = 0
    for x in U:
        if any(apply_update(net, W, xh) == x and not is_unreachable(net, xh) for xh in range(1 << net.n)):
            literal += 1
        xh, w = synchronous_unreachable_witness(net, x, labeling=lab)
        corrected += apply_update(net, w, xh) == x and not is_unreachable(net, xh)
    return CheckResult(
        "sync-witness",
        literal == len(U),
        f"W=C1-{{o}}: a reachable preimage exists for {literal}/{len(U)} unreachables; "
        f"W=C1 with x-hat=not x^C1: {corrected}/{len(U)}",
        "every unreachable has a reachable preimage under W=C1-{o}",
    )


# ---------------------------------------------------------------------------
# 9. tightness


def tightness_distance(k: int) -> int:
    net, lab = gen_badc(k, k)
    src = lab.parse_vector("(" + ",".join("1" + "0" * (k - 1) for _ in range(2)) + ")")
    alt = "0" + "10" * ((k - 1) // 2)
    dst = lab.parse_vector(f"({alt},{alt})")
    return A.bfs_distance(A.build_atg(net), src, dst)


def check_tightness(**_) -> CheckResult:
    d = {k: tightness_distance(k) for k in (3, 5, 7)}
    ratio = d[7] / d[5]
    ok = d[3] < d[5] < d[7] and ratio > 12 / 8 * 1.2
    return CheckResult(
        "tightness",
        ok,
        f"d(3,3)={d[3]}, d(5,5)={d[5]}, d(7,7)={d[7]}, ratio {ratio:.3f}",
        "strictly increasing, d(7,7)/d(5,5) > 1.8",
    )


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "atg-fixtures": check_atg_fixtures,
    "theorem-shape": check_theorem_shape,
    "planner": check_planner,
    "fixed-points": check_fixed_points,
    "reverse-duality": check_reverse_duality,
    "isomorphism": check_isomorphism,
    "class-counts": check_class_counts,
    "sync-witness": check_sync_witness,
    "tightness": check_tightness,
}


def run_check(name: str, seed: int = 0) -> CheckResult:
    t = time.perf_counter()
    r = CHECKS[name](seed=seed)
    r.seconds = time.perf_counter() - t
    return r


def reproduce(only: Optional[Sequence[str]] = None, seed: int = 0) -> List[CheckResult]:
    names = list(only) if only else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    return [run_check(n, seed) for n in names]


__all__ = ["CheckResult", "CHECKS", "run_check", "reproduce", "tightness_distance", "atg_invariants", "edge_set"]
