"""Constructive asynchronous update plans.

* :func:`plan_badc` drives a double cycle through its alternating waypoint.
* :func:`plan_destabilize` propagates instability along a shortest path.
* :func:`plan_general` combines both over a breadth-first tree rooted at an
  induced double cycle.

Every plan is replayed before it is returned; a replay mismatch raises
:class:`PlanDefect`, which signals a bug rather than bad input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from . import graphs
from .core import (
    ConfigLike,
    Network,
    StructuralError,
    as_config,
    config_to_str,
    flip,
    is_fixed_point,
    is_strongly_connected,
    is_unreachable,
    mask_of,
    positive_flip,
    restrict,
    state,
    step,
    unstable_mask,
    _f,
)
from .families import FamilyLabeling


class PlanError(StructuralError):
    """A planning precondition does not hold."""


class PlanDefect(RuntimeError):
    """Internal self-check failed: the construction did not do what it should."""


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True)
class UpdatePlan:
    steps: Tuple[int, ...]
    start: int
    target: int
    n: int
    trace: Optional[Tuple[int, ...]] = None

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> Dict[str, object]:
        return {
            "start": config_to_str(self.start, self.n),
            "target": config_to_str(self.target, self.n),
            "steps": list(self.steps),
            "length": len(self.steps),
        }


@dataclass(frozen=True)
class PlanCheck:
    ok: bool
    trace: Tuple[int, ...]
    divergence: Optional[int] = None


def run_steps(net: Network, x: int, steps: Iterable[int]) -> List[int]:
    trace = [x]
    for i in steps:
        trace.append(step(net, i, trace[-1]))
    return trace


def verify_plan(net: Network, plan: UpdatePlan) -> PlanCheck:
    """Replay ``plan`` from its start.

    On failure ``divergence`` is the first step whose outcome differs from
    the recorded trace, or (without a trace) the first step that leaves the
    configuration unchanged, or ``len(steps)`` if every step moved.
    """
    for i in plan.steps:
        if not isinstance(i, int) or not 1 <= i <= net.n:
            return PlanCheck(False, (plan.start,), 0)
    trace = tuple(run_steps(net, plan.start, plan.steps))
    if trace[-1] == plan.target and (plan.trace is None or plan.trace == trace):
        return PlanCheck(True, trace)
    if plan.trace is not None:
        for k in range(1, min(len(trace), len(plan.trace))):
            if trace[k] != plan.trace[k]:
                return PlanCheck(False, trace, k - 1)
    for k in range(len(plan.steps)):
        if trace[k] == trace[k + 1]:
            return PlanCheck(False, trace, k)
    return PlanCheck(False, trace, len(plan.steps))


def _emit(net: Network, x: int, target: int, steps: Sequence[int]) -> UpdatePlan:
    """Drop no-op updates, replay, and package."""
    trace = [x]
    kept = []
    for i in steps:
        y = step(net, i, trace[-1])
        if y != trace[-1]:
            kept.append(i)
            trace.append(y)
    if trace[-1] != target:
        raise PlanDefect(
            f"plan ends in {config_to_str(trace[-1], net.n)}, expected {config_to_str(target, net.n)}"
        )
    return UpdatePlan(tuple(kept), x, target, net.n, tuple(trace))


class _Run:
    """Records updates applied to a running configuration."""

    def __init__(self, net: Network, x: int):
        self.net = net
        self.x = x
        self.steps: List[int] = []

    def upd(self, *automata: int) -> None:
        for i in automata:
            self.x = step(self.net, i, self.x)
            self.steps.append(i)

    def get(self, i: int) -> int:
        return state(self.x, i)

    def unstable(self, i: int) -> bool:
        return _f(self.net, i, self.x) != state(self.x, i)


def greedy_plan(net: Network, x: int, target: int) -> Optional[List[int]]:
    """Repeatedly update the lowest wrong automaton whose rule already yields its target.

    Each such update fixes one bit and touches no other, so success gives a
    plan of length equal to the Hamming distance (hence optimal).
    """
    steps = []
    while x != target:
        cand = (x ^ target) & unstable_mask(net, x)
        if not cand:
            return None
        k = (cand & -cand).bit_length()
        x ^= 1 << (k - 1)
        steps.append(k)
    return steps


# ---------------------------------------------------------------------------
# double-cycle structure


@dataclass(frozen=True)
class InducedBadc:
    """Two cycles meeting only at ``center``; both tuples start at the center."""

    cycle1: Tuple[int, ...]
    cycle2: Tuple[int, ...]

    @property
    def center(self) -> int:
        return self.cycle1[0]

    @property
    def size(self) -> int:
        return len(self.cycle1) + len(self.cycle2) - 1

    @property
    def automata(self) -> Tuple[int, ...]:
        """Cycle 1, then the rest of cycle 2: the local numbering of :meth:`local_labeling`."""
        return self.cycle1 + self.cycle2[1:]

    def local_labeling(self) -> FamilyLabeling:
        n1, n2 = len(self.cycle1), len(self.cycle2)
        c1 = tuple(range(1, n1 + 1))
        c2 = (1,) + tuple(range(n1 + 1, n1 + n2))
        return FamilyLabeling("badc", (c1, c2))


def _rotate(cycle: Sequence[int], start: int) -> Tuple[int, ...]:
    k = list(cycle).index(start)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def _arcs(graph, nodes) -> set:
    return {(u, v) for u in nodes for v in graph[u] if v in nodes}


def _cycle_arcs(c: Sequence[int]) -> set:
    return {(c[k - 1], c[k]) for k in range(len(c))}


def _cycles(net: Network, limit: int) -> List[List[int]]:
    try:
        return graphs.simple_cycles(net.graph, limit=limit)
    except ValueError:
        g = nx.DiGraph([(u, v) for u, vs in net.graph.items() for v in vs])
        out = []
        for c in itertools.islice(nx.simple_cycles(g), limit):
            k = c.index(min(c))
            out.append(c[k:] + c[:k])
        out.sort(key=lambda c: (len(c), c))
        return out


def find_induced_badc(net: Network, *, cycle_limit: int = 20_000) -> Optional[InducedBadc]:
    """Smallest induced double cycle with size >= 4 and a cycle of length >= 3.

    Ties are broken lexicographically on (size, cycle1, cycle2); cycle 1 is
    the longer cycle.
    """
    cycles = _cycles(net, cycle_limit)
    best = None
    best_key = None
    for a, b in itertools.combinations(cycles, 2):
        shared = set(a) & set(b)
        if len(shared) != 1:
            continue
        size = len(a) + len(b) - 1
        if size < 4 or max(len(a), len(b)) < 3:
            continue
        if best_key is not None and size > best_key[0]:
            continue
        nodes = set(a) | set(b)
        if _arcs(net.graph, nodes) != _cycle_arcs(a) | _cycle_arcs(b):
            continue
        (o,) = shared
        c1, c2 = _rotate(a, o), _rotate(b, o)
        if (len(c2), c2) > (len(c1), c1):
            c1, c2 = c2, c1
        key = (size, c1, c2)
        if best_key is None or key < best_key:
            best, best_key = InducedBadc(c1, c2), key
    return best


def badc_structure(net: Network, labeling: Optional[FamilyLabeling] = None) -> InducedBadc:
    """The two cycles of a network that is exactly a double cycle (any sizes)."""
    if labeling is not None:
        if labeling.m != 2:
            raise PlanError("a double-cycle labeling needs exactly two cycles")
        c1, c2 = labeling.cycles
        if c1[0] != c2[0]:
            raise PlanError("labeled cycles must both start at the center")
        b = InducedBadc(tuple(c1), tuple(c2))
    else:
        cycles = _cycles(net, 16)
        if len(cycles) != 2 or len(set(cycles[0]) & set(cycles[1])) != 1:
            raise PlanError("network is not a double cycle")
        (o,) = set(cycles[0]) & set(cycles[1])
        c1, c2 = _rotate(cycles[0], o), _rotate(cycles[1], o)
        if (len(c2), c2) > (len(c1), c1):
            c1, c2 = c2, c1
        b = InducedBadc(c1, c2)
    if sorted(b.automata) != list(net.automata):
        raise PlanError("double cycle does not cover the network")
    if _arcs(net.graph, set(b.automata)) != _cycle_arcs(b.cycle1) | _cycle_arcs(b.cycle2):
        raise PlanError("network arcs do not match the double cycle")
    return b


# ---------------------------------------------------------------------------
# double-cycle algorithm (positive representative)


def badc_waypoint_steps(net: Network, c1: Sequence[int], c2: Sequence[int], x: int) -> _Run:
    """Drive a positive double cycle with ``len(c1) >= 3`` to its alternating waypoint.

    On return every automaton except the center is unstable and the center
    satisfies f_o(not-x^o) = x_o.
    """
    o = c1[0]
    n1, n2 = len(c1), len(c2)
    run = _Run(net, x)
    last1, last2 = c1[-1], c2[-1]

    # (a) last of C1 -> 1, last of C2 -> 0
    dist = {}
    for j, a in enumerate(c1):
        dist[a] = n1 - 1 - j
    for j, a in enumerate(c2[1:], start=1):
        dist[a] = (n2 - 1 - j) + n1
    ones = [a for a in dist if run.get(a)]
    if not ones:
        raise PlanDefect("positive double cycle with no automaton in state 1 is stable")
    src = min(ones, key=lambda a: (dist[a], a))
    if src in c1:
        run.upd(*c1[c1.index(src) + 1 :])
    else:
        run.upd(*c2[c2.index(src) + 1 :], o, *c1[1:])
    if run.get(last2):
        run.upd(o, *c2[1:])
    if run.get(last1) != 1 or run.get(last2) != 0:
        raise PlanDefect("double cycle: first propagation did not set the cycle ends")

    # (b) alternate C1 from its end
    for j in range(n1, 1, -1):
        run.upd(*c1[:j])
        run.upd(*c2[1:])
    # (c) alternate C2, shifting C1 back each round
    for j in range(n2 - 1, 1, -1):
        run.upd(*c2[:j])
        run.upd(*reversed(c1[1:]))
    # (d) the center is unstable here; one update makes every other automaton unstable
    run.upd(o)

    for a in list(c1[1:]) + list(c2[1:]):
        if not run.unstable(a):
            raise PlanDefect(f"waypoint check failed: automaton {a} is stable")
    if _f(net, o, run.x ^ (1 << (o - 1))) != run.get(o):
        raise PlanDefect("waypoint check failed at the center")
    return run


def _badc_finish(run: _Run, c1: Sequence[int], c2: Sequence[int], target: int) -> None:
    """From the waypoint, set every automaton to ``target``."""
    net = run.net
    o = c1[0]

    def reach_ok(a: int) -> bool:
        return _f(net, a, target ^ (1 << (a - 1))) == state(target, a)

    if reach_ok(o):
        t, home, pos = o, None, 0
    else:
        t = None
        for cyc in (c1, c2):
            for j, a in enumerate(cyc[1:], start=1):
                if reach_ok(a):
                    t, home, pos = a, cyc, j
                    break
            if t is not None:
                break
        if t is None:
            raise PlanError("target configuration is unreachable")

    if t != o and run.get(o) != state(target, o):
        other = c2 if home is c1 else c1
        if run.unstable(o):
            sweep = None
        elif len(other) >= 2:
            sweep = other
        else:
            sweep = home
        if sweep is not None:
            run.upd(*reversed(sweep[1:]))
        if sweep is not home:
            run.upd(*reversed(home[1:pos]))
        if not run.unstable(o):
            raise PlanDefect("center did not become unstable before its flip")
        run.upd(o)

    for cyc in (c1, c2):
        for a in reversed(cyc[1:]):
            if a == t or run.get(a) == state(target, a):
                continue
            before = run.x
            run.upd(a)
            if run.x == before:
                raise PlanDefect(f"sweep could not switch automaton {a}")
    if run.get(t) != state(target, t):
        run.upd(t)


def _badc_positive(net: Network, b: InducedBadc, x: int, target: int) -> List[int]:
    c1, c2 = b.cycle1, b.cycle2
    if len(c1) < len(c2):
        c1, c2 = c2, c1
    run = badc_waypoint_steps(net, c1, c2, x)
    _badc_finish(run, c1, c2, target)
    return run.steps


def _check_endpoints(net: Network, x: int, target: int) -> None:
    if is_fixed_point(net, x):
        raise PlanError(f"start {config_to_str(x, net.n)} is stable (a fixed point)")
    if x != target and is_unreachable(net, target):
        raise PlanError(f"target {config_to_str(target, net.n)} is unreachable")


def _conjugate_positive(net: Network) -> Tuple[Network, int]:
    s = positive_flip(net)
    if s is None:
        raise PlanDefect("double cycle has no positive representative")
    pos = flip(net, [i for i in net.automata if (s >> (i - 1)) & 1])
    if any(pos.parities):
        raise PlanDefect("flip conjugation did not produce a positive network")
    return pos, s


def plan_badc(
    net: Network,
    x: ConfigLike,
    target: ConfigLike,
    *,
    badc: Optional[InducedBadc] = None,
    labeling: Optional[FamilyLabeling] = None,
    shortcut: bool = False,
) -> UpdatePlan:
    """Update plan on a double cycle from an unstable ``x`` to a reachable ``target``.

    The plan is built on the positive representative (flip conjugation) and
    is valid unchanged for ``net``. Sizes with both cycles <= 2 use a
    shortest path in the ATG. With ``shortcut`` a greedy Hamming-distance
    plan is tried first.
    """
    x, target = as_config(x, net.n), as_config(target, net.n)
    b = badc if badc is not None else badc_structure(net, labeling)
    _check_endpoints(net, x, target)
    if x == target:
        return _emit(net, x, target, [])
    if shortcut:
        g = greedy_plan(net, x, target)
        if g is not None:
            return _emit(net, x, target, g)
    pos, s = _conjugate_positive(net)
    if max(len(b.cycle1), len(b.cycle2)) < 3:
        from .atg import build_atg, shortest_updates

        steps = shortest_updates(build_atg(net), x, target)
        if steps is None:
            raise PlanDefect("small double cycle: target not reachable in the ATG")
    else:
        steps = _badc_positive(pos, b, x ^ s, target ^ s)
    return _emit(net, x, target, steps)


# ---------------------------------------------------------------------------
# influence propagation


def _walk(net: Network, x: int, path: Sequence[int]) -> Optional[Tuple[List[int], int]]:
    """Updates from the last unstable automaton of ``path`` up to its second-last."""
    last = None
    for k, a in enumerate(path):
        if _f(net, a, x) != state(x, a):
            last = k
    if last is None:
        return None
    steps = list(path[last:-1])
    for a in steps:
        x = step(net, a, x)
    return steps, x


def plan_destabilize(net: Network, x: ConfigLike, i: int, j: int) -> UpdatePlan:
    """Reach a configuration where ``j`` is unstable, starting with ``i`` unstable.

    Updates run along a shortest interaction path from ``i`` to ``j`` (lowest
    ids on ties), from its last unstable automaton to the one before ``j``.
    The plan's target is the configuration reached.
    """
    x = as_config(x, net.n)
    for a in (i, j):
        if not isinstance(a, int) or not 1 <= a <= net.n:
            raise StructuralError(f"automaton index {a!r} outside 1..{net.n}")
    if _f(net, i, x) == state(x, i):
        raise PlanError(f"automaton {i} is stable in {config_to_str(x, net.n)}")
    path = graphs.shortest_path(net.graph, [i], [j])
    if path is None:
        raise StructuralError(f"no interaction path from {i} to {j}")
    steps, y = _walk(net, x, path)
    if _f(net, j, y) == state(y, j):
        raise PlanDefect(f"automaton {j} still stable after propagation")
    return _emit(net, x, y, steps)


# ---------------------------------------------------------------------------
# general networks


@dataclass
class _Ctx:
    net: Network
    b: InducedBadc
    bmask: int
    run: _Run
    stats: Dict[str, int] = field(default_factory=dict)

    def bump(self, key: str) -> None:
        self.stats[key] = self.stats.get(key, 0) + 1


def _b_unstable(net: Network, bmask: int, x: int) -> bool:
    return bool(unstable_mask(net, x) & bmask)


def _b_local(b: InducedBadc, x: int) -> int:
    return sum(state(x, a) << k for k, a in enumerate(b.automata))


def _b_global(b: InducedBadc, x: int, local: int) -> int:
    for k, a in enumerate(b.automata):
        bit = 1 << (a - 1)
        x = (x | bit) if (local >> k) & 1 else (x & ~bit)
    return x


def _b_candidates(ctx: _Ctx, x: int) -> List[int]:
    """Local B-configurations reachable from ``x``'s, current first."""
    sub, _ = restrict(ctx.net, ctx.b.automata, x)
    cur = _b_local(ctx.b, x)
    size = len(ctx.b.automata)
    out = [cur]
    for c in range(1 << size):
        if c != cur and not is_unreachable(sub, c):
            out.append(c)
    return out


def _move_b(ctx: _Ctx, local: int) -> None:
    """Reconfigure B (environment frozen) with the double-cycle algorithm."""
    run = ctx.run
    cur = _b_local(ctx.b, run.x)
    if cur == local:
        return
    sub, _ = restrict(ctx.net, ctx.b.automata, run.x)
    plan = plan_badc(sub, cur, local, badc=InducedBadc(*ctx.b.local_labeling().cycles), shortcut=True)
    for k in plan.steps:
        run.upd(ctx.b.automata[k - 1])
    ctx.bump("badc_calls")


def _set_outside(ctx: _Ctx, v: int, want: int, path: Sequence[int]) -> None:
    """Give ``v`` the state ``want`` while leaving B unstable."""
    net, run, b = ctx.net, ctx.run, ctx.b

    def finish(y: int, path_from: Sequence[int]) -> Optional[Tuple[List[int], int]]:
        w = _walk(net, y, path_from)
        if w is None:
            return None
        steps, z = w
        if _f(net, v, z) != want:
            return None
        steps = steps + [v]
        z = step(net, v, z)
        if state(z, v) != want or not _b_unstable(net, ctx.bmask, z):
            return None
        return steps, z

    for c in _b_candidates(ctx, run.x):
        res = finish(_b_global(b, run.x, c), path)
        if res is not None:
            _move_b(ctx, c)
            run.upd(*res[0])
            ctx.bump("one_stage")
            return

    # two stages: settle the first path automaton, then re-tune B
    for c1 in _b_candidates(ctx, run.x):
        y = _b_global(b, run.x, c1)
        last = None
        for k, a in enumerate(path):
            if _f(net, a, y) != state(y, a):
                last = k
        if last is None or last > 1:
            continue
        head = list(path[last:2])
        z1 = y
        for a in head:
            z1 = step(net, a, z1)
        if not _b_unstable(net, ctx.bmask, z1):
            continue
        for c2 in _b_candidates(ctx, z1):
            res = finish(_b_global(b, z1, c2), path[1:])
            if res is not None:
                _move_b(ctx, c1)
                run.upd(*head)
                _move_b(ctx, c2)
                run.upd(*res[0])
                ctx.bump("two_stage")
                return
    raise PlanDefect(f"no instability-preserving way to set automaton {v}")


def _staging(net: Network, b: InducedBadc, target: int) -> Tuple[int, List[int]]:
    """Intermediate target x-hat whose B-part is reachable, plus the closing updates.

    Tries the inductive construction along a shortest path from an automaton
    i with f_i(not-x'^i) = x'_i to B first, then any assignment of that path.
    """
    bset = set(b.automata)
    starts = [a for a in net.automata if a not in bset and _f(net, a, target ^ (1 << (a - 1))) == state(target, a)]
    if not starts:
        raise PlanError("target configuration is unreachable")

    def closing(xh: int, path: Sequence[int]) -> Optional[List[int]]:
        sub, _ = restrict(net, b.automata, xh)
        if is_unreachable(sub, _b_local(b, xh)):
            return None
        cur, steps = xh, []
        for a in reversed(path):
            if state(cur, a) != state(target, a):
                nxt = step(net, a, cur)
                if nxt == cur:
                    return None
                cur = nxt
                steps.append(a)
        return steps if cur == target else None

    paths = []
    for i in starts:
        p = graphs.shortest_path(net.graph, [i], bset)
        if p is not None:
            paths.append(p)
    paths.sort(key=lambda p: (len(p), p))
    for p in paths:
        xh = target
        for l in range(1, len(p)):
            xh = _set_bit(xh, p[l], 1 - state(target, p[l]))
            a = p[l - 1]
            # choose x-hat_a so that a is unstable
            if _f(net, a, xh) == state(xh, a):
                xh ^= 1 << (a - 1)
                if _f(net, a, xh) == state(xh, a):
                    xh ^= 1 << (a - 1)
        steps = closing(xh, p)
        if steps is not None:
            return xh, steps
    for p in paths:
        for bits in range(1 << len(p)):
            xh = target
            for k, a in enumerate(p):
                xh = _set_bit(xh, a, (bits >> k) & 1)
            steps = closing(xh, p)
            if steps is not None:
                return xh, steps
    raise PlanDefect("no staging configuration found for an unreachable B-target")


def _set_bit(x: int, a: int, v: int) -> int:
    bit = 1 << (a - 1)
    return (x | bit) if v else (x & ~bit)


@dataclass(frozen=True)
class GeneralReport:
    plan: UpdatePlan
    badc: InducedBadc
    staged: bool
    stats: Dict[str, int]


def plan_general_report(
    net: Network, x: ConfigLike, target: ConfigLike, *, shortcut: bool = True, badc: Optional[InducedBadc] = None
) -> GeneralReport:
    x, target = as_config(x, net.n), as_config(target, net.n)
    if not is_strongly_connected(net):
        raise PlanError("interaction graph is not strongly connected")
    b = badc if badc is not None else find_induced_badc(net)
    if b is None:
        raise PlanError("no induced double cycle of size > 3: outside the theorem's scope")
    _check_endpoints(net, x, target)
    if x == target:
        return GeneralReport(_emit(net, x, target, []), b, False, {})
    if shortcut:
        g = greedy_plan(net, x, target)
        if g is not None:
            return GeneralReport(_emit(net, x, target, g), b, False, {"greedy": 1})
    if b.size == net.n:
        lab = FamilyLabeling("badc", (b.cycle1, b.cycle2))
        return GeneralReport(plan_badc(net, x, target, labeling=lab, shortcut=shortcut), b, False, {"badc_calls": 1})

    bset = set(b.automata)
    bmask = mask_of(bset)
    ctx = _Ctx(net, b, bmask, _Run(net, x))
    run = ctx.run

    # 1. make B unstable
    if not _b_unstable(net, bmask, run.x):
        p = graphs.shortest_path(net.graph, [a for a in net.automata if run.unstable(a)], bset)
        run.upd(*_walk(net, run.x, p)[0])
        if not _b_unstable(net, bmask, run.x):
            raise PlanDefect("double cycle still stable after propagation")

    # 2. unreachable B-part of the target: aim for x-hat first
    sub_t, _ = restrict(net, b.automata, target)
    staged = is_unreachable(sub_t, _b_local(b, target))
    goal, closing = (_staging(net, b, target) if staged else (target, []))

    # 3. outside automata, leaves to root of the BFS tree
    parent = graphs.bfs_tree(net.graph, bset)
    depth = graphs.tree_depths(parent)
    for v in sorted((a for a in net.automata if a not in bset), key=lambda a: (-depth[a], a)):
        want = state(goal, v)
        if run.get(v) != want:
            _set_outside(ctx, v, want, graphs.branch(parent, v))

    # 4. B itself, then the closing updates
    _move_b(ctx, _b_local(b, goal))
    if run.x != goal:
        raise PlanDefect("B-stage did not reach the intermediate goal")
    run.upd(*closing)
    return GeneralReport(_emit(net, x, target, run.steps), b, staged, ctx.stats)


def plan_general(
    net: Network, x: ConfigLike, target: ConfigLike, *, shortcut: bool = True, badc: Optional[InducedBadc] = None
) -> UpdatePlan:
    """Update plan from a non-stable ``x`` to a reachable ``target``.

    Preconditions: strongly connected interaction graph containing an
    induced double cycle of size > 3 (see :func:`find_induced_badc`).
    """
    return plan_general_report(net, x, target, shortcut=shortcut, badc=badc).plan


# ---------------------------------------------------------------------------
# synchronous witness


def synchronous_unreachable_witness(
    net: Network, x: ConfigLike, *, labeling: Optional[FamilyLabeling] = None
) -> Tuple[int, frozenset]:
    """For an unreachable ``x`` of a double cycle: a reachable x-hat and a set W
    whose synchronous update maps x-hat onto ``x``.

    Returns x-hat = x with all of C1 (center included) negated and W = C1.
    Excluding the center from both cannot work: unreachability forces the
    second automaton of C1 to disagree with the center, while an update that
    leaves the center alone copies the center's state into it.
    """
    b = badc_structure(net, labeling)
    x = as_config(x, net.n)
    if not is_unreachable(net, x):
        raise PlanError(f"{config_to_str(x, net.n)} is not unreachable")
    c1 = b.cycle1 if len(b.cycle1) >= 2 else b.cycle2
    w = frozenset(c1)
    xh = x ^ mask_of(c1)
    from .core import apply_update

    if apply_update(net, w, xh) != x or is_unreachable(net, xh):
        raise PlanDefect("synchronous witness check failed")
    return xh, w


__all__ = [
    "PlanError",
    "PlanDefect",
    "UpdatePlan",
    "PlanCheck",
    "InducedBadc",
    "GeneralReport",
    "run_steps",
    "verify_plan",
    "greedy_plan",
    "find_induced_badc",
    "badc_structure",
    "badc_waypoint_steps",
    "plan_badc",
    "plan_destabilize",
    "plan_general",
    "plan_general_report",
    "synchronous_unreachable_witness",
]
