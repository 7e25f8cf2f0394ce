"""Asynchronous transition graphs: construction, condensation and shape analysis.

The graph on 2^n configurations is stored implicitly as one instability mask
per configuration (bit i-1 set iff automaton i is unstable). The successor of
``x`` under ``{i}`` is ``x ^ (unstable[x] & bit_i)``; the full ``2^n x n``
successor table is materialised only on request.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import ConfigLike, Network, StructuralError, as_config, config_to_str

DEFAULT_LIMIT = 24
_CHUNK = 1 << 20


class AtgLimitError(StructuralError):
    pass


@dataclass(frozen=True, eq=False)
class Atg:
    n: int
    unstable: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n

    def successor(self, x: int, i: int) -> int:
        return int(x ^ (int(self.unstable[x]) & (1 << (i - 1))))

    def successors(self, x: int) -> List[int]:
        return [self.successor(x, i) for i in range(1, self.n + 1)]

    def table(self) -> np.ndarray:
        """Flat successor table: ``table()[x, i-1]`` is the successor under {i}."""
        xs = np.arange(self.size, dtype=np.int64)
        u = self.unstable.astype(np.int64)
        return np.stack([xs ^ (u & (1 << k)) for k in range(self.n)], axis=1)

    def edges(self) -> Iterator[Tuple[int, int, int]]:
        """All labeled arcs ``(x, i, y)`` including self-loops."""
        for x in range(self.size):
            u = int(self.unstable[x])
            for i in range(1, self.n + 1):
                yield x, i, x ^ (u & (1 << (i - 1)))

    def moves(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Non-loop arcs as parallel arrays (source, label, target)."""
        xs = np.arange(self.size, dtype=np.int64)
        u = self.unstable.astype(np.int64)
        src, lab, dst = [], [], []
        for k in range(self.n):
            sel = (u >> k) & 1 == 1
            s = xs[sel]
            src.append(s)
            lab.append(np.full(s.shape, k + 1, dtype=np.int64))
            dst.append(s ^ (1 << k))
        return np.concatenate(src), np.concatenate(lab), np.concatenate(dst)

    def has_in_arc(self) -> np.ndarray:
        """Configurations with at least one incoming non-loop arc."""
        mark = np.zeros(self.size, dtype=bool)
        xs = np.arange(self.size, dtype=np.int64)
        u = self.unstable.astype(np.int64)
        for k in range(self.n):
            mark[xs[(u >> k) & 1 == 1] ^ (1 << k)] = True
        return mark


def _unstable_chunk(net: Network, lo: int, hi: int) -> np.ndarray:
    xs = np.arange(lo, hi, dtype=np.uint32)
    out = np.zeros(hi - lo, dtype=np.uint32)
    for k in range(net.n):
        f = (np.bitwise_count(xs & np.uint32(net.masks[k])) & 1).astype(np.uint32) ^ np.uint32(net.parities[k])
        cur = (xs >> np.uint32(k)) & np.uint32(1)
        out |= (f ^ cur) << np.uint32(k)
    return out


def build_atg(net: Network, limit: int = DEFAULT_LIMIT, workers: int = 1) -> Atg:
    """Complete asynchronous transition graph of ``net``.

    With ``workers > 1`` disjoint configuration ranges are evaluated in
    parallel; the result does not depend on the worker count.
    """
    if net.n > limit:
        raise AtgLimitError(f"n={net.n} exceeds the ATG size limit {limit}")
    size = 1 << net.n
    bounds = [(lo, min(size, lo + _CHUNK)) for lo in range(0, size, _CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _unstable_chunk(net, *b), bounds))
    else:
        parts = [_unstable_chunk(net, lo, hi) for lo, hi in bounds]
    unstable = np.concatenate(parts)
    unstable.setflags(write=False)
    return Atg(net.n, unstable)


# ---------------------------------------------------------------------------
# condensation


@dataclass(frozen=True, eq=False)
class Condensation:
    """SCC partition of an ATG.

    Components are numbered by their smallest configuration, so numbering is
    independent of the SCC algorithm's visiting order.
    """

    scc: np.ndarray
    sizes: np.ndarray
    dag: np.ndarray
    terminal: np.ndarray

    @property
    def count(self) -> int:
        return len(self.sizes)

    def members(self, k: int) -> List[int]:
        return [int(v) for v in np.flatnonzero(self.scc == k)]

    def attractors(self) -> List[List[int]]:
        return [self.members(int(k)) for k in np.flatnonzero(self.terminal)]

    def successors(self, k: int) -> List[int]:
        return [int(b) for a, b in self.dag if a == k]


def condense(atg: Atg) -> Condensation:
    src, _, dst = atg.moves()
    size = atg.size
    g = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    ncomp, labels = connected_components(g, directed=True, connection="strong")
    first = np.full(ncomp, size, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(size, dtype=np.int64))
    order = np.argsort(first, kind="stable")
    rename = np.empty(ncomp, dtype=np.int64)
    rename[order] = np.arange(ncomp)
    scc = rename[labels]
    sizes = np.bincount(scc, minlength=ncomp)
    a, b = scc[src], scc[dst]
    cross = a != b
    pairs = np.unique(np.stack([a[cross], b[cross]], axis=1), axis=0) if cross.any() else np.zeros((0, 2), dtype=np.int64)
    terminal = np.ones(ncomp, dtype=bool)
    terminal[pairs[:, 0]] = False
    return Condensation(scc, sizes, pairs, terminal)


def fixed_points(atg: Atg) -> List[int]:
    return [int(v) for v in np.flatnonzero(atg.unstable == 0)]


def unreachables(atg: Atg) -> List[int]:
    """Configurations whose only incoming arcs are self-loops."""
    return [int(v) for v in np.flatnonzero(~atg.has_in_arc())]


def attractors(atg: Atg) -> List[List[int]]:
    return condense(atg).attractors()


def transient_kind(atg: Atg, cond: Condensation, x: int) -> Optional[str]:
    """``None`` for attractor configurations, else ``reversible`` or ``irreversible``."""
    k = cond.scc[x]
    if cond.terminal[k]:
        return None
    return "reversible" if cond.sizes[k] > 1 else "irreversible"


# ---------------------------------------------------------------------------
# shortest paths


def _bfs(atg: Atg, x: int, stop: Optional[int] = None, parents: bool = False):
    size = atg.size
    dist = np.full(size, -1, dtype=np.int64)
    par = np.full(size, -1, dtype=np.int64) if parents else None
    lab = np.zeros(size, dtype=np.int64) if parents else None
    dist[x] = 0
    frontier = np.array([x], dtype=np.int64)
    u = atg.unstable.astype(np.int64)
    level = 0
    while frontier.size and (stop is None or dist[stop] < 0):
        level += 1
        nxt = []
        fu = u[frontier]
        for k in range(atg.n):
            sel = (fu >> k) & 1 == 1
            src = frontier[sel]
            dst = src ^ (1 << k)
            fresh = dist[dst] < 0
            src, dst = src[fresh], dst[fresh]
            if not dst.size:
                continue
            dst, idx = np.unique(dst, return_index=True)
            dist[dst] = level
            if parents:
                par[dst] = src[idx]
                lab[dst] = k + 1
            nxt.append(dst)
        frontier = np.concatenate(nxt) if nxt else np.zeros(0, dtype=np.int64)
    return dist, par, lab


def bfs_distances(atg: Atg, x: ConfigLike) -> np.ndarray:
    """Shortest update count from ``x`` to every configuration (-1 if unreachable)."""
    return _bfs(atg, as_config(x, atg.n))[0]


def bfs_distance(atg: Atg, x: ConfigLike, y: ConfigLike) -> Optional[int]:
    x, y = as_config(x, atg.n), as_config(y, atg.n)
    d = int(_bfs(atg, x, stop=y)[0][y])
    return None if d < 0 else d


def shortest_updates(atg: Atg, x: ConfigLike, y: ConfigLike) -> Optional[List[int]]:
    """Automaton labels of one shortest update sequence from ``x`` to ``y``."""
    x, y = as_config(x, atg.n), as_config(y, atg.n)
    dist, par, lab = _bfs(atg, x, stop=y, parents=True)
    if dist[y] < 0:
        return None
    steps = []
    v = y
    while v != x:
        steps.append(int(lab[v]))
        v = int(par[v])
    return steps[::-1]


# ---------------------------------------------------------------------------
# theorem shape


@dataclass(frozen=True)
class ShapeReport:
    """Unreachables -> one SCC -> fixed points.

    ``verdict`` holds iff all configurations outside S and U form one SCC,
    every unreachable non-fixed configuration has an arc into it and every
    fixed point that is not unreachable has an arc from it.
    """

    n: int
    fixed_points: FrozenSet[int]
    unreachables: FrozenSet[int]
    big_scc_size: int
    verdict: bool
    in_scope: bool
    scope_reason: str = ""
    diameter: Optional[int] = None

    def summary(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "in_scope": self.in_scope,
            "scope_reason": self.scope_reason,
            "fixed_points": sorted(config_to_str(x, self.n) for x in self.fixed_points),
            "unreachables": sorted(config_to_str(x, self.n) for x in self.unreachables),
            "big_scc_size": self.big_scc_size,
            "verdict": self.verdict,
            "diameter": self.diameter,
        }


def shape_of(atg: Atg, cond: Optional[Condensation] = None) -> Tuple[FrozenSet[int], FrozenSet[int], int, bool]:
    cond = cond if cond is not None else condense(atg)
    fixed = atg.unstable == 0
    unreach = ~atg.has_in_arc()
    rest = ~(fixed | unreach)
    comps = np.unique(cond.scc[rest])
    big = int(rest.sum())
    ok = len(comps) <= 1
    src, _, dst = atg.moves()
    # every unreachable, non-fixed configuration feeds the big SCC
    need_out = unreach & ~fixed
    fed = np.zeros(atg.size, dtype=bool)
    fed[src[rest[dst]]] = True
    ok = ok and bool(np.all(fed[need_out]))
    # every reachable fixed point is entered from the big SCC
    need_in = fixed & ~unreach
    entered = np.zeros(atg.size, dtype=bool)
    entered[dst[rest[src]]] = True
    ok = ok and bool(np.all(entered[need_in]))
    S = frozenset(int(v) for v in np.flatnonzero(fixed))
    U = frozenset(int(v) for v in np.flatnonzero(unreach))
    return S, U, big, ok


def scc_diameter(atg: Atg, members: List[int]) -> int:
    """Largest shortest-path distance between two configurations of one SCC."""
    inside = np.zeros(atg.size, dtype=bool)
    inside[members] = True
    best = 0
    for x in members:
        d = bfs_distances(atg, x)
        best = max(best, int(d[inside].max()))
    return best


def check_theorem_shape(
    net: Network, *, limit: int = DEFAULT_LIMIT, diameter: bool = False, atg: Optional[Atg] = None
) -> ShapeReport:
    """Compare the ATG against the unreachables -> SCC -> fixed points shape.

    Nets that are not strongly connected or lack an induced double cycle of
    size > 3 are reported with ``in_scope=False``; the shape verdict is still
    computed.
    """
    from .core import is_strongly_connected
    from .planner import find_induced_badc

    if not is_strongly_connected(net):
        in_scope, reason = False, "interaction graph is not strongly connected"
    elif find_induced_badc(net) is None:
        in_scope, reason = False, "no induced double cycle of size > 3"
    else:
        in_scope, reason = True, ""
    atg = atg if atg is not None else build_atg(net, limit=limit)
    S, U, big, ok = shape_of(atg)
    diam = None
    if diameter and big:
        rest = [x for x in range(atg.size) if x not in S and x not in U]
        diam = scc_diameter(atg, rest)
    return ShapeReport(net.n, S, U, big, ok, in_scope, reason, diam)


# ---------------------------------------------------------------------------
# export


def _label_groups(atg: Atg) -> Dict[Tuple[int, int], List[int]]:
    groups: Dict[Tuple[int, int], List[int]] = {}
    for x, i, y in atg.edges():
        groups.setdefault((x, y), []).append(i)
    return groups


def to_dot(atg: Atg, name: str = "atg") -> str:
    """DOT digraph; arcs between the same pair are merged with labels ``{1}|{2}``."""
    n = atg.n
    lines = [f"digraph {name} {{"]
    for x in range(atg.size):
        lines.append(f'  "{config_to_str(x, n)}";')
    for (x, y), labels in sorted(_label_groups(atg).items()):
        lab = "|".join(f"{{{i}}}" for i in labels)
        lines.append(f'  "{config_to_str(x, n)}" -> "{config_to_str(y, n)}" [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(atg: Atg, cond: Optional[Condensation] = None) -> str:
    n = atg.n
    cond = cond if cond is not None else condense(atg)
    s = lambda x: config_to_str(int(x), n)  # noqa: E731
    data = {
        "n": n,
        "nodes": [s(x) for x in range(atg.size)],
        "edges": [{"source": s(x), "label": i, "target": s(y)} for x, i, y in atg.edges()],
        "sccs": [[s(x) for x in cond.members(k)] for k in range(cond.count)],
        "terminal_sccs": [int(k) for k in np.flatnonzero(cond.terminal)],
        "fixed_points": [s(x) for x in fixed_points(atg)],
        "unreachables": [s(x) for x in unreachables(atg)],
    }
    return json.dumps(data, indent=1)


__all__ = [
    "DEFAULT_LIMIT",
    "AtgLimitError",
    "Atg",
    "Condensation",
    "ShapeReport",
    "build_atg",
    "condense",
    "fixed_points",
    "unreachables",
    "attractors",
    "transient_kind",
    "bfs_distances",
    "bfs_distance",
    "shortest_updates",
    "shape_of",
    "scc_diameter",
    "check_theorem_shape",
    "to_dot",
    "to_json",
]
