"""Generators for double cycles, flowers, cycle chains and random cacti.

Numbering: cycle 1 comes first (its first automaton is id 1), then the fresh
automata of each following cycle in position order. Every generator returns
the network together with a :class:`FamilyLabeling` recording where each
cycle position landed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import graphs
from .core import Literal, LocalRule, Network, StructuralError, check_index


class FamilyError(StructuralError):
    pass


@dataclass(frozen=True)
class CycleSpec:
    length: int
    arc_signs: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "arc_signs", tuple(bool(s) for s in self.arc_signs))
        if self.length < 1:
            raise FamilyError("cycle length must be positive")
        if len(self.arc_signs) != self.length:
            raise FamilyError(f"cycle of length {self.length} needs {self.length} arc signs")

    @classmethod
    def positive(cls, length: int) -> "CycleSpec":
        return cls(length, (False,) * length)


@dataclass(frozen=True)
class FamilyLabeling:
    """``cycles[k-1][j-1]`` is the id of automaton i^k_j (the j-th of cycle k).

    Arc ``j`` of a cycle enters position ``j`` from position ``j-1`` (arc 1
    closes the cycle from the last position).
    """

    family: str
    cycles: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(tuple(c) for c in self.cycles))

    @property
    def n(self) -> int:
        return len({a for c in self.cycles for a in c})

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def m(self) -> int:
        return len(self.cycles)

    def id(self, k: int, j: int) -> int:
        return self.cycles[k - 1][j - 1]

    def positions(self, a: int) -> List[Tuple[int, int]]:
        return [(k, j) for k, c in enumerate(self.cycles, start=1) for j, b in enumerate(c, start=1) if b == a]

    @property
    def intersections(self) -> Tuple[int, ...]:
        return tuple(sorted(a for a in {b for c in self.cycles for b in c} if len(self.positions(a)) > 1))

    @property
    def center(self) -> int:
        """Shared first automaton of a double cycle or flower."""
        return self.cycles[0][0]

    @property
    def chain_intersections(self) -> Tuple[int, ...]:
        """o_1..o_{m-1} of a chain: o_k is the first automaton of cycle k."""
        return tuple(c[0] for c in self.cycles[:-1])

    def to_json(self) -> str:
        data = {
            "family": self.family,
            "sizes": list(self.sizes),
            "cycles": [list(c) for c in self.cycles],
            "map": {f"{k},{j}": a for k, c in enumerate(self.cycles, start=1) for j, a in enumerate(c, start=1)},
        }
        return json.dumps(data, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FamilyLabeling":
        data = json.loads(text)
        return cls(data.get("family", "cactus"), tuple(tuple(c) for c in data["cycles"]))

    def parse_vector(self, text: str) -> int:
        """Configuration from cycle-vector notation such as ``(0000,0001)``."""
        parts = [p.strip() for p in text.strip().strip("()").split(",")]
        if len(parts) != self.m:
            raise FamilyError(f"expected {self.m} cycle blocks, got {len(parts)}")
        values: Dict[int, int] = {}
        for k, (block, cyc) in enumerate(zip(parts, self.cycles), start=1):
            if len(block) != len(cyc) or set(block) - {"0", "1"}:
                raise FamilyError(f"block {k} must be {len(cyc)} bits, got {block!r}")
            for a, ch in zip(cyc, block):
                v = int(ch)
                if values.setdefault(a, v) != v:
                    raise FamilyError(f"automaton {a} is shared and given two different states")
        x = 0
        for a, v in values.items():
            if v:
                x |= 1 << (a - 1)
        return x

    def format_vector(self, x: int) -> str:
        return "(" + ",".join("".join(str((x >> (a - 1)) & 1) for a in c) for c in self.cycles) + ")"


def network_from_cycles(cycles: Sequence[Sequence[int]], signs: Sequence[Sequence[bool]]) -> Network:
    """Each automaton XORs its predecessor in every cycle through it.

    Literal order follows cycle order, so a center's first literal comes from
    cycle 1.
    """
    n = len({a for c in cycles for a in c})
    lits: Dict[int, List[Literal]] = {a: [] for a in range(1, n + 1)}
    for cyc, sg in zip(cycles, signs):
        if len(sg) != len(cyc):
            raise FamilyError("one sign per arc required")
        for j, a in enumerate(cyc):
            lits[a].append(Literal(cyc[j - 1], bool(sg[j])))
    if set(lits) != {a for c in cycles for a in c}:
        raise FamilyError("cycle ids must cover 1..n exactly")
    try:
        return Network(tuple(LocalRule(tuple(lits[a])) for a in range(1, n + 1)))
    except StructuralError as e:
        raise FamilyError(f"degenerate cycle structure: {e}") from None


SignsArg = Union[str, Sequence[Union[CycleSpec, Sequence[bool]]]]


def _signs(sizes: Sequence[int], cls: SignsArg, negative_arcs: Sequence[Tuple[int, int]]) -> List[List[bool]]:
    if not isinstance(cls, str):
        signs = [list(s.arc_signs) if isinstance(s, CycleSpec) else list(map(bool, s)) for s in cls]
        if [len(s) for s in signs] != list(sizes):
            raise FamilyError("explicit signs must give one sign per arc of every cycle")
        return signs
    signs = [[False] * n for n in sizes]
    for k, j in negative_arcs:
        signs[k][j] = True
    return signs


def gen_badc(n1: int, n2: int, cls: SignsArg = "positive") -> Tuple[Network, FamilyLabeling]:
    """Double cycle of sizes (n1, n2) sharing the center o = 1.

    ``cls`` is ``positive``, ``negative`` (both center literals negated),
    ``mixed`` (the cycle-1 center literal negated) or explicit per-arc signs.
    """
    if n1 < 1 or n2 < 1 or (n1 == 1 and n2 == 1):
        raise FamilyError(f"degenerate double cycle ({n1},{n2})")
    c1 = tuple(range(1, n1 + 1))
    c2 = (1,) + tuple(range(n1 + 1, n1 + n2))
    negs = {"positive": [], "negative": [(0, 0), (1, 0)], "mixed": [(0, 0)]}
    if isinstance(cls, str) and cls not in negs:
        raise FamilyError(f"unknown double-cycle class {cls!r}")
    signs = _signs((n1, n2), cls, negs.get(cls, []) if isinstance(cls, str) else [])
    return network_from_cycles((c1, c2), signs), FamilyLabeling("badc", (c1, c2))


def _petals(sizes: Sequence[int]) -> List[Tuple[int, ...]]:
    cycles = []
    nxt = 2
    for n_k in sizes:
        cycles.append((1,) + tuple(range(nxt, nxt + n_k - 1)))
        nxt += n_k - 1
    return cycles


def gen_flower(sizes: Sequence[int], cls: SignsArg = "positive") -> Tuple[Network, FamilyLabeling]:
    """``m = len(sizes)`` cycles sharing the center o = 1.

    ``negative`` puts exactly one negated literal (from petal 1) in f_o.
    """
    sizes = list(sizes)
    if len(sizes) < 2:
        raise FamilyError("a flower needs at least two petals")
    if any(s < 1 for s in sizes):
        raise FamilyError("petal sizes must be positive")
    if sizes.count(1) > 1:
        raise FamilyError("at most one petal of size 1 (two self-loops would repeat x_o)")
    negs = {"positive": [], "negative": [(0, 0)]}
    if isinstance(cls, str) and cls not in negs:
        raise FamilyError(f"unknown flower class {cls!r}")
    cycles = _petals(sizes)
    signs = _signs(sizes, cls, negs.get(cls, []) if isinstance(cls, str) else [])
    family = "badc" if len(sizes) == 2 else "flower"
    return network_from_cycles(cycles, signs), FamilyLabeling(family, tuple(cycles))


def chain_cycles(sizes: Sequence[int], offsets: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """Cycle id lists for a chain: o_k = i^k_1 = i^{k+1}_{offsets[k-1]}."""
    m = len(sizes)
    if m < 2:
        raise FamilyError("a chain needs at least two cycles")
    if any(s < 1 for s in sizes):
        raise FamilyError("cycle sizes must be positive")
    if offsets is None:
        offsets = [sizes[k + 1] for k in range(m - 1)]
    offsets = list(offsets)
    if len(offsets) != m - 1:
        raise FamilyError(f"a chain of {m} cycles needs {m - 1} offsets")
    for k, l in enumerate(offsets):
        if not 1 <= l <= sizes[k + 1]:
            raise FamilyError(f"offset {l} outside 1..{sizes[k + 1]} for cycle {k + 2}")
        if k + 2 < m and l == 1:
            raise FamilyError(f"cycle {k + 2} would meet both neighbours at position 1")
    cycles = [tuple(range(1, sizes[0] + 1))]
    nxt = sizes[0] + 1
    for k in range(1, m):
        prev_o = cycles[k - 1][0]
        cyc = []
        for j in range(1, sizes[k] + 1):
            if j == offsets[k - 1]:
                cyc.append(prev_o)
            else:
                cyc.append(nxt)
                nxt += 1
        cycles.append(tuple(cyc))
    return cycles


def gen_chain(
    sizes: Sequence[int], offsets: Optional[Sequence[int]] = None, cls: SignsArg = "positive"
) -> Tuple[Network, FamilyLabeling]:
    """Cycles C_1..C_m where C_k meets C_{k+1} exactly at o_k = i^k_1.

    Default offsets put o_k at the last position of C_{k+1}. ``negative``
    negates the arc that closes cycle 1 into o_1.
    """
    cycles = chain_cycles(sizes, offsets)
    negs = {"positive": [], "negative": [(0, 0)]}
    if isinstance(cls, str) and cls not in negs:
        raise FamilyError(f"unknown chain class {cls!r}")
    signs = _signs(sizes, cls, negs.get(cls, []) if isinstance(cls, str) else [])
    return network_from_cycles(cycles, signs), FamilyLabeling("chain", tuple(cycles))


def gen_random_cactus(
    seed: int, n_max: int, cycle_count: int, *, p_negative: float = 0.3
) -> Tuple[Network, FamilyLabeling]:
    """Random strongly connected cactus: each new cycle is hung on one existing automaton.

    Cycles have length >= 2; the attachment automaton is position 1 of the new
    cycle. Deterministic in ``seed``.
    """
    if n_max < 2 or cycle_count < 1:
        raise FamilyError("need n_max >= 2 and cycle_count >= 1")
    if cycle_count + 1 > n_max:
        raise FamilyError(f"{cycle_count} cycles need at least {cycle_count + 1} automata")
    rng = random.Random(seed)
    remaining = cycle_count - 1
    first = rng.randint(2, n_max - remaining)
    cycles = [tuple(range(1, first + 1))]
    n = first
    for k in range(1, cycle_count):
        remaining = cycle_count - 1 - k
        budget = n_max - n - remaining
        fresh = rng.randint(1, min(budget, max(1, (n_max - 1) // 2)))
        anchor = rng.randint(1, n)
        cycles.append((anchor,) + tuple(range(n + 1, n + fresh + 1)))
        n += fresh
    signs = [[rng.random() < p_negative for _ in c] for c in cycles]
    return network_from_cycles(cycles, signs), FamilyLabeling("cactus", tuple(cycles))


def is_cactus(net: Network, cycle_limit: int = 10_000) -> bool:
    """Strongly connected and any two simple cycles share at most one automaton."""
    if not graphs.is_strongly_connected(net.graph):
        return False
    try:
        cycles = [set(c) for c in graphs.simple_cycles(net.graph, limit=cycle_limit)]
    except ValueError:
        return False
    for a in range(len(cycles)):
        for b in range(a + 1, len(cycles)):
            if len(cycles[a] & cycles[b]) > 1:
                return False
    return True


def check_labeling(net: Network, lab: FamilyLabeling) -> None:
    """Raise FamilyError unless ``net``'s arcs are exactly the labeled cycles' arcs."""
    if lab.n != net.n or {a for c in lab.cycles for a in c} != set(net.automata):
        raise FamilyError("labeling does not cover the network's automata")
    expected: Dict[int, List[int]] = {a: [] for a in net.automata}
    for cyc in lab.cycles:
        for j, a in enumerate(cyc):
            expected[a].append(cyc[j - 1])
    for a in net.automata:
        check_index(net, a)
        if sorted(net.rules[a - 1].sources) != sorted(expected[a]):
            raise FamilyError(f"automaton {a}: rule sources do not match the labeled cycles")


__all__ = [
    "FamilyError",
    "CycleSpec",
    "FamilyLabeling",
    "network_from_cycles",
    "gen_badc",
    "gen_flower",
    "chain_cycles",
    "gen_chain",
    "gen_random_cactus",
    "is_cactus",
    "check_labeling",
]
