"""Static model of XOR Boolean automata networks.

A network of size ``n`` has automata ``1..n``. Automaton ``i`` carries a local
rule that is the XOR of signed literals over distinct sources. Configurations
are ints: bit ``k-1`` holds the state of automaton ``k``. The text encoding of
a configuration is a '0'/'1' string whose character ``k`` (1-based) is
automaton ``k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import graphs

Config = int
ConfigLike = Union[int, str]


class StructuralError(ValueError):
    """Invalid network, automaton index or configuration."""


class ParseError(StructuralError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------------------
# configurations


def config_from_str(s: str, n: Optional[int] = None) -> Config:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise StructuralError(f"bad configuration string {s!r}")
    if n is not None and len(s) != n:
        raise StructuralError(f"configuration {s!r} has length {len(s)}, expected {n}")
    x = 0
    for k, ch in enumerate(s):
        if ch == "1":
            x |= 1 << k
    return x


def config_to_str(x: Config, n: int) -> str:
    return "".join("1" if (x >> k) & 1 else "0" for k in range(n))


def as_config(x: ConfigLike, n: int) -> Config:
    if isinstance(x, str):
        return config_from_str(x, n)
    x = int(x)
    if x < 0 or x >> n:
        raise StructuralError(f"configuration {x} out of range for n={n}")
    return x


def mask_of(automata: Iterable[int]) -> int:
    m = 0
    for i in automata:
        m |= 1 << (i - 1)
    return m


def negate(x: Config, automata: Iterable[int]) -> Config:
    """``x`` with the states of ``automata`` negated."""
    return x ^ mask_of(automata)


def state(x: Config, i: int) -> int:
    return (x >> (i - 1)) & 1


# ---------------------------------------------------------------------------
# rules and networks


@dataclass(frozen=True)
class Literal:
    source: int
    negated: bool = False

    def __str__(self) -> str:
        return ("!" if self.negated else "") + f"x{self.source}"

    def flipped(self) -> "Literal":
        return Literal(self.source, not self.negated)


@dataclass(frozen=True)
class LocalRule:
    literals: Tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise StructuralError("empty local rule (constant functions are not XOR rules)")

    @property
    def sources(self) -> Tuple[int, ...]:
        return tuple(l.source for l in self.literals)

    @property
    def parity(self) -> int:
        """Number of negated literals mod 2: the rule's output constant."""
        return sum(l.negated for l in self.literals) & 1

    @property
    def xor_mask(self) -> int:
        m = 0
        for l in self.literals:
            m ^= 1 << (l.source - 1)
        return m

    def __str__(self) -> str:
        return " ^ ".join(str(l) for l in self.literals)

    def flip_source(self, source: int) -> "LocalRule":
        """Negate the first literal over ``source``."""
        lits = list(self.literals)
        for k, l in enumerate(lits):
            if l.source == source:
                lits[k] = l.flipped()
                return LocalRule(tuple(lits))
        raise StructuralError(f"rule has no literal over x{source}")

    def negate_output(self) -> "LocalRule":
        # any literal works; smallest source keeps the choice deterministic
        return self.flip_source(min(self.sources))


@dataclass(frozen=True)
class Network:
    """A XOR network; ``rules[i-1]`` is the local rule of automaton ``i``.

    ``multi`` allows repeated sources inside a rule. Only contraction produces
    such networks; parsing and the generators never do.
    """

    rules: Tuple[LocalRule, ...]
    multi: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        n = len(self.rules)
        if n == 0:
            raise StructuralError("network has no automata")
        for i, rule in enumerate(self.rules, start=1):
            srcs = rule.sources
            for s in srcs:
                if not 1 <= s <= n:
                    raise StructuralError(f"rule {i}: source x{s} outside 1..{n}")
            if not self.multi and len(set(srcs)) != len(srcs):
                raise StructuralError(f"rule {i}: duplicate literal source")

    @classmethod
    def from_strings(cls, rules: Sequence[str]) -> "Network":
        """``Network.from_strings(["x2", "x1 ^ !x2"])`` for rules 1, 2, ..."""
        return parse_network("\n".join(f"{i} : {r}" for i, r in enumerate(rules, start=1)))

    @property
    def n(self) -> int:
        return len(self.rules)

    @property
    def automata(self) -> range:
        return range(1, self.n + 1)

    def rule(self, i: int) -> LocalRule:
        check_index(self, i)
        return self.rules[i - 1]

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(r.xor_mask for r in self.rules)

    @cached_property
    def parities(self) -> Tuple[int, ...]:
        return tuple(r.parity for r in self.rules)

    @cached_property
    def graph(self) -> Dict[int, List[int]]:
        """Interaction graph as a successor map (structural arcs, no multiplicity)."""
        succ: Dict[int, List[int]] = {i: [] for i in self.automata}
        for i, rule in enumerate(self.rules, start=1):
            for s in sorted(set(rule.sources)):
                succ[s].append(i)
        return {i: sorted(v) for i, v in succ.items()}

    @cached_property
    def preds(self) -> Dict[int, Tuple[int, ...]]:
        return {i: tuple(sorted(set(r.sources))) for i, r in enumerate(self.rules, start=1)}

    def signature(self) -> Tuple[Tuple[int, int], ...]:
        """Functional identity: two networks agree on every configuration iff equal."""
        return tuple(zip(self.masks, self.parities))

    def same_function(self, other: "Network") -> bool:
        return self.n == other.n and self.signature() == other.signature()

    def __str__(self) -> str:
        return format_network(self)


def check_index(net: Network, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= net.n:
        raise StructuralError(f"automaton index {i!r} outside 1..{net.n}")


# ---------------------------------------------------------------------------
# dynamics


def eval_local(net: Network, i: int, x: ConfigLike) -> int:
    check_index(net, i)
    x = as_config(x, net.n)
    return ((x & net.masks[i - 1]).bit_count() & 1) ^ net.parities[i - 1]


def _f(net: Network, i: int, x: Config) -> int:
    return ((x & net.masks[i - 1]).bit_count() & 1) ^ net.parities[i - 1]


def image(net: Network, x: Config) -> Config:
    """All local functions at once: bit i-1 is f_i(x)."""
    y = 0
    for i in net.automata:
        if _f(net, i, x):
            y |= 1 << (i - 1)
    return y


def unstable_mask(net: Network, x: Config) -> int:
    return image(net, x) ^ x


def apply_update(net: Network, W: Iterable[int], x: ConfigLike) -> Config:
    """Update every automaton of ``W`` simultaneously from the same pre-state."""
    x = as_config(x, net.n)
    y = x
    for i in set(W):
        check_index(net, i)
        if _f(net, i, x) != (x >> (i - 1)) & 1:
            y ^= 1 << (i - 1)
    return y


def step(net: Network, i: int, x: Config) -> Config:
    """Single asynchronous update, no validation (hot path)."""
    if _f(net, i, x) != (x >> (i - 1)) & 1:
        return x ^ (1 << (i - 1))
    return x


def is_stable(net: Network, i: int, x: ConfigLike) -> bool:
    x = as_config(x, net.n)
    return eval_local(net, i, x) == state(x, i)


def is_fixed_point(net: Network, x: ConfigLike) -> bool:
    return unstable_mask(net, as_config(x, net.n)) == 0


def is_unreachable(net: Network, x: ConfigLike) -> bool:
    """No asynchronous in-arc except self-loops: f_i(not-x^i) != x_i for every i."""
    x = as_config(x, net.n)
    return all(_f(net, i, x ^ (1 << (i - 1))) != (x >> (i - 1)) & 1 for i in net.automata)


# ---------------------------------------------------------------------------
# structure


def influencers(net: Network, j: int) -> FrozenSet[int]:
    """Automata whose flip changes f_j; for XOR these are the odd-multiplicity sources."""
    check_index(net, j)
    m = net.masks[j - 1]
    return frozenset(k + 1 for k in range(net.n) if (m >> k) & 1)


@dataclass(frozen=True)
class NudePath:
    automata: Tuple[int, ...]
    sign: bool

    @property
    def length(self) -> int:
        return len(self.automata) - 1

    @property
    def head(self) -> int:
        return self.automata[0]

    def is_nude(self, net: Network) -> bool:
        a = self.automata
        if len(set(a)) != len(a):
            return False
        return all(net.preds[a[k]] == (a[k - 1],) for k in range(1, len(a)))

    def is_maximal(self, net: Network) -> bool:
        """No strict extension (at either end) is a nude path."""
        if not self.is_nude(net):
            return False
        first, last = self.automata[0], self.automata[-1]
        preds = net.preds[first]
        if len(preds) == 1 and preds[0] not in self.automata:
            return False
        for w in net.graph[last]:
            if w not in self.automata and net.preds[w] == (last,):
                return False
        return True


def maximal_nude_path(net: Network, i: int) -> NudePath:
    """Longest backward chain of single-influencer automata ending at ``i``.

    The walk stops before revisiting an automaton, so inside a pure cycle the
    path has length n-1.
    """
    check_index(net, i)
    path = [i]
    seen = {i}
    cur = i
    while True:
        preds = net.preds[cur]
        if len(preds) != 1 or preds[0] in seen:
            break
        cur = preds[0]
        path.append(cur)
        seen.add(cur)
    path.reverse()
    sign = False
    for k in range(1, len(path)):
        sign ^= net.rules[path[k] - 1].literals[0].negated
    return NudePath(tuple(path), sign)


@dataclass(frozen=True)
class NudeStructure:
    """Heads of nude paths and, for every automaton, its head and path sign.

    Heads are the automata whose maximal nude path has length 0. A cycle made
    only of single-influencer automata has no such automaton; its lowest id is
    promoted to head so that every automaton hangs off exactly one head.
    """

    heads: Tuple[int, ...]
    head_of: Mapping[int, int]
    sign_of: Mapping[int, int]


def nude_structure(net: Network) -> NudeStructure:
    heads = {i for i in net.automata if maximal_nude_path(net, i).length == 0}
    for i in net.automata:
        if i in heads:
            continue
        seen: List[int] = []
        cur = i
        while cur not in heads and cur not in seen:
            seen.append(cur)
            cur = net.preds[cur][0]
        if cur not in heads:
            cycle = seen[seen.index(cur):]
            heads.add(min(cycle))
    head_of: Dict[int, int] = {}
    sign_of: Dict[int, int] = {}
    for i in net.automata:
        cur, sign = i, 0
        while cur not in heads:
            sign ^= int(net.rules[cur - 1].literals[0].negated)
            cur = net.preds[cur][0]
        head_of[i] = cur
        sign_of[i] = sign
    return NudeStructure(tuple(sorted(heads)), head_of, sign_of)


def heads(net: Network) -> Tuple[int, ...]:
    return nude_structure(net).heads


def fixed_point_bound(net: Network) -> int:
    """2^k, k the number of nude-path heads."""
    return 1 << len(heads(net))


def is_strongly_connected(net: Network) -> bool:
    return graphs.is_strongly_connected(net.graph)


# ---------------------------------------------------------------------------
# transforms


def flip(net: Network, S: Iterable[int]) -> Network:
    """Conjugate by negating the automata of ``S``.

    Every literal over a source in ``S`` is negated, and rules of automata in
    ``S`` get one extra negation. The result is isomorphic to ``net`` under
    x -> not-x^S with the identity automaton map.
    """
    S = set(S)
    for i in S:
        check_index(net, i)
    rules = []
    for i, rule in enumerate(net.rules, start=1):
        lits = tuple(Literal(l.source, l.negated ^ (l.source in S)) for l in rule.literals)
        r = LocalRule(lits)
        if i in S:
            r = r.negate_output()
        rules.append(r)
    return Network(tuple(rules), net.multi)


def flip_matrix(net: Network) -> List[int]:
    """Rows of the GF(2) map S -> parity change of ``flip(net, S)``.

    Bit ``s-1`` of row ``i-1`` is set iff flipping ``s`` toggles the output
    constant of rule ``i``: ``s`` is an odd-multiplicity source of ``i``,
    xor ``s == i``.
    """
    return [net.masks[i - 1] ^ (1 << (i - 1)) for i in net.automata]


def parity_vector(net: Network) -> int:
    """Bit ``i-1`` is the output constant (negation parity) of rule ``i``."""
    return mask_of(i for i in net.automata if net.parities[i - 1])


def positive_flip(net: Network) -> Optional[int]:
    """Mask of a flip set making every rule's output constant 0, or None."""
    from . import gf2

    return gf2.solve(flip_matrix(net), parity_vector(net), net.n)


def dual(net: Network) -> Network:
    return Network(tuple(r.negate_output() for r in net.rules), net.multi)


def reverse(net: Network) -> Network:
    """f^R_i(x) = not f_i(not-x^i); its fixed points are the unreachable configurations."""
    rules = []
    for i, rule in enumerate(net.rules, start=1):
        r = LocalRule(tuple(Literal(l.source, l.negated ^ (l.source == i)) for l in rule.literals))
        rules.append(r.negate_output())
    return Network(tuple(rules), net.multi)


def canonical(net: Network) -> Network:
    """Isomorphic network whose nude-path arcs are all positive.

    Negations along nude paths are pushed onto the rules of the automata where
    the paths end (intersection automata); a pure cycle keeps its parity on the
    rule of its head.
    """
    ns = nude_structure(net)
    return flip(net, [i for i in net.automata if ns.sign_of[i]])


def contraction(net: Network) -> Network:
    """Drop every automaton off a nude-path head, substituting the head's variable.

    Remaining automata are renumbered 1..k in increasing id order. Substituted
    literals carry the sign of the nude path; repeated sources are kept (the
    result is a ``multi`` network), never cancelled.
    """
    ns = nude_structure(net)
    new_id = {h: k for k, h in enumerate(ns.heads, start=1)}
    rules = []
    for h in ns.heads:
        lits = []
        for l in net.rules[h - 1].literals:
            src = l.source
            lits.append(Literal(new_id[ns.head_of[src]], l.negated ^ bool(ns.sign_of[src])))
        rules.append(LocalRule(tuple(lits)))
    return Network(tuple(rules), multi=True)


def relabel(net: Network, perm: Mapping[int, int]) -> Network:
    """Rename automaton i to perm[i]; literal order is kept."""
    rules: List[Optional[LocalRule]] = [None] * net.n
    for i, rule in enumerate(net.rules, start=1):
        rules[perm[i] - 1] = LocalRule(tuple(Literal(perm[l.source], l.negated) for l in rule.literals))
    return Network(tuple(rules), net.multi)


def restrict(net: Network, automata: Sequence[int], x: Config) -> Tuple[Network, Dict[int, int]]:
    """Subnetwork on ``automata`` with every outside state frozen at its value in ``x``.

    Outside literals fold into the output sign. Returns the subnetwork (ids
    1..len(automata) in the given order) and the map global id -> local id.
    """
    local = {a: k for k, a in enumerate(automata, start=1)}
    rules = []
    for a in automata:
        rule = net.rules[a - 1]
        inside = [l for l in rule.literals if l.source in local]
        if not inside:
            raise StructuralError(f"automaton {a} has no influencer inside the subnetwork")
        const = 0
        for l in rule.literals:
            if l.source not in local:
                const ^= state(x, l.source) ^ int(l.negated)
        r = LocalRule(tuple(Literal(local[l.source], l.negated) for l in inside))
        if const:
            r = r.negate_output()
        rules.append(r)
    return Network(tuple(rules), net.multi), local


# ---------------------------------------------------------------------------
# text format

_LINE = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*$")
_LIT = re.compile(r"^(!?)x(\d+)$")


def parse_network(text: str, *, multi: bool = False) -> Network:
    """Parse ``<id> : <lit> ( ^ <lit> )*`` lines; ``#`` starts a comment."""
    entries: Dict[int, Tuple[LocalRule, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ParseError(f"expected '<id> : <literals>', got {raw.strip()!r}", lineno)
        i = int(m.group(1))
        if i in entries:
            raise ParseError(f"automaton {i} defined twice (first on line {entries[i][1]})", lineno)
        body = m.group(2)
        if not body:
            raise ParseError(f"automaton {i} has an empty rule", lineno)
        lits = []
        for tok in body.split("^"):
            tok = tok.strip().replace(" ", "")
            lm = _LIT.match(tok)
            if not lm:
                raise ParseError(f"bad literal {tok!r} in rule of automaton {i}", lineno)
            lits.append(Literal(int(lm.group(2)), lm.group(1) == "!"))
        srcs = [l.source for l in lits]
        if not multi and len(set(srcs)) != len(srcs):
            dup = next(s for s in srcs if srcs.count(s) > 1)
            raise ParseError(f"duplicate literal source x{dup} in rule of automaton {i}", lineno)
        entries[i] = (LocalRule(tuple(lits)), lineno)
    if not entries:
        raise ParseError("no rules found")
    n = max(entries)
    missing = [i for i in range(1, n + 1) if i not in entries]
    if missing or min(entries) < 1:
        raise ParseError(f"automaton ids must be exactly 1..{n}; missing {missing}")
    for i, (rule, lineno) in entries.items():
        for s in rule.sources:
            if not 1 <= s <= n:
                raise ParseError(f"literal x{s} refers to no automaton (1..{n})", lineno)
    return Network(tuple(entries[i][0] for i in range(1, n + 1)), multi)


def format_network(net: Network) -> str:
    return "".join(f"{i} : {rule}\n" for i, rule in enumerate(net.rules, start=1))


__all__ = [
    "Config",
    "StructuralError",
    "ParseError",
    "Literal",
    "LocalRule",
    "Network",
    "NudePath",
    "NudeStructure",
    "config_from_str",
    "config_to_str",
    "as_config",
    "mask_of",
    "negate",
    "state",
    "eval_local",
    "image",
    "unstable_mask",
    "apply_update",
    "step",
    "is_stable",
    "is_fixed_point",
    "is_unreachable",
    "influencers",
    "maximal_nude_path",
    "nude_structure",
    "heads",
    "fixed_point_bound",
    "is_strongly_connected",
    "flip",
    "flip_matrix",
    "parity_vector",
    "positive_flip",
    "dual",
    "reverse",
    "canonical",
    "contraction",
    "relabel",
    "restrict",
    "parse_network",
    "format_network",
]
