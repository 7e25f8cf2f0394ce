"""Behavioural isomorphism of XOR networks.

An isomorphism is an automaton permutation plus a set of automata whose
states are negated. For XOR rules the whole condition reduces to two checks
per rule: the source set maps onto the image rule's source set, and the
output constants agree after accounting for the flips (a GF(2) equation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from . import gf2
from .core import (
    LocalRule,
    Network,
    StructuralError,
    canonical,
    flip,
    flip_matrix,
    mask_of,
    nude_structure,
    parity_vector,
    positive_flip,
    relabel,
    reverse,
)
from .families import FamilyError, FamilyLabeling, check_labeling


class RewriteError(StructuralError):
    pass


class ClassificationError(StructuralError):
    pass


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class IsoWitness:
    """``perm[i-1]`` is the image of automaton i; ``flips`` are negated (ids of the source net)."""

    perm: Tuple[int, ...]
    flips: FrozenSet[int]

    @classmethod
    def identity(cls, n: int, flips: Iterable[int] = ()) -> "IsoWitness":
        return cls(tuple(range(1, n + 1)), frozenset(flips))

    def image(self, i: int) -> int:
        return self.perm[i - 1]

    def inverse(self) -> "IsoWitness":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, start=1):
            inv[j - 1] = i
        return IsoWitness(tuple(inv), frozenset(self.image(i) for i in self.flips))

    def compose(self, other: "IsoWitness") -> "IsoWitness":
        """``self`` first, then ``other``."""
        perm = tuple(other.image(self.image(i)) for i in range(1, len(self.perm) + 1))
        flips = frozenset(
            i for i in range(1, len(self.perm) + 1) if (i in self.flips) != (self.image(i) in other.flips)
        )
        return IsoWitness(perm, flips)

    def config_map(self, x: int) -> int:
        """phi(x): negate ``flips``, then move automaton i's state to perm(i)."""
        x ^= mask_of(self.flips)
        y = 0
        for i, j in enumerate(self.perm, start=1):
            if (x >> (i - 1)) & 1:
                y |= 1 << (j - 1)
        return y

    def to_dict(self) -> Dict[str, object]:
        return {"perm": {str(i): j for i, j in enumerate(self.perm, start=1)}, "flips": sorted(self.flips)}


def check_witness(a: Network, b: Network, w: IsoWitness) -> bool:
    """Rule-by-rule check that ``w`` maps ``a`` onto ``b`` (no enumeration of configurations)."""
    if a.n != b.n or len(w.perm) != a.n or sorted(w.perm) != list(a.automata):
        return False
    if not w.flips <= set(a.automata):
        return False
    image = relabel(flip(a, w.flips), {i: w.image(i) for i in a.automata})
    return image.same_function(b)


def check_conjugacy(a: Network, b: Network, w: IsoWitness, *, limit: int = 12) -> bool:
    """Brute force: x -{i}-> y in a iff phi(x) -{perm(i)}-> phi(y) in b, for all x and i."""
    from .core import step

    if a.n != b.n or a.n > limit:
        raise StructuralError(f"conjugacy check needs equal sizes <= {limit}")
    for x in range(1 << a.n):
        px = w.config_map(x)
        for i in a.automata:
            if w.config_map(step(a, i, x)) != step(b, w.image(i), px):
                return False
    return True


def _mask_graph(net: Network) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(net.automata)
    for i in net.automata:
        m = net.masks[i - 1]
        for k in range(net.n):
            if (m >> k) & 1:
                g.add_edge(k + 1, i)
    return g


def _flips_for(a: Network, b: Network, perm: Sequence[int]) -> Optional[FrozenSet[int]]:
    # need: p_b(perm(i)) = p_a(i) ^ (M_a S)_i
    rhs = 0
    for i in a.automata:
        if b.parities[perm[i - 1] - 1] ^ a.parities[i - 1]:
            rhs |= 1 << (i - 1)
    s = gf2.solve(flip_matrix(a), rhs, a.n)
    if s is None:
        return None
    return frozenset(i for i in a.automata if (s >> (i - 1)) & 1)


def isomorphisms(a: Network, b: Network) -> Iterable[IsoWitness]:
    """All witnesses, one per interaction-graph isomorphism admitting a flip set."""
    if a.n != b.n or sorted(bin(m).count("1") for m in a.masks) != sorted(bin(m).count("1") for m in b.masks):
        return
    ga, gb = _mask_graph(a), _mask_graph(b)
    for mapping in DiGraphMatcher(ga, gb).isomorphisms_iter():
        perm = tuple(mapping[i] for i in a.automata)
        fl = _flips_for(a, b, perm)
        if fl is not None:
            yield IsoWitness(perm, fl)


def find_isomorphism(a: Network, b: Network) -> Optional[IsoWitness]:
    """First witness of a ~ b, or None.

    Candidate permutations are the interaction-graph isomorphisms (VF2,
    degree-pruned); for each one the flip set is a GF(2) linear solve, so
    the search is exact.
    """
    return next(iter(isomorphisms(a, b)), None)


def isomorphism_classes(nets: Sequence[Network]) -> List[List[int]]:
    """Partition indices of ``nets`` by behavioural isomorphism."""
    classes: List[List[int]] = []
    for k, net in enumerate(nets):
        for cls in classes:
            if find_isomorphism(nets[cls[0]], net) is not None:
                cls.append(k)
                break
        else:
            classes.append([k])
    return classes


# ---------------------------------------------------------------------------
# rewriting

RULES = ("flip_pair", "sign_swap", "region_flip", "vertex_flip")


@dataclass(frozen=True)
class RewriteStep:
    """``site`` by rule:

    * flip_pair: ``(i, (s1, s2))`` two negated literals of rule i
    * sign_swap: ``(i, (neg, pos))`` one negated, one positive literal of rule i
    * region_flip: ``(cycle_a, cycle_b)`` two cycles meeting at one automaton
    * vertex_flip: a set of automata
    """

    rule: str
    site: Tuple


@dataclass(frozen=True)
class Rewritten:
    net: Network
    witness: IsoWitness
    step: RewriteStep


def _literal_index(rule: LocalRule, source: int, i: int) -> int:
    for k, l in enumerate(rule.literals):
        if l.source == source:
            return k
    raise RewriteError(f"rule {i} has no literal over x{source}")


def _replace(net: Network, i: int, rule: LocalRule) -> Network:
    rules = list(net.rules)
    rules[i - 1] = rule
    return Network(tuple(rules), net.multi)


def region_of(net: Network, cycle_a: Sequence[int], cycle_b: Sequence[int]) -> FrozenSet[int]:
    """cycle_a, plus the arc of cycle_b from their meeting point up to the next intersection.

    This is the negated region of equivalence (3): C1, the upper half-cycle
    of C2 and o1.
    """
    shared = set(cycle_a) & set(cycle_b)
    if len(shared) != 1:
        raise RewriteError("region_flip needs two cycles meeting at exactly one automaton")
    (o,) = shared
    for cyc in (cycle_a, cycle_b):
        for k, v in enumerate(cyc):
            if cyc[k - 1] not in net.preds[v]:
                raise RewriteError(f"{tuple(cyc)} is not a cycle of the interaction graph")
    k = list(cycle_b).index(o)
    region = set(cycle_a)
    for step_ in range(1, len(cycle_b)):
        v = cycle_b[(k + step_) % len(cycle_b)]
        if len(net.preds[v]) > 1:
            break
        region.add(v)
    return frozenset(region)


def rewrite(net: Network, step: RewriteStep) -> Rewritten:
    n = net.n
    if step.rule == "flip_pair":
        i, (s1, s2) = step.site
        rule = net.rule(i)
        k1, k2 = _literal_index(rule, s1, i), _literal_index(rule, s2, i)
        if k1 == k2 or not (rule.literals[k1].negated and rule.literals[k2].negated):
            raise RewriteError("flip_pair needs two distinct negated literals")
        lits = list(rule.literals)
        lits[k1], lits[k2] = lits[k1].flipped(), lits[k2].flipped()
        return Rewritten(_replace(net, i, LocalRule(tuple(lits))), IsoWitness.identity(n), step)
    if step.rule == "sign_swap":
        i, (neg, pos) = step.site
        rule = net.rule(i)
        kn, kp = _literal_index(rule, neg, i), _literal_index(rule, pos, i)
        if not rule.literals[kn].negated or rule.literals[kp].negated:
            raise RewriteError("sign_swap needs one negated and one positive literal")
        lits = list(rule.literals)
        lits[kn], lits[kp] = lits[kn].flipped(), lits[kp].flipped()
        return Rewritten(_replace(net, i, LocalRule(tuple(lits))), IsoWitness.identity(n), step)
    if step.rule == "region_flip":
        cycle_a, cycle_b = step.site
        region = region_of(net, cycle_a, cycle_b)
        return Rewritten(flip(net, region), IsoWitness.identity(n, region), step)
    if step.rule == "vertex_flip":
        S = frozenset(step.site)
        if not S <= set(net.automata):
            raise RewriteError(f"vertex_flip set {sorted(S)} outside 1..{n}")
        return Rewritten(flip(net, S), IsoWitness.identity(n, S), step)
    raise RewriteError(f"unknown rewrite rule {step.rule!r}")


def _tidy_literals(net: Network) -> Tuple[Network, List[RewriteStep]]:
    """Leave at most one negated literal per rule, on its first literal."""
    steps = []
    for i in net.automata:
        while True:
            rule = net.rules[i - 1]
            neg = [l.source for l in rule.literals if l.negated]
            if len(neg) >= 2:
                st = RewriteStep("flip_pair", (i, (neg[0], neg[1])))
            elif len(neg) == 1 and neg[0] != rule.literals[0].source:
                st = RewriteStep("sign_swap", (i, (neg[0], rule.literals[0].source)))
            else:
                break
            net = rewrite(net, st).net
            steps.append(st)
    return net, steps


def normalize_signs(net: Network) -> Tuple[Network, List[RewriteStep]]:
    """Canonical member of ``net``'s vertex-flip orbit.

    The orbit of the output-constant vector p is p + span of the columns of
    the flip matrix; the representative takes the smallest vector (as an
    integer with bit i-1 for automaton i), then puts each rule's single
    remaining negation on its first literal.
    """
    cols = gf2.transpose(flip_matrix(net), net.n)
    basis = gf2.echelon(cols)
    p = parity_vector(net)
    target = gf2.coset_min(p, basis)
    s = gf2.solve(flip_matrix(net), p ^ target, net.n)
    steps: List[RewriteStep] = []
    out = net
    S = frozenset(i for i in net.automata if (s >> (i - 1)) & 1)
    if S:
        st = RewriteStep("vertex_flip", tuple(sorted(S)))
        out = rewrite(out, st).net
        steps.append(st)
    out, more = _tidy_literals(out)
    return out, steps + more


def is_positive_class(net: Network) -> bool:
    """Some vertex flip removes every negation."""
    return positive_flip(net) is not None


# ---------------------------------------------------------------------------
# fixed points


def fixed_points_symbolic(net: Network) -> List[int]:
    """Fixed points by enumerating head states and propagating along nude paths.

    At a fixed point every automaton equals its nude-path head xor the path
    sign, so 2^k assignments (k heads) cover every candidate.
    """
    ns = nude_structure(net)
    out = []
    for bits in range(1 << len(ns.heads)):
        hv = {h: (bits >> k) & 1 for k, h in enumerate(ns.heads)}
        x = 0
        for i in net.automata:
            if hv[ns.head_of[i]] ^ ns.sign_of[i]:
                x |= 1 << (i - 1)
        if all(((x & net.masks[h - 1]).bit_count() & 1) ^ net.parities[h - 1] == hv[h] for h in ns.heads):
            out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# family classifiers


@dataclass(frozen=True)
class Classification:
    family: str
    cls: str
    fixed_points: Tuple[int, ...]
    unreachables: Tuple[int, ...]
    reverse_cls: str

    def to_dict(self, n: int) -> Dict[str, object]:
        from .core import config_to_str

        return {
            "family": self.family,
            "class": self.cls,
            "reverse_class": self.reverse_cls,
            "fixed_points": [config_to_str(x, n) for x in self.fixed_points],
            "unreachables": [config_to_str(x, n) for x in self.unreachables],
        }


def _check_family(net: Network, lab: FamilyLabeling, kind: str) -> None:
    try:
        check_labeling(net, lab)
    except FamilyError as e:
        raise ClassificationError(str(e)) from None
    if lab.m < 2:
        raise ClassificationError(f"a {kind} needs at least two cycles")
    if kind == "flower":
        o = lab.cycles[0][0]
        if any(c[0] != o for c in lab.cycles):
            raise ClassificationError("flower cycles must all start at the center")
        rest = [set(c[1:]) for c in lab.cycles]
        if any(rest[a] & rest[b] for a in range(len(rest)) for b in range(a + 1, len(rest))):
            raise ClassificationError("flower petals may only share the center")
    else:
        cyc = [set(c) for c in lab.cycles]
        for a in range(lab.m):
            for b in range(a + 1, lab.m):
                common = cyc[a] & cyc[b]
                if b == a + 1:
                    if common != {lab.cycles[a][0]}:
                        raise ClassificationError(f"chain cycles {a + 1} and {b + 1} must meet at o_{a + 1}")
                elif common:
                    raise ClassificationError(f"chain cycles {a + 1} and {b + 1} must be disjoint")


def _positive_fps(kind: str, net: Network, lab: FamilyLabeling) -> List[int]:
    n = net.n
    zero, ones = 0, (1 << n) - 1
    if kind == "flower":
        return [zero] if lab.m % 2 == 0 else [zero, ones]
    if (lab.m - 1) % 3:
        return [zero]
    return [zero, expand_chain_pattern(net, lab)]


def expand_chain_pattern(net: Network, lab: FamilyLabeling, pattern: str = "101") -> int:
    """Intersections o_1..o_{m-1} take ``pattern`` repeated; others copy their head (sign-adjusted)."""
    inter = lab.chain_intersections
    ns = nude_structure(net)
    val = {o: int(pattern[k % len(pattern)]) for k, o in enumerate(inter)}
    x = 0
    for i in net.automata:
        h = ns.head_of[i]
        if h not in val:
            raise ClassificationError(f"automaton {i} hangs off {h}, which is not a chain intersection")
        if val[h] ^ ns.sign_of[i]:
            x |= 1 << (i - 1)
    return x


def _predict(kind: str, net: Network, lab: FamilyLabeling) -> Tuple[str, List[int]]:
    s = positive_flip(net)
    if s is None:
        return "negative", []
    pos = flip(net, [i for i in net.automata if (s >> (i - 1)) & 1])
    return "positive", sorted(x ^ s for x in _positive_fps(kind, pos, lab))


def _classify(kind: str, net: Network, lab: FamilyLabeling) -> Classification:
    _check_family(net, lab, kind)
    cls, fps = _predict(kind, net, lab)
    rcls, unr = _predict(kind, reverse(net), lab)
    return Classification(kind, cls, tuple(fps), tuple(unr), rcls)


def classify_flower(net: Network, labeling: FamilyLabeling) -> Classification:
    """Positive/negative class plus predicted fixed points and unreachables.

    Positive class: 0^n (m even) or {0^n, 1^n} (m odd), carried through the
    flip that makes the net positive. Negative class: none. Unreachables are
    the fixed points of the reverse network, predicted the same way.
    """
    return _classify("flower", net, labeling)


def classify_chain(net: Network, labeling: FamilyLabeling) -> Classification:
    """As :func:`classify_flower`; positive chains with 3 | (m-1) add expand(101)."""
    return _classify("chain", net, labeling)


def center_parity(net: Network, labeling: FamilyLabeling) -> int:
    """Negation parity left on the center rule after canonicalisation."""
    can = canonical(net)
    return can.parities[labeling.cycles[0][0] - 1]


__all__ = [
    "RewriteError",
    "ClassificationError",
    "IsoWitness",
    "RewriteStep",
    "Rewritten",
    "Classification",
    "RULES",
    "check_witness",
    "check_conjugacy",
    "isomorphisms",
    "find_isomorphism",
    "isomorphism_classes",
    "region_of",
    "rewrite",
    "normalize_signs",
    "is_positive_class",
    "fixed_points_symbolic",
    "expand_chain_pattern",
    "classify_flower",
    "classify_chain",
    "center_parity",
]
