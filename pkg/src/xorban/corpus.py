"""Seedable test corpora of XOR networks.

``theorem_corpus`` holds strongly connected nets with an induced double cycle
of size > 3 and n <= 12. ``small_corpus`` adds out-of-scope nets and keeps
n <= 10.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .core import Network, is_strongly_connected
from .families import FamilyError, FamilyLabeling, gen_badc, gen_chain, gen_flower, gen_random_cactus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    family: str
    net: Network
    labeling: Optional[FamilyLabeling]

    @property
    def n(self) -> int:
        return self.net.n


BADC_SIZES = [(1, 4), (4, 1), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (3, 4), (4, 4), (5, 3), (5, 5), (6, 4), (7, 6)]
FLOWER_SIZES = [(3, 3), (3, 2), (3, 3, 3), (4, 3, 2), (3, 3, 2, 2), (4, 4, 3)]
CHAIN_SPECS = [
    ((3, 3), None),
    ((3, 2, 2), None),
    ((3, 3, 3), None),
    ((3, 3, 3), (2, 1)),
    ((2, 3, 2, 2), None),
    ((3, 3, 3, 3), (2, 3, 1)),
    ((2, 2, 3), (2, 2)),
]


def in_theorem_scope(net: Network) -> bool:
    from .planner import find_induced_badc

    return is_strongly_connected(net) and find_induced_badc(net) is not None


def _fixed_entries(n_max: int) -> List[CorpusEntry]:
    out: List[CorpusEntry] = []
    for n1, n2 in BADC_SIZES:
        for cls in ("positive", "negative", "mixed"):
            net, lab = gen_badc(n1, n2, cls)
            out.append(CorpusEntry(f"badc{n1}x{n2}-{cls}", "badc", net, lab))
    for sizes in FLOWER_SIZES:
        for cls in ("positive", "negative"):
            net, lab = gen_flower(sizes, cls)
            out.append(CorpusEntry(f"flower{'x'.join(map(str, sizes))}-{cls}", "flower", net, lab))
    for sizes, offsets in CHAIN_SPECS:
        for cls in ("positive", "negative"):
            net, lab = gen_chain(sizes, offsets, cls)
            tag = "" if offsets is None else "@" + "".join(map(str, offsets))
            out.append(CorpusEntry(f"chain{'x'.join(map(str, sizes))}{tag}-{cls}", "chain", net, lab))
    return [e for e in out if e.n <= n_max]


def random_cacti(seed: int, count: int, n_max: int = 12) -> List[CorpusEntry]:
    """``count`` in-scope random cacti; deterministic in ``seed``."""
    out: List[CorpusEntry] = []
    k = 0
    while len(out) < count:
        s = seed * 100_003 + k
        k += 1
        cycles = 2 + s % 3
        try:
            net, lab = gen_random_cactus(s, n_max, cycles)
        except FamilyError:
            continue
        if in_theorem_scope(net):
            out.append(CorpusEntry(f"cactus-s{seed}-{k - 1}", "cactus", net, lab))
    return out


def theorem_corpus(seed: int = 0, n_max: int = 12, cacti: int = 12) -> List[CorpusEntry]:
    entries = [e for e in _fixed_entries(n_max) if in_theorem_scope(e.net)]
    return entries + random_cacti(seed, cacti, n_max)


def small_corpus(seed: int = 0, n_max: int = 10, cacti: int = 8) -> List[CorpusEntry]:
    """Theorem-scope nets up to ``n_max`` plus a few out-of-scope shapes."""
    extra = [
        CorpusEntry("badc1x2-positive", "badc", *gen_badc(1, 2)),
        CorpusEntry("badc2x2-positive", "badc", *gen_badc(2, 2)),
        CorpusEntry("badc2x2-negative", "badc", *gen_badc(2, 2, "negative")),
        CorpusEntry("flower2x2x2-positive", "flower", *gen_flower((2, 2, 2))),
        CorpusEntry("chain2x2x2x2-positive", "chain", *gen_chain((2, 2, 2, 2))),
        CorpusEntry("chain2x2x2x2-negative", "chain", *gen_chain((2, 2, 2, 2), None, "negative")),
    ]
    return theorem_corpus(seed, n_max, cacti) + extra


__all__ = ["CorpusEntry", "in_theorem_scope", "random_cacti", "theorem_corpus", "small_corpus"]
