"""Dictionary-augmented word alignment.

Base-aligner links and dictionary-suggested links are combined in three
greedy passes (links proposed by both, then dictionary-only, then
base-only).  A link is only accepted when it shares neither its source nor
its target token with a link accepted earlier; among the links eligible at
any step the one nearest the sentence diagonal wins.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Collection, Iterable

from .lexcore import AlignmentLink, AlignmentSet, BitextPair, Dictionary, Sentence


class PassKind(str, enum.Enum):
    INTERSECTION = "INTERSECTION"
    DICTIONARY = "DICTIONARY"
    BASE = "BASE"


PASS_ORDER = (PassKind.INTERSECTION, PassKind.DICTIONARY, PassKind.BASE)


def dictionary_links(S: Sentence, T: Sentence, dictionary: Dictionary) -> set[AlignmentLink]:
    """All (i, j) where S[i] translates to T[j] according to the dictionary.

    Tokens match on normalized surfaces, or on normalized lemmas when both
    tokens carry one.  Merged MWE tokens take part as single units.
    """
    links = set()
    for i, x in enumerate(S):
        by_surface = dictionary.targets(x.key)
        by_lemma = dictionary.targets(x.lemma_key) if x.lemma_key else frozenset()
        if not by_surface and not by_lemma:
            continue
        for j, y in enumerate(T):
            if y.key in by_surface or (y.lemma_key is not None and y.lemma_key in by_lemma):
                links.add(AlignmentLink(i, j))
    return links


def diagonal_deviation(i: int, j: int, src_len: int, tgt_len: int) -> Fraction:
    """Distance ``|i/src_len - j/tgt_len|`` between relative positions."""
    if src_len <= 0 or tgt_len <= 0:
        raise ValueError(f"sentence lengths must be positive, got {src_len}, {tgt_len}")
    if not (0 <= i < src_len and 0 <= j < tgt_len):
        raise ValueError(f"link {i}-{j} out of range for lengths {src_len}/{tgt_len}")
    return abs(Fraction(i, src_len) - Fraction(j, tgt_len))


def diagonal_heuristic(V: Collection[tuple[int, int]], src_len: int, tgt_len: int) -> AlignmentLink:
    """Pick the link of V closest to the diagonal; ties go to smaller i, then j."""
    if not V:
        raise ValueError("diagonal_heuristic needs at least one candidate link")
    best = min(V, key=lambda l: (diagonal_deviation(l[0], l[1], src_len, tgt_len), l[0], l[1]))
    return AlignmentLink(*best)


def conflicts(link: tuple[int, int], A: AlignmentSet) -> bool:
    return A.conflicts(link)


def candidate_links(kind: PassKind, B: frozenset, D: frozenset) -> frozenset[AlignmentLink]:
    if kind is PassKind.INTERSECTION:
        return B & D
    if kind is PassKind.DICTIONARY:
        return D
    return B


def three_pass_align(
    B: Iterable[tuple[int, int]],
    D: Iterable[tuple[int, int]],
    src_len: int,
    tgt_len: int,
) -> AlignmentSet:
    """Combine base links B and dictionary links D into a conflict-free set.

    Each accepted link is labelled with the ``PassKind`` that produced it.
    """
    B = frozenset(AlignmentLink(*l) for l in B)
    D = frozenset(AlignmentLink(*l) for l in D)
    A = AlignmentSet()
    for kind in PASS_ORDER:
        C = candidate_links(kind, B, D)
        while True:
            V = [l for l in C if not A.conflicts(l)]
            if not V:
                break
            A.add(diagonal_heuristic(V, src_len, tgt_len), label=kind)
    return A


def dbalign(pair: BitextPair, dictionary: Dictionary) -> AlignmentSet:
    D = dictionary_links(pair.source, pair.target, dictionary)
    return three_pass_align(pair.base_links, D, len(pair.source), len(pair.target))
