"""Alignment and sense-inventory evaluation.

Alignment scores use the sure/possible convention:

    precision = |A & P| / |A|
    recall    = |A & S| / |S|
    AER       = 1 - (|A & S| + |A & P|) / (|A| + |S|)

An empty denominator counts as a perfect score (precision and recall 1,
AER 0).  Corpus-level scores are micro-averaged: counts are summed over
sentence pairs before any ratio is taken.  All values are exact
``Fraction`` instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Optional

from .corpusio import FormatError, _lines
from .lexcore import AlignmentLink, SenseInventory, normalize_entry


@dataclass(frozen=True)
class AlignmentGold:
    sure: frozenset[AlignmentLink] = frozenset()
    possible: frozenset[AlignmentLink] = frozenset()

    def __post_init__(self):
        sure = frozenset(AlignmentLink(*l) for l in self.sure)
        possible = frozenset(AlignmentLink(*l) for l in self.possible)
        if not sure <= possible:
            raise ValueError("sure links must be a subset of possible links")
        object.__setattr__(self, "sure", sure)
        object.__setattr__(self, "possible", possible)

    @classmethod
    def from_sure(cls, links: Iterable[tuple[int, int]]) -> "AlignmentGold":
        links = frozenset(links)
        return cls(links, links)


@dataclass(frozen=True)
class EvalReport:
    precision: Fraction
    recall: Fraction
    f1: Fraction
    aer: Optional[Fraction] = None
    counts: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"precision": float(self.precision), "recall": float(self.recall), "f1": float(self.f1)}
        if self.aer is not None:
            out["aer"] = float(self.aer)
        out["counts"] = dict(self.counts)
        return out

    def format(self) -> str:
        rows = [f"precision\t{float(self.precision):.4f}", f"recall\t{float(self.recall):.4f}",
                f"f1\t{float(self.f1):.4f}"]
        if self.aer is not None:
            rows.append(f"aer\t{float(self.aer):.4f}")
        rows += [f"{k}\t{v}" for k, v in self.counts.items()]
        return "\n".join(rows)


def _ratio(num: int, den: int) -> Fraction:
    return Fraction(1) if den == 0 else Fraction(num, den)


def _f1(p: Fraction, r: Fraction) -> Fraction:
    return Fraction(0) if p + r == 0 else 2 * p * r / (p + r)


def _alignment_report(n_pred: int, n_sure: int, n_pred_sure: int, n_pred_possible: int) -> EvalReport:
    p = _ratio(n_pred_possible, n_pred)
    r = _ratio(n_pred_sure, n_sure)
    denom = n_pred + n_sure
    aer = Fraction(0) if denom == 0 else 1 - Fraction(n_pred_sure + n_pred_possible, denom)
    counts = {"predicted": n_pred, "sure": n_sure, "pred_and_sure": n_pred_sure,
              "pred_and_possible": n_pred_possible}
    return EvalReport(p, r, _f1(p, r), aer, counts)


def _alignment_counts(pred, gold: AlignmentGold) -> tuple[int, int, int, int]:
    pred = frozenset(AlignmentLink(*l) for l in pred)
    return len(pred), len(gold.sure), len(pred & gold.sure), len(pred & gold.possible)


def eval_alignment(pred: Iterable[tuple[int, int]], gold: AlignmentGold) -> EvalReport:
    return _alignment_report(*_alignment_counts(pred, gold))


def eval_alignments(pairs: Iterable[tuple[Iterable, AlignmentGold]]) -> EvalReport:
    """Micro-averaged scores over (prediction, gold) sentence pairs."""
    totals = [0, 0, 0, 0]
    n = 0
    for pred, gold in pairs:
        for k, c in enumerate(_alignment_counts(pred, gold)):
            totals[k] += c
        n += 1
    report = _alignment_report(*totals)
    report.counts["pairs"] = n
    return report


def _sense_keys(senses) -> set[tuple[str, str]]:
    keys = senses.keys() if isinstance(senses, SenseInventory) else senses
    return {(normalize_entry(lemma), synset) for lemma, synset in keys}


def eval_inventory(generated, gold: Iterable[tuple[str, str]]) -> EvalReport:
    """Score generated (lemma, synset) keys against a gold sense set.

    Lemmas on both sides are compared in normalized form.
    """
    gen, ref = _sense_keys(generated), _sense_keys(gold)
    hit = len(gen & ref)
    p = _ratio(hit, len(gen))
    r = _ratio(hit, len(ref))
    counts = {"generated": len(gen), "gold": len(ref), "correct": hit}
    return EvalReport(p, r, _f1(p, r), None, counts)


def parse_gold_pharaoh(line: str) -> AlignmentGold:
    """Gold links: ``i-j`` is sure, ``i?j`` is possible only."""
    sure, possible = set(), set()
    for item in line.split():
        sep = "-" if "-" in item else "?"
        i, found, j = item.partition(sep)
        if not found or not (i.isdigit() and j.isdigit()):
            raise FormatError(f"malformed gold alignment item {item!r}")
        link = AlignmentLink(int(i), int(j))
        possible.add(link)
        if sep == "-":
            sure.add(link)
    return AlignmentGold(frozenset(sure), frozenset(possible))


def format_gold_pharaoh(gold: AlignmentGold) -> str:
    return " ".join(f"{i}{'-' if (i, j) in gold.sure else '?'}{j}" for i, j in sorted(gold.possible))


def load_gold_senses(stream: IO[str]) -> set[tuple[str, str]]:
    """Gold senses, one ``lemma<TAB>synset`` per line."""
    out = set()
    for lineno, line in _lines(stream):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0].strip() or not cols[1].strip():
            raise FormatError("expected lemma<TAB>synset", lineno)
        out.add((cols[0], cols[1].strip()))
    return out
