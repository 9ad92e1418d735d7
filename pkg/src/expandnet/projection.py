"""Project-and-filter sense projection over an aligned bitext."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .dbalign import dbalign
from .lexcore import (
    CONTENT_POS,
    AlignmentSet,
    BitextPair,
    Dictionary,
    Provenance,
    Rule,
    SenseInventory,
    SenseRecord,
    Token,
    display_lemma,
    is_content_word,
    normalize_entry,
    normalize_wordnet,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectionConfig:
    """Filter switches for projection.

    ``existing_wordnet`` maps a synset ID to the target lemmas it already
    holds; projections of those lemmas are suppressed.  Lemmas are
    normalized on construction.
    """

    pos_filter_enabled: bool = False
    orthographic_exception_enabled: bool = True
    existing_wordnet: Optional[Mapping[str, frozenset]] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "existing_wordnet", normalize_wordnet(self.existing_wordnet))

    def known(self, lemma: str, synset: str) -> bool:
        return normalize_entry(lemma) in self.existing_wordnet.get(synset, ())


def orthographic_match(x: Token, y: Token) -> bool:
    return x.key == y.key


def pos_compatible(x: Token, y: Token) -> bool:
    if x.pos is None or y.pos is None:
        return True
    return x.pos in CONTENT_POS and x.pos == y.pos


def in_dictionary(x: Token, y: Token, dictionary: Dictionary) -> bool:
    """Dictionary test on surfaces, falling back to lemmas when both exist.

    Uses the same keys as ``dbalign.dictionary_links``.
    """
    if (x.key, y.key) in dictionary:
        return True
    return x.lemma_key is not None and y.lemma_key is not None and (x.lemma_key, y.lemma_key) in dictionary


def target_lemma(y: Token) -> str:
    return display_lemma(y.lemma_or_surface)


def project_sentence(
    pair: BitextPair,
    A: AlignmentSet,
    dictionary: Dictionary,
    cfg: ProjectionConfig = ProjectionConfig(),
) -> list[SenseRecord]:
    records = []
    for i, w in enumerate(pair.source):
        if not is_content_word(w):
            continue
        j = A.target_of(i)
        if j is None:
            continue
        w_y = pair.target[j]
        if in_dictionary(w, w_y, dictionary):
            rule = Rule.DICTIONARY
        elif cfg.orthographic_exception_enabled and orthographic_match(w, w_y):
            rule = Rule.ORTHOGRAPHIC
        else:
            continue
        if cfg.pos_filter_enabled and not pos_compatible(w, w_y):
            continue
        lemma = target_lemma(w_y)
        if cfg.known(lemma, w.synset):
            continue
        records.append(SenseRecord(lemma, w.synset, rule, Provenance(pair.id, i, j)))
    return records


def expandnet(
    bitext: Iterable[BitextPair],
    dictionary: Dictionary,
    cfg: ProjectionConfig = ProjectionConfig(),
    skipped: Optional[list] = None,
) -> SenseInventory:
    """Align every pair, project its tagged content words, and collect senses.

    A pair that fails is logged and appended to ``skipped`` as
    ``(pair id, reason)``; the run continues.  Errors raised while reading
    ``bitext`` itself propagate.
    """
    inv = SenseInventory()
    for pair in bitext:
        try:
            A = dbalign(pair, dictionary)
            recs = project_sentence(pair, A, dictionary, cfg)
        except (ValueError, TypeError, AttributeError, IndexError) as exc:
            pid = getattr(pair, "id", None)
            log.warning("skipping pair %s: %s", pid, exc)
            if skipped is not None:
                skipped.append((pid, str(exc)))
            continue
        for rec in recs:
            inv.add(rec)
    return inv
