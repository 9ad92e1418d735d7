"""Core value types: tokens, sentences, alignment links, dictionaries, senses."""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional

#: Joins the component words of a multi-word expression inside one token.
MWE_SEP = "_"

_SEP_RUN = re.compile(r"[\s_]+")


def normalize_entry(s: str) -> str:
    """Canonical lookup key for a dictionary entry or token surface.

    Case-folds, trims, and rewrites every run of whitespace and/or
    underscores as a single ``MWE_SEP``.  Idempotent.

    >>> normalize_entry("  Fritter  Away ")
    'fritter_away'
    """
    return _SEP_RUN.sub(MWE_SEP, s.casefold()).strip(MWE_SEP)


def display_lemma(s: str) -> str:
    """Restore spaces between the components of an MWE lemma."""
    return " ".join(part for part in s.split(MWE_SEP) if part)


class POS(str, enum.Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    OTHER = "OTHER"

    @classmethod
    def coarsen(cls, tag: Optional[str]) -> Optional["POS"]:
        """Map a tag to a coarse category; unknown tags become OTHER."""
        if tag is None:
            return None
        if isinstance(tag, POS):
            return tag
        tag = tag.strip().upper()
        if not tag:
            return None
        try:
            return cls(tag)
        except ValueError:
            return cls.OTHER


CONTENT_POS = frozenset({POS.NOUN, POS.VERB, POS.ADJ, POS.ADV})


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: Optional[str] = None
    pos: Optional[POS] = None
    synset: Optional[str] = None

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if self.pos is not None and not isinstance(self.pos, POS):
            object.__setattr__(self, "pos", POS.coarsen(self.pos))

    @property
    def key(self) -> str:
        return normalize_entry(self.surface)

    @property
    def lemma_key(self) -> Optional[str]:
        return normalize_entry(self.lemma) if self.lemma else None

    @property
    def lemma_or_surface(self) -> str:
        """Lemma if known, else the case-folded surface."""
        return self.lemma if self.lemma else self.surface.casefold()


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...] = ()

    def __post_init__(self):
        if not isinstance(self.tokens, tuple):
            object.__setattr__(self, "tokens", tuple(self.tokens))

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "Sentence":
        if isinstance(words, str):
            words = words.split()
        return cls(tuple(Token(w) for w in words))

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, idx: int) -> Token:
        return self.tokens[idx]

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


class AlignmentLink(NamedTuple):
    i: int
    j: int


class AlignmentConflict(ValueError):
    pass


class AlignmentSet:
    """A partial one-to-one matching between source and target indices.

    ``add`` refuses any link that shares a source or a target index with a
    link already present.  Each link may carry a label recording which
    alignment pass produced it.
    """

    def __init__(self, links: Iterable[tuple[int, int]] = ()):
        self._s2t: dict[int, int] = {}
        self._t2s: dict[int, int] = {}
        self._label: dict[AlignmentLink, object] = {}
        for link in links:
            self.add(link)

    def conflicts(self, link: tuple[int, int]) -> bool:
        i, j = link
        return i in self._s2t or j in self._t2s

    def add(self, link: tuple[int, int], label: object = None) -> AlignmentLink:
        link = AlignmentLink(*link)
        if self.conflicts(link):
            raise AlignmentConflict(f"link {link.i}-{link.j} conflicts with the current set")
        self._s2t[link.i] = link.j
        self._t2s[link.j] = link.i
        self._label[link] = label
        return link

    def target_of(self, i: int) -> Optional[int]:
        return self._s2t.get(i)

    def source_of(self, j: int) -> Optional[int]:
        return self._t2s.get(j)

    def label(self, link: tuple[int, int]):
        return self._label[AlignmentLink(*link)]

    @property
    def links(self) -> frozenset[AlignmentLink]:
        return frozenset(self._label)

    def __iter__(self) -> Iterator[AlignmentLink]:
        return iter(sorted(self._label))

    def __len__(self) -> int:
        return len(self._label)

    def __contains__(self, link) -> bool:
        return AlignmentLink(*link) in self._label

    def __eq__(self, other) -> bool:
        if isinstance(other, AlignmentSet):
            return self.links == other.links
        if isinstance(other, (set, frozenset)):
            return self.links == other
        return NotImplemented

    def __repr__(self) -> str:
        return f"AlignmentSet({sorted(self._label)})"


class Dictionary:
    """Bilingual dictionary of normalized (source entry, target entry) pairs.

    Stored directionally with a forward and a reverse index over the same
    pairs.  Entries containing ``MWE_SEP`` are multi-word expressions.
    """

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        self._fwd: dict[str, set[str]] = defaultdict(set)
        self._rev: dict[str, set[str]] = defaultdict(set)
        self._pairs: set[tuple[str, str]] = set()
        for src, tgt in pairs:
            self.add(src, tgt)

    def add(self, source: str, target: str) -> None:
        src, tgt = normalize_entry(source), normalize_entry(target)
        if not src or not tgt:
            raise ValueError(f"empty dictionary entry: {source!r} -> {target!r}")
        self._pairs.add((src, tgt))
        self._fwd[src].add(tgt)
        self._rev[tgt].add(src)

    def __contains__(self, pair) -> bool:
        src, tgt = pair
        return tgt in self._fwd.get(src, ())

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self):
        return iter(sorted(self._pairs))

    @property
    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(self._pairs)

    def targets(self, source: str) -> frozenset[str]:
        return frozenset(self._fwd.get(source, ()))

    def sources(self, target: str) -> frozenset[str]:
        return frozenset(self._rev.get(target, ()))

    def entries(self, side: str) -> frozenset[str]:
        index = {"source": self._fwd, "target": self._rev}[side]
        return frozenset(index)

    def mwe_entries(self, side: str) -> frozenset[str]:
        return frozenset(e for e in self.entries(side) if MWE_SEP in e)


@dataclass(frozen=True)
class BitextPair:
    id: str
    source: Sentence
    target: Sentence
    base_links: frozenset[AlignmentLink] = frozenset()

    def __post_init__(self):
        links = frozenset(AlignmentLink(*l) for l in self.base_links)
        object.__setattr__(self, "base_links", links)
        n, m = len(self.source), len(self.target)
        for i, j in links:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(
                    f"pair {self.id}: link {i}-{j} out of range for "
                    f"{n} source / {m} target tokens"
                )


class Rule(str, enum.Enum):
    DICTIONARY = "DICTIONARY"
    ORTHOGRAPHIC = "ORTHOGRAPHIC"


class Provenance(NamedTuple):
    pair_id: str
    source_index: int
    target_index: int


@dataclass(frozen=True)
class SenseRecord:
    lemma: str
    synset: str
    rule: Rule
    provenance: Provenance

    @property
    def key(self) -> tuple[str, str]:
        return (self.lemma, self.synset)


@dataclass
class SenseInventory:
    """Accumulated (lemma, synset) senses with the records that produced them."""

    entries: dict[tuple[str, str], list[SenseRecord]] = field(default_factory=dict)

    def add(self, rec: SenseRecord) -> "SenseInventory":
        self.entries.setdefault(rec.key, []).append(rec)
        return self

    def count(self, lemma: str, synset: str) -> int:
        return len(self.entries.get((lemma, synset), ()))

    def counts(self) -> dict[tuple[str, str], int]:
        return {k: len(v) for k, v in self.entries.items()}

    def rule_counts(self, key: tuple[str, str]) -> dict[Rule, int]:
        out: dict[Rule, int] = {}
        for rec in self.entries.get(key, ()):
            out[rec.rule] = out.get(rec.rule, 0) + 1
        return out

    def keys(self):
        return self.entries.keys()

    def records(self) -> Iterator[SenseRecord]:
        for recs in self.entries.values():
            yield from recs

    def merge(self, other: "SenseInventory") -> "SenseInventory":
        """Return a new inventory holding the records of both."""
        out = SenseInventory({k: list(v) for k, v in self.entries.items()})
        for rec in other.records():
            out.add(rec)
        return out

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key) -> bool:
        return tuple(key) in self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SenseInventory):
            return NotImplemented
        if self.entries.keys() != other.entries.keys():
            return False
        return all(
            sorted(v, key=_record_order) == sorted(other.entries[k], key=_record_order)
            for k, v in self.entries.items()
        )


def _record_order(rec: SenseRecord):
    return (rec.provenance, rec.rule.value)


def is_content_word(t: Token) -> bool:
    """True for a sense-tagged token whose POS (if known) is a content category."""
    if t.synset is None:
        return False
    return t.pos is None or t.pos in CONTENT_POS


def add_sense(inv: SenseInventory, rec: SenseRecord) -> SenseInventory:
    return inv.add(rec)


def merge_inventories(invs: Iterable[SenseInventory]) -> SenseInventory:
    out = SenseInventory()
    for inv in invs:
        out = out.merge(inv)
    return out


def normalize_wordnet(existing: Optional[Mapping[str, Iterable[str]]]) -> dict[str, frozenset[str]]:
    if not existing:
        return {}
    return {syn: frozenset(normalize_entry(l) for l in lemmas) for syn, lemmas in existing.items()}
