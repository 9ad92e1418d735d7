"""Readers and writers for dictionaries, corpora, alignments and inventories,
plus MWE merging.

All formats are UTF-8 text with LF line endings:

* dictionary TSV: ``source entry<TAB>target entry``; ``#`` starts a comment
* corpus JSONL: one object per line with ``id``, ``source``, ``target`` and
  an optional Pharaoh ``alignment`` string; a token is either a bare
  surface string or an object with ``surface`` and optional ``lemma``,
  ``pos`` and ``synset``
* Pharaoh: space separated ``i-j`` items, 0-based
* existing wordnet TSV: ``synset<TAB>lemma``
* inventory TSV (``lemma synset count rules``) or JSONL (with provenance)
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

from .lexcore import (
    MWE_SEP,
    AlignmentLink,
    BitextPair,
    Dictionary,
    POS,
    Provenance,
    Rule,
    SenseInventory,
    SenseRecord,
    Sentence,
    Token,
    normalize_entry,
)

log = logging.getLogger(__name__)

__all__ = [
    "FormatError",
    "CorpusDocument",
    "normalize_entry",
    "load_dictionary",
    "parse_pharaoh",
    "format_pharaoh",
    "load_corpus",
    "load_alignments",
    "merge_mwes",
    "merge_mwes_with_map",
    "merge_pair_mwes",
    "write_inventory",
    "read_inventory",
    "read_inventory_keys",
    "load_existing_wordnet",
]

TSV, JSONL = "tsv", "jsonl"
INVENTORY_TSV_HEADER = "lemma\tsynset\tcount\trules"


class FormatError(ValueError):
    """Malformed input, located by line number where one is known."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


@dataclass
class CorpusDocument:
    pairs: list[BitextPair] = field(default_factory=list)
    #: (line number, pair id, reason) for records dropped during loading
    skipped: list[tuple[int, str, str]] = field(default_factory=list)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def _lines(stream: IO[str]):
    for lineno, line in enumerate(stream, 1):
        yield lineno, line.rstrip("\n").rstrip("\r")


# -- dictionary --------------------------------------------------------------

def load_dictionary(stream: IO[str]) -> Dictionary:
    d = Dictionary()
    for lineno, line in _lines(stream):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise FormatError(f"expected exactly one tab, found {len(cols) - 1}", lineno)
        try:
            d.add(*cols)
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    if not len(d):
        log.warning("dictionary is empty")
    else:
        log.info("loaded %d dictionary pairs", len(d))
    return d


# -- Pharaoh -----------------------------------------------------------------

def parse_pharaoh(line: str) -> frozenset[AlignmentLink]:
    links = set()
    for item in line.split():
        i, sep, j = item.partition("-")
        if not sep:
            raise FormatError(f"malformed alignment item {item!r}")
        try:
            link = AlignmentLink(int(i), int(j))
        except ValueError:
            raise FormatError(f"malformed alignment item {item!r}") from None
        if link.i < 0 or link.j < 0 or not (i.isdigit() and j.isdigit()):
            raise FormatError(f"malformed alignment item {item!r}")
        links.add(link)
    return frozenset(links)


def format_pharaoh(links: Iterable[tuple[int, int]]) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(set(links)))


def load_alignments(stream: IO[str]) -> list[frozenset[AlignmentLink]]:
    out = []
    for lineno, line in _lines(stream):
        try:
            out.append(parse_pharaoh(line))
        except FormatError as exc:
            raise FormatError(str(exc), lineno) from None
    return out


# -- corpus ------------------------------------------------------------------

def _token(obj, lineno: int) -> Token:
    if isinstance(obj, str):
        obj = {"surface": obj}
    if not isinstance(obj, dict):
        raise FormatError(f"token must be a string or an object, got {obj!r}", lineno)
    surface = obj.get("surface")
    if not isinstance(surface, str) or not surface:
        raise FormatError(f"token without a surface: {obj!r}", lineno)
    return Token(
        surface,
        lemma=obj.get("lemma") or None,
        pos=POS.coarsen(obj.get("pos")),
        synset=obj.get("synset") or None,
    )


def _sentence(rec: dict, side: str, lineno: int) -> Sentence:
    if side not in rec:
        raise FormatError(f"record has no {side!r} field", lineno)
    toks = rec[side]
    if not isinstance(toks, list):
        raise FormatError(f"{side!r} must be a list of tokens", lineno)
    return Sentence(tuple(_token(t, lineno) for t in toks))


def load_corpus(stream: IO[str], alignments: Optional[list[frozenset]] = None) -> CorpusDocument:
    """Read a JSONL corpus.

    Unparseable lines, missing ids and duplicate ids raise ``FormatError``.
    A record whose alignment points outside its sentences is skipped and
    listed in ``CorpusDocument.skipped``.  ``alignments``, when given,
    overrides the in-record links: entry k belongs to the k-th record.
    """
    doc = CorpusDocument()
    seen = set()
    k = -1
    for lineno, line in _lines(stream):
        if not line.strip():
            continue
        k += 1
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON ({exc.msg})", lineno) from None
        if not isinstance(rec, dict):
            raise FormatError("record must be a JSON object", lineno)
        if rec.get("id") in (None, ""):
            raise FormatError("record has no id", lineno)
        pid = str(rec["id"])
        if pid in seen:
            raise FormatError(f"duplicate pair id {pid!r}", lineno)
        seen.add(pid)
        source = _sentence(rec, "source", lineno)
        target = _sentence(rec, "target", lineno)
        if alignments is not None:
            if k >= len(alignments):
                raise FormatError(f"no sidecar alignment for record {k + 1}", lineno)
            links = alignments[k]
        else:
            try:
                links = parse_pharaoh(rec.get("alignment") or "")
            except FormatError as exc:
                raise FormatError(f"pair {pid}: {exc}", lineno) from None
        try:
            pair = BitextPair(pid, source, target, links)
        except ValueError as exc:
            log.warning("line %d: skipping %s", lineno, exc)
            doc.skipped.append((lineno, pid, str(exc)))
            continue
        doc.pairs.append(pair)
    if alignments is not None and len(alignments) != k + 1:
        raise FormatError(f"sidecar has {len(alignments)} alignments for {k + 1} records")
    return doc


# -- MWE merging -------------------------------------------------------------

def _agreed(values):
    present = {v for v in values if v is not None}
    return present.pop() if len(present) == 1 else None


def merge_mwes_with_map(sent: Sentence, dictionary: Dictionary, side: str = "source"):
    """Greedy leftmost-longest MWE merge.

    Returns the merged sentence and, for every original token index, the
    index of the merged token that now covers it.  A merged token's lemma
    is the matched entry; its POS and synset are kept when all components
    that carry one agree, otherwise dropped.
    """
    mwes = dictionary.mwe_entries(side)
    if not mwes or len(sent) < 2:
        return sent, list(range(len(sent)))
    longest = max(e.count(MWE_SEP) + 1 for e in mwes)
    toks = sent.tokens
    out, index_map = [], []
    k = 0
    while k < len(toks):
        width = 1
        for n in range(min(longest, len(toks) - k), 1, -1):
            if normalize_entry(MWE_SEP.join(t.surface for t in toks[k:k + n])) in mwes:
                width = n
                break
        if width == 1:
            out.append(toks[k])
        else:
            run = toks[k:k + width]
            joined = MWE_SEP.join(t.surface for t in run)
            out.append(Token(
                joined,
                lemma=normalize_entry(joined),
                pos=_agreed(t.pos for t in run),
                synset=_agreed(t.synset for t in run),
            ))
        index_map.extend([len(out) - 1] * width)
        k += width
    return Sentence(tuple(out)), index_map


def merge_mwes(sent: Sentence, dictionary: Dictionary, side: str = "source") -> Sentence:
    return merge_mwes_with_map(sent, dictionary, side)[0]


def merge_pair_mwes(pair: BitextPair, dictionary: Dictionary, with_maps: bool = False):
    """Merge MWEs on both sides and remap base links onto the merged tokens.

    With ``with_maps`` also return the source and target index maps.
    """
    src, smap = merge_mwes_with_map(pair.source, dictionary, "source")
    tgt, tmap = merge_mwes_with_map(pair.target, dictionary, "target")
    links = frozenset(AlignmentLink(smap[i], tmap[j]) for i, j in pair.base_links)
    merged = BitextPair(pair.id, src, tgt, links)
    return (merged, smap, tmap) if with_maps else merged


# -- inventories -------------------------------------------------------------

def _sorted_keys(inv: SenseInventory):
    return sorted(inv.keys(), key=lambda k: (k[1], k[0]))


def _rule_breakdown(inv: SenseInventory, key) -> str:
    counts = inv.rule_counts(key)
    return ",".join(f"{r.value}:{counts[r]}" for r in Rule if r in counts)


def write_inventory(inv: SenseInventory, stream: IO[str], format: str = TSV) -> None:
    """Write entries sorted by synset, then lemma."""
    format = format.lower()
    if format == TSV:
        stream.write(INVENTORY_TSV_HEADER + "\n")
        for key in _sorted_keys(inv):
            lemma, synset = key
            stream.write(f"{lemma}\t{synset}\t{inv.count(*key)}\t{_rule_breakdown(inv, key)}\n")
    elif format == JSONL:
        for key in _sorted_keys(inv):
            lemma, synset = key
            recs = sorted(inv.entries[key], key=lambda r: (r.provenance, r.rule.value))
            obj = {
                "lemma": lemma,
                "synset": synset,
                "count": len(recs),
                "rules": {r.value: n for r, n in sorted(inv.rule_counts(key).items())},
                "provenance": [
                    {
                        "pair_id": r.provenance.pair_id,
                        "source_index": r.provenance.source_index,
                        "target_index": r.provenance.target_index,
                        "rule": r.rule.value,
                    }
                    for r in recs
                ],
            }
            stream.write(json.dumps(obj, ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown inventory format {format!r}")


def read_inventory(stream: IO[str]) -> SenseInventory:
    """Read a JSONL inventory written by ``write_inventory``."""
    inv = SenseInventory()
    for lineno, line in _lines(stream):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            lemma, synset = obj["lemma"], obj["synset"]
            for p in obj["provenance"]:
                prov = Provenance(str(p["pair_id"]), int(p["source_index"]), int(p["target_index"]))
                inv.add(SenseRecord(lemma, synset, Rule(p["rule"]), prov))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad inventory record ({exc})", lineno) from None
        if inv.count(lemma, synset) != obj.get("count", inv.count(lemma, synset)):
            raise FormatError("count does not match provenance length", lineno)
    return inv


def read_inventory_keys(stream: IO[str]) -> set[tuple[str, str]]:
    """(lemma, synset) keys from either inventory format."""
    keys = set()
    for lineno, line in _lines(stream):
        if not line.strip() or line == INVENTORY_TSV_HEADER:
            continue
        if line.lstrip().startswith("{"):
            try:
                obj = json.loads(line)
                keys.add((obj["lemma"], obj["synset"]))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise FormatError(f"bad inventory record ({exc})", lineno) from None
        else:
            cols = line.split("\t")
            if len(cols) < 2:
                raise FormatError("expected lemma<TAB>synset", lineno)
            keys.add((cols[0], cols[1]))
    return keys


def load_existing_wordnet(stream: IO[str]) -> dict[str, frozenset[str]]:
    members: dict[str, set[str]] = {}
    for lineno, line in _lines(stream):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0].strip() or not normalize_entry(cols[1]):
            raise FormatError("expected synset<TAB>lemma", lineno)
        members.setdefault(cols[0].strip(), set()).add(normalize_entry(cols[1]))
    return {k: frozenset(v) for k, v in members.items()}
