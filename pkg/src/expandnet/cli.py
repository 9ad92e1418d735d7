"""Command line entry point.

    expandnet align CORPUS DICT            per-pair alignments, "id<TAB>links"
    expandnet project CORPUS DICT          generated sense inventory
    expandnet eval-align PRED GOLD         precision / recall / AER
    expandnet eval-senses INVENTORY GOLD   precision / recall of senses

Exit status: 0 on success, 1 on usage errors, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import corpusio, evalkit
from .dbalign import dbalign
from .lexcore import BitextPair, merge_inventories
from .projection import ProjectionConfig, expandnet

EXIT_USAGE, EXIT_FORMAT = 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _open(path, mode="r"):
    if path in (None, "-"):
        yield sys.stdin if "r" in mode else sys.stdout
        return
    try:
        f = open(path, mode, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot open {path}: {exc.strerror}") from None
    with f:
        yield f


def _load_inputs(args):
    with _open(args.dictionary) as f:
        dictionary = corpusio.load_dictionary(f)
    sidecar = None
    if args.alignments:
        with _open(args.alignments) as f:
            sidecar = corpusio.load_alignments(f)
    with _open(args.corpus) as f:
        doc = corpusio.load_corpus(f, alignments=sidecar)
    return dictionary, doc


def _prepare(pair: BitextPair, dictionary, merge: bool):
    if not merge:
        return pair, list(range(len(pair.source))), list(range(len(pair.target)))
    return corpusio.merge_pair_mwes(pair, dictionary, with_maps=True)


def _expand(links, smap, tmap):
    """Map links between merged tokens back onto every covered word pair."""
    src_words, tgt_words = {}, {}
    for w, k in enumerate(smap):
        src_words.setdefault(k, []).append(w)
    for w, k in enumerate(tmap):
        tgt_words.setdefault(k, []).append(w)
    return {(a, b) for i, j in links for a in src_words[i] for b in tgt_words[j]}


def cmd_align(args) -> int:
    dictionary, doc = _load_inputs(args)
    with _open(args.output, "w") as out:
        for pair in doc:
            merged, smap, tmap = _prepare(pair, dictionary, not args.no_mwe_merge)
            A = dbalign(merged, dictionary)
            links = A.links if args.merged_indices else _expand(A.links, smap, tmap)
            out.write(f"{pair.id}\t{corpusio.format_pharaoh(links)}\n")
    _write_report(args.report, {"pairs": len(doc), "skipped": _skipped(doc.skipped)})
    return 0


def _project_shard(pairs, dictionary, cfg):
    skipped = []
    return expandnet(pairs, dictionary, cfg, skipped=skipped), skipped


def cmd_project(args) -> int:
    dictionary, doc = _load_inputs(args)
    existing = None
    if args.existing_wordnet:
        with _open(args.existing_wordnet) as f:
            existing = corpusio.load_existing_wordnet(f)
    cfg = ProjectionConfig(
        pos_filter_enabled=args.pos_filter,
        orthographic_exception_enabled=not args.no_ortho_exception,
        existing_wordnet=existing,
    )
    pairs = [_prepare(p, dictionary, not args.no_mwe_merge)[0] for p in doc]
    if args.workers > 1 and len(pairs) > 1:
        shards = [pairs[k::args.workers] for k in range(args.workers)]
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_project_shard, shards, [dictionary] * len(shards), [cfg] * len(shards)))
    else:
        results = [_project_shard(pairs, dictionary, cfg)]
    inv = merge_inventories(r[0] for r in results)
    failed = [s for r in results for s in r[1]]
    with _open(args.output, "w") as out:
        corpusio.write_inventory(inv, out, args.format)
    rules = {}
    for rec in inv.records():
        rules[rec.rule.value] = rules.get(rec.rule.value, 0) + 1
    _write_report(args.report, {
        "pairs": len(doc),
        "skipped": _skipped(doc.skipped) + [{"id": pid, "reason": why} for pid, why in failed],
        "records": sum(rules.values()),
        "senses": len(inv),
        "rules": rules,
    })
    return 0


def _read_pharaoh_lines(path, parse):
    rows = []
    with _open(path) as f:
        for lineno, line in corpusio._lines(f):
            pid, tab, links = line.rpartition("\t")
            try:
                rows.append((pid if tab else None, parse(links)))
            except corpusio.FormatError as exc:
                raise corpusio.FormatError(f"{path}: {exc}", lineno) from None
    return rows


def cmd_eval_align(args) -> int:
    pred = _read_pharaoh_lines(args.pred, corpusio.parse_pharaoh)
    gold = _read_pharaoh_lines(args.gold, evalkit.parse_gold_pharaoh)
    if len(pred) != len(gold):
        raise corpusio.FormatError(f"{len(pred)} predicted lines but {len(gold)} gold lines")
    for k, ((pid, _), (gid, _)) in enumerate(zip(pred, gold), 1):
        if pid is not None and gid is not None and pid != gid:
            raise corpusio.FormatError(f"pair id mismatch: {pid!r} vs {gid!r}", k)
    report = evalkit.eval_alignments((p, g) for (_, p), (_, g) in zip(pred, gold))
    print(report.format())
    _write_report(args.report, report.as_dict())
    return 0


def cmd_eval_senses(args) -> int:
    with _open(args.inventory) as f:
        generated = corpusio.read_inventory_keys(f)
    with _open(args.gold) as f:
        gold = evalkit.load_gold_senses(f)
    report = evalkit.eval_inventory(generated, gold)
    print(report.format())
    _write_report(args.report, report.as_dict())
    return 0


def _skipped(entries):
    return [{"line": ln, "id": pid, "reason": why} for ln, pid, why in entries]


def _write_report(path, payload):
    if not path:
        return
    with _open(path, "w") as f:
        json.dump(payload, f, indent=2, ensure_ascii=False)
        f.write("\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="expandnet", description="Dictionary-filtered cross-lingual sense projection.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def corpus_args(sp):
        sp.add_argument("corpus", help="bitext corpus, JSON lines")
        sp.add_argument("dictionary", help="bilingual dictionary TSV")
        sp.add_argument("--alignments", help="sidecar Pharaoh file overriding in-record links")
        sp.add_argument("--no-mwe-merge", action="store_true",
                        help="tokens and links already treat MWEs as single units")
        sp.add_argument("-o", "--output", default="-")
        sp.add_argument("--report", help="write a JSON run report here")

    a = sub.add_parser("align", help="align each pair")
    corpus_args(a)
    a.add_argument("--merged-indices", action="store_true",
                   help="emit links between merged MWE tokens instead of words")
    a.set_defaults(func=cmd_align)

    pr = sub.add_parser("project", help="project senses and write the inventory")
    corpus_args(pr)
    pr.add_argument("--pos-filter", action="store_true")
    pr.add_argument("--no-ortho-exception", action="store_true")
    pr.add_argument("--existing-wordnet", help="TSV of synset<TAB>lemma to exclude")
    pr.add_argument("--format", choices=[corpusio.TSV, corpusio.JSONL], default=corpusio.TSV)
    pr.add_argument("--workers", type=int, default=1)
    pr.set_defaults(func=cmd_project)

    ea = sub.add_parser("eval-align", help="score alignments against gold links")
    ea.add_argument("pred")
    ea.add_argument("gold")
    ea.add_argument("--report")
    ea.set_defaults(func=cmd_eval_align)

    es = sub.add_parser("eval-senses", help="score an inventory against gold senses")
    es.add_argument("inventory")
    es.add_argument("gold")
    es.add_argument("--report")
    es.set_defaults(func=cmd_eval_senses)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "workers", 1) < 1:
        print("expandnet: error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"expandnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except corpusio.FormatError as exc:
        print(f"expandnet: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
