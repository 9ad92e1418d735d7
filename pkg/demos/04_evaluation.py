"""
Scoring alignments and senses
=============================

Alignments are scored against sure (``i-j``) and possible (``i?j``) gold
links; inventories against a gold set of (lemma, synset) pairs.
"""

from pathlib import Path

from expandnet import dbalign, expandnet
from expandnet.corpusio import load_corpus, load_dictionary, merge_pair_mwes
from expandnet.evalkit import eval_alignments, eval_inventory, load_gold_senses, parse_gold_pharaoh

data = Path(__file__).parent / "data"
with open(data / "dictionary.tsv", encoding="utf-8") as f:
    d = load_dictionary(f)
with open(data / "corpus.jsonl", encoding="utf-8") as f:
    doc = load_corpus(f)
with open(data / "gold_alignments.txt", encoding="utf-8") as f:
    gold = {pid: parse_gold_pharaoh(links) for pid, links in (l.rstrip("\n").split("\t") for l in f)}

# Base links alone, then the dictionary-augmented alignment.  MWE merging is
# skipped here so that indices stay word-level like the gold file.
base = eval_alignments((p.base_links, gold[p.id]) for p in doc)
aligned = eval_alignments((dbalign(p, d), gold[p.id]) for p in doc)
print("base aligner\n" + base.format(), end="\n\n")
print("dbalign\n" + aligned.format(), end="\n\n")

with open(data / "gold_senses.tsv", encoding="utf-8") as f:
    gold_senses = load_gold_senses(f)
inv = expandnet([merge_pair_mwes(p, d) for p in doc], d)
print("senses\n" + eval_inventory(inv, gold_senses).format())
