"""
Running the file-based pipeline
===============================

The same steps the ``expandnet`` command runs: load a JSONL corpus and a
TSV dictionary, merge MWEs, align, project, and write an inventory.
"""

import io
from pathlib import Path

from expandnet import ProjectionConfig, dbalign, expandnet
from expandnet.corpusio import format_pharaoh, load_corpus, load_dictionary, merge_pair_mwes, write_inventory

data = Path(__file__).parent / "data"
with open(data / "dictionary.tsv", encoding="utf-8") as f:
    d = load_dictionary(f)
with open(data / "corpus.jsonl", encoding="utf-8") as f:
    doc = load_corpus(f)
print(len(d), "dictionary pairs,", len(doc), "sentence pairs")

# "fritter away" is a dictionary MWE, so it becomes one token and its base
# links collapse onto it.
pairs = [merge_pair_mwes(p, d) for p in doc]
fritter = next(p for p in pairs if p.id == "fritter")
print(fritter.source.surfaces, "->", format_pharaoh(dbalign(fritter, d)))

inv = expandnet(pairs, d, ProjectionConfig())
out = io.StringIO()
write_inventory(inv, out, "tsv")
print(out.getvalue())

# Equivalent shell commands:
#   expandnet align demos/data/corpus.jsonl demos/data/dictionary.tsv
#   expandnet project demos/data/corpus.jsonl demos/data/dictionary.tsv --format jsonl
