"""
Dictionary-augmented alignment, step by step
=============================================

Three passes pick links: first those proposed by both the base aligner and
the dictionary, then dictionary-only links, then base-only links.  A link
that touches an already aligned token is never accepted.
"""

from expandnet import BitextPair, Dictionary, Sentence, dbalign, diagonal_deviation
from expandnet.corpusio import format_pharaoh

# The base aligner links "man" to both "hombre" and "esposo".
S = Sentence.from_words("that man is my husband")
T = Sentence.from_words("ese hombre es mi esposo")
pair = BitextPair("man", S, T, base_links={(1, 1), (1, 4)})
d = Dictionary([("man", "hombre"), ("husband", "esposo")])

A = dbalign(pair, d)
for link in A:
    print(f"{S[link.i].surface:>8} -> {T[link.j].surface:<8} via {A.label(link).value}")
# man-hombre comes from the intersection pass; man-esposo conflicts with it,
# so esposo stays free for husband in the dictionary pass.

# When two candidates tie on the pass condition, the one closer to the
# sentence diagonal wins.
S = Sentence.from_words("his front teeth were missing")
T = Sentence.from_words("le faltaban los dientes frontales")
for j in (3, 4):
    print(f"teeth -> {T[j].surface}: deviation {diagonal_deviation(2, j, len(S), len(T))}")
A = dbalign(BitextPair("teeth", S, T, {(2, 3), (2, 4)}), Dictionary())
print("chosen:", format_pharaoh(A))
