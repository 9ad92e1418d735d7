"""
Project and filter
==================

A synset tag on a source content word moves to its aligned target word only
when the pair is in the dictionary, or when both words are spelled the same.
"""

from expandnet import POS, BitextPair, Dictionary, ProjectionConfig, Sentence, Token, dbalign, expandnet
from expandnet.projection import project_sentence

S = Sentence((
    Token("I", pos=POS.OTHER),
    Token("hate", pos=POS.VERB, synset="bn:00086717v"),
    Token("my", pos=POS.OTHER),
    Token("garden", pos=POS.NOUN, synset="bn:garden.n"),
))
T = Sentence((Token("odio", pos=POS.VERB), Token("mi", pos=POS.OTHER), Token("huerto", pos=POS.NOUN)))
pair = BitextPair("fig1", S, T, {(1, 0), (2, 1), (3, 2)})
d = Dictionary([("hate", "odio"), ("garden", "jardín")])

A = dbalign(pair, d)
print("alignment:", sorted(A))
for rec in project_sentence(pair, A, d):
    print("generated:", rec.lemma, rec.synset, rec.rule.value)
# garden-huerto is aligned, but huerto is not a dictionary translation of
# garden, so no sense is generated for it.

# Proper nouns pass on spelling alone.
S = Sentence((Token("Toronto", pos=POS.NOUN, synset="bn:toronto.n"),))
T = Sentence((Token("Toronto", pos=POS.NOUN),))
toronto = BitextPair("toronto", S, T, {(0, 0)})
print(expandnet([toronto], d).counts())
print(expandnet([toronto], d, ProjectionConfig(orthographic_exception_enabled=False)).counts())

# Lemmas a synset already holds are not generated again.
cfg = ProjectionConfig(existing_wordnet={"bn:00086717v": {"odio"}})
print(expandnet([pair], d, cfg).counts())
