"""Dictionary-augmented word alignment and project-and-filter sense generation."""

from .dbalign import PassKind, dbalign, diagonal_deviation, diagonal_heuristic, dictionary_links, three_pass_align
from .lexcore import (
    POS,
    AlignmentLink,
    AlignmentSet,
    BitextPair,
    Dictionary,
    Rule,
    SenseInventory,
    SenseRecord,
    Sentence,
    Token,
    add_sense,
    is_content_word,
    normalize_entry,
)
from .projection import ProjectionConfig, expandnet, project_sentence

__version__ = "0.1.0"
