import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expandnet.corpusio import (
    FormatError,
    format_pharaoh,
    load_alignments,
    load_corpus,
    load_dictionary,
    load_existing_wordnet,
    merge_mwes,
    merge_mwes_with_map,
    merge_pair_mwes,
    normalize_entry,
    parse_pharaoh,
    read_inventory,
    read_inventory_keys,
    write_inventory,
)
from expandnet.lexcore import (
    MWE_SEP,
    POS,
    BitextPair,
    Dictionary,
    Provenance,
    Rule,
    SenseInventory,
    SenseRecord,
    Sentence,
    Token,
)

HATE = "bn:00086717v"


# -- normalization -----------------------------------------------------------

@pytest.mark.parametrize("raw, expected", [
    ("Fritter  Away", "fritter_away"),
    ("odio", "odio"),
    ("  echar_de \t menos ", "echar_de_menos"),
    ("a__ _b", "a_b"),
    ("Straße", "strasse"),
])
def test_normalize_entry(raw, expected):
    assert normalize_entry(raw) == expected


@given(st.text())
def test_normalize_entry_idempotent(s):
    once = normalize_entry(s)
    assert normalize_entry(once) == once


# -- dictionary --------------------------------------------------------------

def test_load_dictionary():
    d = load_dictionary(io.StringIO("# en-es\nfritter away\tderrochar\nman\thombre\nman\thombre\n\n"))
    assert d.pairs == {("fritter_away", "derrochar"), ("man", "hombre")}
    assert len(d) == 2


def test_load_dictionary_empty_warns(caplog):
    assert len(load_dictionary(io.StringIO(""))) == 0
    assert "empty" in caplog.text


@pytest.mark.parametrize("text, lineno", [
    ("man\thombre\nbroken line\n", 2),
    ("a\tb\tc\n", 1),
    ("ok\tfine\nx\t \n", 2),
])
def test_load_dictionary_format_errors(text, lineno):
    with pytest.raises(FormatError) as err:
        load_dictionary(io.StringIO(text))
    assert err.value.lineno == lineno


# -- Pharaoh -----------------------------------------------------------------

@pytest.mark.parametrize("line, expected", [
    ("0-1 2-3", {(0, 1), (2, 3)}),
    ("", set()),
    ("1-1 1-4", {(1, 1), (1, 4)}),
    ("2-3 0-1 2-3", {(0, 1), (2, 3)}),
])
def test_parse_pharaoh(line, expected):
    assert parse_pharaoh(line) == expected


@pytest.mark.parametrize("item", ["01", "a-1", "1-", "-1", "1--2", "1-2-3", "+1-2", "1_0-2"])
def test_parse_pharaoh_rejects(item):
    with pytest.raises(FormatError, match="malformed"):
        parse_pharaoh(f"0-0 {item}")


@given(st.lists(st.tuples(st.integers(0, 99), st.integers(0, 99))))
def test_pharaoh_round_trip(links):
    text = " ".join(f"{i}-{j}" for i, j in links)
    parsed = parse_pharaoh(text)
    assert parsed == set(links)
    assert parse_pharaoh(format_pharaoh(parsed)) == parsed
    assert format_pharaoh(parse_pharaoh(format_pharaoh(parsed))) == format_pharaoh(parsed)


def test_load_alignments_keeps_blank_lines():
    assert load_alignments(io.StringIO("0-0\n\n1-1 0-1\n")) == [{(0, 0)}, set(), {(0, 1), (1, 1)}]
    with pytest.raises(FormatError) as err:
        load_alignments(io.StringIO("0-0\nx\n"))
    assert err.value.lineno == 2


# -- corpus ------------------------------------------------------------------

def corpus_line(**rec):
    return json.dumps(rec, ensure_ascii=False) + "\n"


MAN = corpus_line(
    id="man",
    source=["that", {"surface": "man", "lemma": "man", "pos": "NOUN", "synset": "bn:man.n"}, "is", "my", "husband"],
    target=["ese", "hombre", "es", "mi", "esposo"],
    alignment="1-1 1-4",
)


def test_load_corpus():
    doc = load_corpus(io.StringIO(MAN + corpus_line(id=7, source=[], target=[])))
    assert len(doc) == 2 and not doc.skipped
    man, empty = doc.pairs
    assert man.base_links == {(1, 1), (1, 4)}
    assert man.source[1] == Token("man", "man", POS.NOUN, "bn:man.n")
    assert man.target[0] == Token("ese")
    assert empty.id == "7" and len(empty.source) == len(empty.target) == 0


def test_load_corpus_coarsens_pos():
    doc = load_corpus(io.StringIO(corpus_line(id="p", source=[{"surface": "the", "pos": "DET"}], target=[])))
    assert doc.pairs[0].source[0].pos is POS.OTHER


def test_load_corpus_skips_out_of_range_links():
    bad = corpus_line(id="bad", source=["a"] * 5, target=["b"] * 5, alignment="9-0")
    doc = load_corpus(io.StringIO(bad + MAN))
    assert [p.id for p in doc] == ["man"]
    assert doc.skipped[0][:2] == (1, "bad") and "out of range" in doc.skipped[0][2]


@pytest.mark.parametrize("text, lineno, msg", [
    (MAN + "{not json\n", 2, "invalid JSON"),
    (corpus_line(source=[], target=[]), 1, "no id"),
    (MAN + MAN, 2, "duplicate"),
    (corpus_line(id="x", source=[]), 1, "target"),
    (corpus_line(id="x", source=[{"lemma": "a"}], target=[]), 1, "surface"),
    (corpus_line(id="x", source=[], target=[], alignment="0:1"), 1, "malformed"),
    ("[1, 2]\n", 1, "object"),
])
def test_load_corpus_errors(text, lineno, msg):
    with pytest.raises(FormatError, match=msg) as err:
        load_corpus(io.StringIO(text))
    assert err.value.lineno == lineno


def test_load_corpus_sidecar_alignments():
    doc = load_corpus(io.StringIO(MAN), alignments=[parse_pharaoh("1-1")])
    assert doc.pairs[0].base_links == {(1, 1)}
    with pytest.raises(FormatError):
        load_corpus(io.StringIO(MAN), alignments=[])
    with pytest.raises(FormatError):
        load_corpus(io.StringIO(MAN), alignments=[frozenset(), frozenset()])


# -- MWE merging -------------------------------------------------------------

def test_merge_fritter_away():
    d = Dictionary([("fritter away", "derrochar")])
    sent = Sentence((Token("fritter", pos=POS.VERB, synset="bn:fritter.v"), Token("away", pos=POS.ADV)))
    merged = merge_mwes(sent, d)
    assert merged.surfaces == ["fritter_away"]
    tok = merged[0]
    assert tok.lemma == "fritter_away" and tok.synset == "bn:fritter.v" and tok.pos is None


def test_merge_no_match_is_unchanged():
    d = Dictionary([("fritter away", "derrochar")])
    sent = Sentence.from_words("they fritter money away")
    assert merge_mwes(sent, d) == sent


def test_merge_leftmost_longest():
    d = Dictionary([("a b", "x"), ("b c", "y")])
    assert merge_mwes(Sentence.from_words("a b c"), d).surfaces == ["a_b", "c"]
    d = Dictionary([("a b", "x"), ("a b c", "y")])
    assert merge_mwes(Sentence.from_words("a b c d"), d).surfaces == ["a_b_c", "d"]


def test_merge_uses_side_specific_entries():
    d = Dictionary([("fritter away", "echar a perder")])
    S = Sentence.from_words("fritter away")
    T = Sentence.from_words("echar a perder")
    assert merge_mwes(S, d, "target") == S
    assert merge_mwes(T, d, "target").surfaces == ["echar_a_perder"]


def test_merge_pair_remaps_links():
    d = Dictionary([("fritter away", "derrochar")])
    pair = BitextPair("p", Sentence.from_words("they fritter away it"),
                      Sentence.from_words("lo derrochan"), {(1, 1), (2, 1), (3, 0)})
    merged, smap, tmap = merge_pair_mwes(pair, d, with_maps=True)
    assert merged.source.surfaces == ["they", "fritter_away", "it"]
    assert merged.base_links == {(1, 1), (2, 0)}
    assert smap == [0, 1, 1, 2] and tmap == [0, 1]
    assert merge_pair_mwes(pair, d) == merged


words = st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=10)
entries = st.lists(st.lists(st.sampled_from(["a", "b", "c", "d"]), min_size=1, max_size=3), max_size=5)


@given(words, entries)
def test_merge_preserves_text_and_never_grows(ws, es):
    d = Dictionary((" ".join(e), "t") for e in es)
    sent = Sentence.from_words(ws)
    merged, index_map = merge_mwes_with_map(sent, d)
    assert len(merged) <= len(sent)
    assert [p for t in merged for p in t.surface.split(MWE_SEP)] == ws
    assert index_map == sorted(index_map) and len(index_map) == len(ws)
    assert set(index_map) == set(range(len(merged)))


# -- inventories -------------------------------------------------------------

def rec(lemma, synset, rule=Rule.DICTIONARY, pid="p", i=0, j=0):
    return SenseRecord(lemma, synset, rule, Provenance(pid, i, j))


def test_write_inventory_tsv():
    inv = SenseInventory().add(rec("odio", HATE))
    out = io.StringIO()
    write_inventory(inv, out, "tsv")
    assert out.getvalue().splitlines() == ["lemma\tsynset\tcount\trules", "odio\tbn:00086717v\t1\tDICTIONARY:1"]


def test_write_inventory_sorted_with_breakdown():
    inv = SenseInventory()
    inv.add(rec("taxi", "s2", Rule.ORTHOGRAPHIC)).add(rec("taxi", "s2", pid="q"))
    inv.add(rec("casa", "s2")).add(rec("zumo", "s1"))
    out = io.StringIO()
    write_inventory(inv, out, "TSV")
    assert out.getvalue().splitlines()[1:] == [
        "zumo\ts1\t1\tDICTIONARY:1",
        "casa\ts2\t1\tDICTIONARY:1",
        "taxi\ts2\t2\tDICTIONARY:1,ORTHOGRAPHIC:1",
    ]


def test_write_empty_inventory():
    out = io.StringIO()
    write_inventory(SenseInventory(), out, "tsv")
    assert out.getvalue() == "lemma\tsynset\tcount\trules\n"
    out = io.StringIO()
    write_inventory(SenseInventory(), out, "jsonl")
    assert out.getvalue() == ""
    with pytest.raises(ValueError):
        write_inventory(SenseInventory(), out, "xml")


records = st.builds(
    rec,
    st.sampled_from(["odio", "dar marcha atrás", "Canadá", "taxi"]),
    st.sampled_from([HATE, "s1", "s2"]),
    st.sampled_from(list(Rule)),
    st.text(min_size=1, max_size=5),
    st.integers(0, 50),
    st.integers(0, 50),
)


@given(st.lists(records, max_size=30))
def test_inventory_jsonl_round_trip(recs):
    inv = SenseInventory()
    for r in recs:
        inv.add(r)
    out = io.StringIO()
    write_inventory(inv, out, "jsonl")
    back = read_inventory(io.StringIO(out.getvalue()))
    assert back == inv
    assert back.counts() == inv.counts()
    assert read_inventory_keys(io.StringIO(out.getvalue())) == set(inv.keys())
    tsv = io.StringIO()
    write_inventory(inv, tsv, "tsv")
    assert read_inventory_keys(io.StringIO(tsv.getvalue())) == set(inv.keys())


def test_read_inventory_rejects_bad_count():
    line = json.dumps({"lemma": "odio", "synset": HATE, "count": 2, "rules": {},
                       "provenance": [{"pair_id": "p", "source_index": 0, "target_index": 0,
                                       "rule": "DICTIONARY"}]})
    with pytest.raises(FormatError, match="count"):
        read_inventory(io.StringIO(line + "\n"))


def test_load_existing_wordnet():
    wn = load_existing_wordnet(io.StringIO("bn:1\tOdio\nbn:1\techar de menos\nbn:2\tcasa\n"))
    assert wn == {"bn:1": {"odio", "echar_de_menos"}, "bn:2": {"casa"}}
    with pytest.raises(FormatError):
        load_existing_wordnet(io.StringIO("bn:1 odio\n"))
