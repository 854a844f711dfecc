import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from repetext.corpus import corpus_from_paragraphs, load_corpus
from repetext.entities import (
    build_gazetteer,
    candidate_entities,
    entities_in_repeats,
    find_mentions,
    load_gazetteer,
    mentions_in_repeat_spans,
)
from repetext.errors import AliasCollisionError, GazetteerError
from repetext.repeats import extract_repeats, paragraphs_with_repeats

KOONING = [{"canonical": "William de Kooning", "aliases": ["de Kooning"], "category": "person"}]


def test_alias_maps_to_same_entity():
    g = build_gazetteer(KOONING)
    assert len(g) == 1
    assert g.alias_index[("William", "de", "Kooning")] == g.alias_index[("de", "Kooning")] == 0
    assert g[0].aliases == ("William de Kooning", "de Kooning")


def test_longest_match_scan():
    g = build_gazetteer(KOONING)
    mentions = find_mentions(load_corpus("de Kooning met William de Kooning"), g)
    assert [(m.start, m.end, m.entity_id) for m in mentions] == [(0, 2, 0), (3, 6, 0)]
    assert mentions[1].token_span == (3, 6)


def test_shared_alias_is_a_collision():
    with pytest.raises(AliasCollisionError) as exc:
        build_gazetteer([{"canonical": "Paris"}, {"canonical": "Paris of Troy", "aliases": ["Paris"]}])
    assert "Paris" in str(exc.value)


def test_collision_detected_after_case_folding():
    records = [{"canonical": "Reading"}, {"canonical": "Reading Gaol", "aliases": ["reading"]}]
    build_gazetteer(records, case_sensitive=True)
    with pytest.raises(AliasCollisionError):
        build_gazetteer(records, case_sensitive=False)


def test_empty_gazetteer():
    g = build_gazetteer([])
    assert len(g) == 0
    assert find_mentions(load_corpus("Rome and Paris"), g) == []


@pytest.mark.parametrize(
    "records",
    [[{"canonical": ""}], [{"canonical": "X", "aliases": [""]}], [{"canonical": "X", "category": "planet"}],
     [{"aliases": ["X"]}], [{"canonical": "?!"}], [{"canonical": "X", "aliases": "Y"}]],
)
def test_bad_records(records):
    with pytest.raises(GazetteerError):
        build_gazetteer(records)


def test_case_insensitive_matching():
    g = build_gazetteer([{"canonical": "Rome"}], case_sensitive=False)
    assert len(find_mentions(load_corpus("ROME rome Rome"), g)) == 3
    g = build_gazetteer([{"canonical": "Rome"}])
    assert len(find_mentions(load_corpus("ROME rome Rome"), g)) == 1


def test_load_gazetteer_forms(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"case_sensitive": False, "entities": KOONING}))
    g = load_gazetteer(path)
    assert not g.case_sensitive
    assert load_gazetteer(path, case_sensitive=True).case_sensitive
    assert load_gazetteer(KOONING).case_sensitive
    path.write_text("{not json")
    with pytest.raises(GazetteerError):
        load_gazetteer(path)
    with pytest.raises(GazetteerError):
        load_gazetteer({"entities": "nope"})


def test_punctuation_in_alias_is_matched_exactly():
    g = build_gazetteer([{"canonical": "St. Ives"}])
    assert len(find_mentions(load_corpus("near St. Ives today"), g)) == 1
    assert find_mentions(load_corpus("near St Ives today"), g) == []


def test_candidates_from_capitalized_runs():
    assert candidate_entities(load_corpus("Gaetano Donizetti being still another person")) == [
        (("Gaetano", "Donizetti"), 1)
    ]
    assert candidate_entities(load_corpus("The dog. The cat.")) == []
    assert candidate_entities(load_corpus("Alexander the Great spoke")) == [(("Alexander", "the", "Great"), 1)]


def test_candidates_connector_needs_capital_after():
    assert candidate_entities(load_corpus("we met Rembrandt of course")) == [(("Rembrandt",), 1)]


def test_candidates_are_counted():
    c = load_corpus("so Achilles sulked. then Achilles slept. Homer wrote it, and Achilles wept")
    assert candidate_entities(c)[0] == (("Achilles",), 3)


def test_entities_in_repeats():
    c = load_corpus(
        "Rome was so lovely in the spring\n\nRome was so lovely in the spring\n\nParis alone\n\nnothing here"
    )
    g = build_gazetteer([{"canonical": "Rome"}, {"canonical": "Paris"}])
    mentions = find_mentions(c, g)
    rs = extract_repeats(c)
    ents, paras = entities_in_repeats(mentions, rs)
    assert ents == {0} and paras == {0, 1}
    assert paras <= paragraphs_with_repeats(rs)
    # mentions only in paragraphs without repeats
    only_paris = [m for m in mentions if m.entity_id == 1]
    assert entities_in_repeats(only_paris, rs) == (frozenset(), frozenset())
    # one mention in a repeat-bearing paragraph
    assert entities_in_repeats(mentions[:1], rs) == (frozenset({0}), frozenset({0}))


def test_mentions_in_repeat_spans():
    c = load_corpus("Rome was so lovely in spring , said Paris\n\nRome was so lovely in spring , said Troy")
    g = build_gazetteer([{"canonical": "Rome"}, {"canonical": "Paris"}, {"canonical": "Troy"}])
    mentions = find_mentions(c, g)
    inside = mentions_in_repeat_spans(mentions, extract_repeats(c), c)
    assert [g[m.entity_id].canonical for m in inside] == ["Rome", "Rome"]


# property tests ----------------------------------------------------------

WORDS = ["A", "B", "C", "d", "."]


def naive_mentions(corpus, gazetteer):
    """Scan each position against every alias, keep the longest, skip past it."""
    out = []
    for p in corpus.paragraphs:
        norms = [t.surface for t in p.tokens]
        i = 0
        while i < len(norms):
            best = None
            for key, ent in gazetteer.alias_index.items():
                if tuple(norms[i : i + len(key)]) == key and (best is None or len(key) > len(best[0])):
                    best = (key, ent)
            if best:
                out.append((p.idx, i, i + len(best[0]), best[1]))
                i += len(best[0])
            else:
                i += 1
    return out


aliases = st.lists(st.sampled_from(WORDS[:4]), min_size=1, max_size=3).map(" ".join)


@st.composite
def gazetteers(draw):
    names = draw(st.lists(aliases, min_size=0, max_size=6, unique=True))
    return build_gazetteer([{"canonical": n} for n in names])


paras = st.lists(st.lists(st.sampled_from(WORDS), min_size=1, max_size=25), min_size=1, max_size=5)


@given(paras, gazetteers())
def test_scan_matches_naive_longest_match(paragraphs, gazetteer):
    c = corpus_from_paragraphs(paragraphs)
    got = [(m.paragraph_idx, m.start, m.end, m.entity_id) for m in find_mentions(c, gazetteer)]
    assert got == naive_mentions(c, gazetteer)


@given(paras, gazetteers())
def test_mentions_do_not_overlap_and_reproduce_alias(paragraphs, gazetteer):
    c = corpus_from_paragraphs(paragraphs)
    mentions = find_mentions(c, gazetteer)
    assert mentions == sorted(mentions)
    for a, b in zip(mentions, mentions[1:]):
        if a.paragraph_idx == b.paragraph_idx:
            assert a.end <= b.start
    for m in mentions:
        toks = tuple(t.surface for t in c.paragraphs[m.paragraph_idx].tokens[m.start : m.end])
        assert gazetteer.alias_index[toks] == m.entity_id
    assert find_mentions(c, gazetteer) == mentions
