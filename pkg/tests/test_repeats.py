import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from repetext.corpus import corpus_from_paragraphs, load_corpus
from repetext.errors import OracleGuardError, ParameterError
from repetext.repeats import (
    RepeatConfig,
    extract_repeats,
    occurrence_tokens,
    oracle_repeats,
    paragraphs_with_repeats,
    top_by_frequency,
    top_by_length,
)


def summary(rs):
    return {p.tokens: [o.global_start for o in p.occurrences] for p in rs}


def test_abcabc():
    rs = extract_repeats(load_corpus("a b c a b c"))
    assert summary(rs) == {("a", "b", "c"): [0, 3]}
    assert rs.repeated_by_length == {2: 2, 3: 1}
    assert rs.pre_prune_count == 3
    assert rs == oracle_repeats(load_corpus("a b c a b c"))


def test_xyxyx_overlapping():
    rs = extract_repeats(load_corpus("x y x y x"))
    assert summary(rs) == {("x", "y", "x"): [0, 2]}
    assert rs.phrases[0].count == 2


def test_xyxyx_non_overlapping():
    # the two "x y x" occurrences share a token, so only one counts
    rs = extract_repeats(load_corpus("x y x y x"), RepeatConfig(count_overlapping=False))
    assert summary(rs) == {("x", "y"): [0, 2], ("y", "x"): [1, 3]}


def test_run_of_one_token_non_overlapping():
    rs = extract_repeats(load_corpus("a a a a a"), RepeatConfig(count_overlapping=False))
    assert summary(rs) == {("a", "a"): [0, 2]}
    rs = extract_repeats(load_corpus("a a a a a"))
    assert summary(rs) == {("a", "a", "a", "a"): [0, 1]}


def test_single_token_corpus_is_empty():
    assert len(extract_repeats(load_corpus("word"))) == 0
    assert len(oracle_repeats(load_corpus("word"))) == 0


def test_strict_maximality_keeps_independent_short_repeat():
    c = load_corpus("a b c d a b c e a b")
    assert summary(extract_repeats(c)) == {("a", "b", "c"): [0, 4]}
    strict = extract_repeats(c, RepeatConfig(strict_maximality=True))
    assert summary(strict) == {("a", "b", "c"): [0, 4], ("a", "b"): [0, 4, 8]}
    assert strict == oracle_repeats(c, RepeatConfig(strict_maximality=True))


def test_paragraph_boundaries():
    c = load_corpus("x a\n\nb y\n\nx a\n\nb y")
    assert summary(extract_repeats(c)) == {("x", "a"): [0, 4], ("b", "y"): [2, 6]}
    spanning = extract_repeats(c, RepeatConfig(span_paragraphs=True))
    assert summary(spanning) == {("x", "a", "b", "y"): [0, 4]}
    occ = spanning.phrases[0].occurrences[1]
    assert (occ.paragraph_idx, occ.end_paragraph_idx, occ.start_pos_in_paragraph) == (2, 3, 0)


def test_punctuation_tokens():
    c = load_corpus("a , b . a b")
    assert len(extract_repeats(c)) == 0
    rs = extract_repeats(c, RepeatConfig(include_punct=False))
    assert summary(rs) == {("a", "b"): [0, 4]}
    phrase = rs.phrases[0]
    assert phrase.word_count == 2
    assert [o.global_end for o in phrase.occurrences] == [3, 6]
    assert occurrence_tokens(c, phrase.occurrences[0], include_punct=False) == ("a", "b")


def test_question_mark_is_part_of_phrase():
    c = load_corpus("could I not abide ? Yes .\n\ncould I not abide ? No .")
    top = top_by_length(extract_repeats(c), 1)[0]
    assert top.tokens == ("could", "I", "not", "abide", "?")
    assert top.word_count == 4


def test_case_fold_merges_phrases():
    text = "There would be. there would be."
    assert len(extract_repeats(load_corpus(text))) == 1  # "would be ." only
    from repetext.corpus import TokenizeOptions

    folded = extract_repeats(load_corpus(text, TokenizeOptions(case_fold=True)))
    assert folded.phrases[0].tokens == ("there", "would", "be", ".")


def test_min_and_max_n():
    c = load_corpus("p q r s t p q r s t")
    assert summary(extract_repeats(c, RepeatConfig(max_n=3))) == {("p", "q", "r"): [0, 5], ("q", "r", "s"): [1, 6], ("r", "s", "t"): [2, 7]}
    assert summary(extract_repeats(c, RepeatConfig(min_n=5))) == {("p", "q", "r", "s", "t"): [0, 5]}
    assert len(extract_repeats(c, RepeatConfig(min_n=6))) == 0


@pytest.mark.parametrize("kwargs", [{"min_n": 1}, {"max_n": 1}, {"max_n": 33}, {"min_n": 5, "max_n": 4}])
def test_config_bounds(kwargs):
    with pytest.raises(ParameterError):
        RepeatConfig(**kwargs)


def test_oracle_guard():
    c = corpus_from_paragraphs([["w"] * 10_001])
    with pytest.raises(OracleGuardError):
        oracle_repeats(c)


def test_paragraphs_with_repeats():
    c = load_corpus("a b c\n\nz\n\ny\n\na b c")
    rs = extract_repeats(c)
    assert paragraphs_with_repeats(rs, min_words=2) == {0, 3}
    assert paragraphs_with_repeats(rs, min_words=3) == set()
    assert paragraphs_with_repeats(rs, min_words=100) == set()


def test_top_k():
    c = load_corpus("a b c d e . a b c d e .\n\nf g h\n\nf g h\n\nf g h")
    rs = extract_repeats(c)
    assert top_by_length(rs, 1)[0].tokens == ("a", "b", "c", "d", "e", ".")
    assert top_by_frequency(rs, 1)[0].tokens == ("f", "g", "h")
    assert top_by_length(rs, 0) == [] == top_by_frequency(rs, 0)


def test_ordering_is_length_then_count_then_position():
    rs = extract_repeats(load_corpus("u v . u v . w x . w x . w x"))
    keys = [(-p.n, -p.count, p.first_start) for p in rs]
    assert keys == sorted(keys)


# property tests ----------------------------------------------------------

configs = st.builds(
    RepeatConfig,
    min_n=st.integers(2, 4),
    max_n=st.sampled_from([4, 6, 32]),
    span_paragraphs=st.booleans(),
    count_overlapping=st.booleans(),
    include_punct=st.booleans(),
    strict_maximality=st.booleans(),
)
corpora = st.lists(
    st.lists(st.sampled_from(["a", "b", "c", "d", ".", "?"]), min_size=1, max_size=30), min_size=1, max_size=6
).map(corpus_from_paragraphs)


@given(corpora, configs)
def test_fast_path_equals_oracle(corpus, config):
    assert extract_repeats(corpus, config) == oracle_repeats(corpus, config)


@given(corpora, configs)
def test_occurrences_reproduce_phrase(corpus, config):
    for phrase in extract_repeats(corpus, config):
        assert phrase.count >= 2
        assert config.min_n <= phrase.n <= config.max_n
        for occ in phrase.occurrences:
            assert occurrence_tokens(corpus, occ, config.include_punct) == phrase.tokens
            if not config.span_paragraphs:
                assert occ.paragraph_idx == occ.end_paragraph_idx
        if not config.count_overlapping:
            for a, b in zip(phrase.occurrences, phrase.occurrences[1:]):
                assert a.global_end <= b.global_start


def _contains(big, small):
    return any(big[i : i + len(small)] == small for i in range(len(big) - len(small) + 1))


@given(corpora, configs.filter(lambda c: not c.strict_maximality))
def test_no_retained_phrase_inside_another(corpus, config):
    phrases = [p.tokens for p in extract_repeats(corpus, config)]
    for a in phrases:
        for b in phrases:
            assert a == b or not _contains(b, a)


@given(corpora, configs)
def test_repeated_lengths_are_downward_closed(corpus, config):
    lengths = sorted(extract_repeats(corpus, config).repeated_by_length)
    assert lengths == list(range(config.min_n, config.min_n + len(lengths)))


@given(corpora, st.lists(st.sampled_from(["a", "b", "c", "."]), min_size=1, max_size=20), configs)
def test_appending_a_paragraph_never_lowers_counts(corpus, extra, config):
    paragraphs = [[t.surface for t in p.tokens] for p in corpus.paragraphs]
    before = {p.tokens: p.count for p in extract_repeats(corpus, config)}
    after = {p.tokens: p.count for p in extract_repeats(corpus_from_paragraphs(paragraphs + [extra]), config)}
    for tokens, count in after.items():
        if tokens in before:
            assert count >= before[tokens]


def test_planted_long_repeats_match_oracle():
    from repetext.synthetic import random_token_paragraphs

    rng = random.Random(3)
    for _ in range(10):
        paras = random_token_paragraphs(rng, rng.randint(2, 30), rng.randint(50, 800), rng.randint(1, 20), plant=4)
        c = corpus_from_paragraphs(paras)
        for span in (False, True):
            cfg = RepeatConfig(span_paragraphs=span)
            assert extract_repeats(c, cfg) == oracle_repeats(c, cfg)
