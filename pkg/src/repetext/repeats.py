"""Unique maximal repeated n-grams.

The search grows n-grams one token at a time. Every repeated (n+1)-gram
has a repeated n-gram as both its prefix and its suffix, so the level
n+1 candidates are exactly the positions whose prefix class and suffix
class were both repeated at level n, and the pair of those two classes
identifies the (n+1)-gram. The loop stops at the first length with no
repeats or at ``max_n``.

Pruning then drops a repeated n-gram that is a contiguous piece of a
longer repeated n-gram. Substrings of a repeated sequence are themselves
repeated, so it is enough to look one level up: an n-gram is pruned iff
it is the prefix or suffix of some repeated (n+1)-gram.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .corpus import Corpus, Token
from .errors import OracleGuardError, ParameterError

log = logging.getLogger(__name__)

MAX_N = 32
ORACLE_TOKEN_LIMIT = 10_000


@dataclass(frozen=True)
class RepeatConfig:
    min_n: int = 2
    max_n: int = MAX_N
    span_paragraphs: bool = False
    count_overlapping: bool = True
    include_punct: bool = True
    strict_maximality: bool = False

    def __post_init__(self):
        if not (2 <= self.min_n <= self.max_n <= MAX_N):
            raise ParameterError(
                f"need 2 <= min_n <= max_n <= {MAX_N}, got min_n={self.min_n} max_n={self.max_n}"
            )

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, order=True)
class Occurrence:
    global_start: int
    paragraph_idx: int
    start_pos_in_paragraph: int
    # last token of the span; differs from paragraph_idx only when spanning paragraphs
    end_paragraph_idx: int
    global_end: int  # exclusive, in corpus token positions


@dataclass(frozen=True)
class RepeatedPhrase:
    tokens: tuple[str, ...]
    occurrences: tuple[Occurrence, ...]
    word_count: int

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def count(self) -> int:
        return len(self.occurrences)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    @property
    def first_start(self) -> int:
        return self.occurrences[0].global_start


@dataclass(frozen=True)
class RepeatSet:
    phrases: tuple[RepeatedPhrase, ...]
    config: RepeatConfig
    # repeated n-grams per length before cross-length pruning
    repeated_by_length: dict[int, int] = field(default_factory=dict)

    @property
    def pre_prune_count(self) -> int:
        return sum(self.repeated_by_length.values())

    def __len__(self) -> int:
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)


def _segments(corpus: Corpus, config: RepeatConfig) -> list[list[Token]]:
    segments: list[list[Token]] = []
    current: list[Token] = []
    for para in corpus.paragraphs:
        if not config.span_paragraphs and current:
            segments.append(current)
            current = []
        current.extend(t for t in para.tokens if config.include_punct or t.is_word)
    if current:
        segments.append(current)
    return segments


def _select(positions: Sequence[int], n: int, overlapping: bool) -> list[int]:
    """Occurrences that count: all of them, or a greedy left-to-right non-overlapping pick."""
    if overlapping:
        return list(positions)
    picked: list[int] = []
    next_free = -1
    for p in positions:
        if p >= next_free:
            picked.append(p)
            next_free = p + n
    return picked


def _make_phrase(flat: Sequence[Token], starts: Sequence[int], n: int) -> RepeatedPhrase:
    occs = []
    for i in starts:
        first, last = flat[i], flat[i + n - 1]
        occs.append(
            Occurrence(
                global_start=first.global_pos,
                paragraph_idx=first.paragraph_idx,
                start_pos_in_paragraph=first.pos_in_paragraph,
                end_paragraph_idx=last.paragraph_idx,
                global_end=last.global_pos + 1,
            )
        )
    window = flat[starts[0] : starts[0] + n]
    return RepeatedPhrase(
        tokens=tuple(t.norm for t in window),
        occurrences=tuple(occs),
        word_count=sum(1 for t in window if t.is_word),
    )


def _sort_key(p: RepeatedPhrase):
    return (-p.n, -p.count, p.first_start)


def extract_repeats(corpus: Corpus, config: RepeatConfig | None = None) -> RepeatSet:
    """Find all unique maximal repeated n-grams of ``corpus``."""
    config = config or RepeatConfig()
    segments = _segments(corpus, config)
    flat: list[Token] = [t for seg in segments for t in seg]
    size = len(flat)
    # seg_end[i]: exclusive end of the segment holding position i
    seg_end: list[int] = []
    for seg in segments:
        seg_end.extend([len(seg_end) + len(seg)] * len(seg))

    overlapping = config.count_overlapping

    # level 1: class = token norm
    ids: dict[str, int] = {}
    cls = [ids.setdefault(t.norm, len(ids)) for t in flat]
    groups: dict[int, list[int]] = defaultdict(list)
    for i, c in enumerate(cls):
        groups[c].append(i)
    # repeated classes of the current level: class -> counted starts
    level = {c: pos for c, pos in groups.items() if len(pos) >= 2}
    rep = [c if c in level else -1 for c in cls]

    levels: dict[int, dict] = {}
    n = 1
    while level and n < config.max_n:
        n += 1
        groups = defaultdict(list)
        nxt = [-1] * size
        for i in range(size - 1):
            c = rep[i]
            if c < 0 or i + n > seg_end[i]:
                continue
            d = rep[i + 1]
            if d < 0:
                continue
            groups[(c, d)].append(i)
        new_level: dict[int, list[int]] = {}
        new_counts: dict[int, int] = {}
        parent: dict[int, tuple[int, int]] = {}
        for key, pos in groups.items():
            counted = _select(pos, n, overlapping)
            if len(counted) < 2:
                continue
            c = len(parent)
            parent[c] = key
            new_level[c] = counted
            new_counts[c] = len(counted)
            for i in pos:
                nxt[i] = c
        if n >= config.min_n:
            levels[n] = {"level": new_level, "parent": parent, "counts": new_counts}
        level, rep = new_level, nxt

    phrases: list[RepeatedPhrase] = []
    repeated_by_length: dict[int, int] = {}
    for n in sorted(levels):
        cur = levels[n]
        if not cur["level"]:
            continue
        repeated_by_length[n] = len(cur["level"])
        up = levels.get(n + 1)
        pruned: set[int] = set()
        if up:
            for c, (pre, suf) in up["parent"].items():
                if config.strict_maximality:
                    uc = up["counts"][c]
                    if uc == cur["counts"][pre]:
                        pruned.add(pre)
                    if uc == cur["counts"][suf]:
                        pruned.add(suf)
                else:
                    pruned.add(pre)
                    pruned.add(suf)
        for c, counted in cur["level"].items():
            if c not in pruned:
                phrases.append(_make_phrase(flat, counted, n))

    phrases.sort(key=_sort_key)
    log.debug("extract_repeats: %d maximal of %d repeated", len(phrases), sum(repeated_by_length.values()))
    return RepeatSet(tuple(phrases), config, repeated_by_length)


def oracle_repeats(corpus: Corpus, config: RepeatConfig | None = None) -> RepeatSet:
    """Naive reference for :func:`extract_repeats`.

    Enumerates every n-gram at every length from ``min_n`` to ``max_n``
    (no early stop, no candidate filtering) and prunes by listing every
    contiguous piece of every longer repeat. Quadratic; guarded to small
    corpora.
    """
    config = config or RepeatConfig()
    if corpus.stats.token_count > ORACLE_TOKEN_LIMIT:
        raise OracleGuardError(
            f"oracle limited to {ORACLE_TOKEN_LIMIT} tokens, corpus has {corpus.stats.token_count}"
        )
    segments = _segments(corpus, config)
    flat: list[Token] = [t for seg in segments for t in seg]
    norms = [t.norm for t in flat]

    repeated: dict[tuple[str, ...], list[int]] = {}
    offset = 0
    table: dict[int, dict[tuple[str, ...], list[int]]] = {n: {} for n in range(config.min_n, config.max_n + 1)}
    for seg in segments:
        for n in table:
            for i in range(offset, offset + len(seg) - n + 1):
                table[n].setdefault(tuple(norms[i : i + n]), []).append(i)
        offset += len(seg)
    for n, grams in table.items():
        for gram, starts in grams.items():
            counted = _select(starts, n, config.count_overlapping)
            if len(counted) >= 2:
                repeated[gram] = counted

    if config.strict_maximality:
        vocab = set(norms)
        keep = []
        for gram, counted in repeated.items():
            if len(gram) == config.max_n:
                keep.append(gram)
                continue
            extended = [(a,) + gram for a in vocab] + [gram + (a,) for a in vocab]
            if not any(len(repeated.get(e, ())) == len(counted) for e in extended):
                keep.append(gram)
    else:
        covered: set[tuple[str, ...]] = set()
        for gram in repeated:
            m = len(gram)
            for size in range(config.min_n, m):
                for j in range(m - size + 1):
                    covered.add(gram[j : j + size])
        keep = [g for g in repeated if g not in covered]

    by_length = Counter(len(g) for g in repeated)
    phrases = sorted((_make_phrase(flat, repeated[g], len(g)) for g in keep), key=_sort_key)
    return RepeatSet(tuple(phrases), config, dict(sorted(by_length.items())))


def paragraphs_with_repeats(repeat_set: RepeatSet, min_words: int = 3) -> set[int]:
    """Paragraphs touched by an occurrence of a phrase with more than ``min_words`` words."""
    out: set[int] = set()
    for phrase in repeat_set.phrases:
        if phrase.word_count <= min_words:
            continue
        for occ in phrase.occurrences:
            out.update(range(occ.paragraph_idx, occ.end_paragraph_idx + 1))
    return out


def top_by_length(repeat_set: RepeatSet, k: int) -> list[RepeatedPhrase]:
    return sorted(repeat_set.phrases, key=lambda p: (-p.n, -p.count, p.first_start))[: max(k, 0)]


def top_by_frequency(repeat_set: RepeatSet, k: int) -> list[RepeatedPhrase]:
    return sorted(repeat_set.phrases, key=lambda p: (-p.count, -p.n, p.first_start))[: max(k, 0)]


def occurrence_tokens(corpus: Corpus, occurrence: Occurrence, include_punct: bool = True) -> tuple[str, ...]:
    """Look an occurrence up in the corpus and return the n-gram found there."""
    span = corpus.flat_tokens[occurrence.global_start : occurrence.global_end]
    return tuple(t.norm for t in span if include_punct or t.is_word)
