"""Gazetteer entity matching and capitalization-based candidate suggestions."""
from __future__ import annotations

import bisect
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import SENTENCE_TERMINALS, Corpus, Token, TOKEN_RE
from .errors import AliasCollisionError, GazetteerError
from .repeats import RepeatSet, paragraphs_with_repeats

CATEGORIES = ("person", "place", "org", "work", "other")

# lowercase words allowed inside a capitalized run, e.g. "William de Kooning"
CONNECTORS = frozenset({"de", "of", "van", "la", "the"})
# punctuation that may precede a sentence's first word
_OPENERS = frozenset('"“‘\'([«')
# never proposed as a single-token candidate
_CANDIDATE_STOP = frozenset({"I"})


@dataclass(frozen=True)
class Entity:
    id: int
    canonical: str
    aliases: tuple[str, ...]
    category: str | None = None


@dataclass(frozen=True)
class Gazetteer:
    entities: tuple[Entity, ...] = ()
    alias_index: dict[tuple[str, ...], int] = field(default_factory=dict)
    case_sensitive: bool = True

    def __len__(self) -> int:
        return len(self.entities)

    def __getitem__(self, entity_id: int) -> Entity:
        return self.entities[entity_id]

    def by_canonical(self, name: str) -> Entity:
        for ent in self.entities:
            if ent.canonical == name:
                return ent
        raise KeyError(name)

    @property
    def alias_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(k) for k in self.alias_index}, reverse=True))


@dataclass(frozen=True, order=True)
class Mention:
    paragraph_idx: int
    start: int
    end: int
    entity_id: int

    @property
    def token_span(self) -> tuple[int, int]:
        return (self.start, self.end)


def _alias_key(alias: str, case_sensitive: bool) -> tuple[str, ...]:
    toks = [(m.group(), m.lastgroup == "word") for m in TOKEN_RE.finditer(alias)]
    if not any(is_word for _, is_word in toks):
        raise GazetteerError(f"alias {alias!r} contains no word token")
    return tuple(s if case_sensitive else s.casefold() for s, _ in toks)


def build_gazetteer(records: Iterable[dict], case_sensitive: bool = True) -> Gazetteer:
    """Build a gazetteer from ``{"canonical", "aliases", "category"}`` records.

    The canonical name is always an alias. Raises :class:`AliasCollisionError`
    if two entities claim the same alias (after tokenization and, when
    matching is case-insensitive, case folding).
    """
    entities: list[Entity] = []
    index: dict[tuple[str, ...], int] = {}
    for rec in records:
        if not isinstance(rec, dict) or not isinstance(rec.get("canonical"), str):
            raise GazetteerError(f"entity record needs a string 'canonical': {rec!r}")
        canonical = rec["canonical"].strip()
        if not canonical:
            raise GazetteerError("empty canonical name")
        raw_aliases = rec.get("aliases", [])
        if not isinstance(raw_aliases, list) or not all(isinstance(a, str) for a in raw_aliases):
            raise GazetteerError(f"{canonical!r}: 'aliases' must be a list of strings")
        category = rec.get("category")
        if category is not None and category not in CATEGORIES:
            raise GazetteerError(f"{canonical!r}: unknown category {category!r}")

        ent_id = len(entities)
        aliases: list[str] = []
        for alias in [canonical, *raw_aliases]:
            alias = alias.strip()
            if not alias:
                raise GazetteerError(f"{canonical!r}: empty alias")
            if alias in aliases:
                continue
            key = _alias_key(alias, case_sensitive)
            owner = index.get(key)
            if owner is not None and owner != ent_id:
                raise AliasCollisionError(alias, entities[owner].canonical, canonical)
            index[key] = ent_id
            aliases.append(alias)
        entities.append(Entity(ent_id, canonical, tuple(aliases), category))
    return Gazetteer(tuple(entities), index, case_sensitive)


def load_gazetteer(source: str | Path | list | dict, case_sensitive: bool | None = None) -> Gazetteer:
    """Load a gazetteer from a JSON file path or already-parsed JSON.

    Accepts either a bare array of entity records or an object
    ``{"case_sensitive": bool, "entities": [...]}``. An explicit
    ``case_sensitive`` argument overrides the file.
    """
    data = source
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise GazetteerError(f"{source}: not valid JSON ({exc})") from None
    file_case = True
    if isinstance(data, dict):
        file_case = bool(data.get("case_sensitive", True))
        data = data.get("entities")
    if not isinstance(data, list):
        raise GazetteerError("gazetteer must be a JSON array of entity objects")
    return build_gazetteer(data, file_case if case_sensitive is None else case_sensitive)


def find_mentions(corpus: Corpus, gazetteer: Gazetteer) -> list[Mention]:
    """Left-to-right, longest-match-first, non-overlapping alias scan per paragraph."""
    if not gazetteer.alias_index:
        return []
    lengths = gazetteer.alias_lengths
    index = gazetteer.alias_index
    fold = not gazetteer.case_sensitive
    mentions: list[Mention] = []
    for para in corpus.paragraphs:
        keys = [t.surface.casefold() if fold else t.surface for t in para.tokens]
        size = len(keys)
        i = 0
        while i < size:
            for length in lengths:
                if i + length > size:
                    continue
                ent = index.get(tuple(keys[i : i + length]))
                if ent is not None:
                    mentions.append(Mention(para.idx, i, i + length, ent))
                    i += length
                    break
            else:
                i += 1
    return mentions


def _is_capitalized(tok: Token) -> bool:
    return tok.is_word and tok.surface[0].isupper()


def _sentence_initial(tokens: Sequence[Token], i: int) -> bool:
    j = i - 1
    while j >= 0 and tokens[j].surface in _OPENERS:
        j -= 1
    return j < 0 or tokens[j].surface in SENTENCE_TERMINALS


def candidate_entities(corpus: Corpus) -> list[tuple[tuple[str, ...], int]]:
    """Suggest gazetteer entries: runs of capitalized words with their frequency.

    Runs may contain the lowercase connectors in :data:`CONNECTORS` between
    capitalized words. A lone capitalized word at the start of a sentence
    is ignored, as is the pronoun "I".
    """
    freq: dict[tuple[str, ...], int] = defaultdict(int)
    first_seen: dict[tuple[str, ...], int] = {}
    for para in corpus.paragraphs:
        toks = para.tokens
        i = 0
        while i < len(toks):
            if not _is_capitalized(toks[i]):
                i += 1
                continue
            last = i
            j = i + 1
            while j < len(toks):
                if _is_capitalized(toks[j]):
                    last = j
                elif not (toks[j].is_word and toks[j].surface in CONNECTORS):
                    break
                j += 1
            run = tuple(t.surface for t in toks[i : last + 1])
            if not (len(run) == 1 and (_sentence_initial(toks, i) or run[0] in _CANDIDATE_STOP)):
                freq[run] += 1
                first_seen.setdefault(run, toks[i].global_pos)
            i = last + 1
    return sorted(freq.items(), key=lambda kv: (-kv[1], first_seen[kv[0]]))


def entities_in_repeats(
    mentions: Sequence[Mention], repeat_set: RepeatSet, min_words: int = 3
) -> tuple[frozenset[int], frozenset[int]]:
    """Entities mentioned in repeat-bearing paragraphs, and the paragraphs where they occur."""
    bearing = paragraphs_with_repeats(repeat_set, min_words)
    kept = [m for m in mentions if m.paragraph_idx in bearing]
    return frozenset(m.entity_id for m in kept), frozenset(m.paragraph_idx for m in kept)


def mentions_in_repeat_spans(
    mentions: Sequence[Mention], repeat_set: RepeatSet, corpus: Corpus, min_words: int = 3
) -> list[Mention]:
    """Mentions lying entirely inside an occurrence of a phrase with more than ``min_words`` words."""
    spans = sorted(
        (occ.global_start, occ.global_end)
        for phrase in repeat_set.phrases
        if phrase.word_count > min_words
        for occ in phrase.occurrences
    )
    # prefix max of span ends: some span starting at or before g0 reaches g1 iff reach[k] >= g1
    starts = [s for s, _ in spans]
    reach: list[int] = []
    best = -1
    for _, e in spans:
        best = max(best, e)
        reach.append(best)
    out = []
    for m in mentions:
        g0 = corpus.paragraph_start(m.paragraph_idx) + m.start
        g1 = g0 + (m.end - m.start)
        k = bisect.bisect_right(starts, g0) - 1
        if k >= 0 and reach[k] >= g1:
            out.append(m)
    return out

