"""Plain-text ingestion: paragraph segmentation, tokenization, corpus statistics.

Paragraphs are blocks of non-blank lines separated by one or more blank
lines. A word token is a maximal run of letters/digits that may contain
internal apostrophes or hyphens; any other non-whitespace character is a
one-character punctuation token. Offsets are Python string (code point)
offsets into the decoded source.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

from .errors import CorpusEncodingError, EmptyCorpusError

SENTENCE_TERMINALS = frozenset({".", "!", "?", "…"})

_WORD = r"[^\W_]+(?:['’\-][^\W_]+)*"
TOKEN_RE = re.compile(rf"(?P<word>{_WORD})|(?P<punct>[^\s\ufeff])")  # a byte-order mark is not a token


@dataclass(frozen=True)
class TokenizeOptions:
    case_fold: bool = False


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    norm: str
    paragraph_idx: int
    pos_in_paragraph: int
    global_pos: int
    is_word: bool
    char_start: int
    char_end: int

    @property
    def is_punct(self) -> bool:
        return not self.is_word


@dataclass(frozen=True)
class CorpusStats:
    paragraph_count: int = 0
    sentence_count: int = 0
    word_count: int = 0
    token_count: int = 0

    def __add__(self, other: CorpusStats) -> CorpusStats:
        return CorpusStats(
            self.paragraph_count + other.paragraph_count,
            self.sentence_count + other.sentence_count,
            self.word_count + other.word_count,
            self.token_count + other.token_count,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "paragraph_count": self.paragraph_count,
            "sentence_count": self.sentence_count,
            "word_count": self.word_count,
            "token_count": self.token_count,
        }


@dataclass(frozen=True)
class Paragraph:
    idx: int
    tokens: tuple[Token, ...]
    sentence_count: int
    char_span: tuple[int, int]

    @property
    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.is_word)

    def stats(self) -> CorpusStats:
        return CorpusStats(1, self.sentence_count, self.word_count, len(self.tokens))


@dataclass(frozen=True)
class Corpus:
    paragraphs: tuple[Paragraph, ...]
    stats: CorpusStats
    source_name: str = "<text>"
    options: TokenizeOptions = field(default_factory=TokenizeOptions)

    def __len__(self) -> int:
        return len(self.paragraphs)

    def tokens(self) -> Iterator[Token]:
        for para in self.paragraphs:
            yield from para.tokens

    @cached_property
    def flat_tokens(self) -> tuple[Token, ...]:
        return tuple(self.tokens())

    def paragraph_start(self, idx: int) -> int:
        """Global position of the first token of paragraph ``idx``."""
        return self.paragraphs[idx].tokens[0].global_pos


def count_sentences(tokens: Sequence[Token]) -> int:
    terminals = sum(1 for t in tokens if t.is_punct and t.surface in SENTENCE_TERMINALS)
    if terminals == 0 and any(t.is_word for t in tokens):
        return 1
    return terminals


def decode_text(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusEncodingError(exc.start) from None


def _paragraph_blocks(text: str) -> Iterator[tuple[int, int]]:
    """Yield (start, end) offsets of each run of non-blank lines."""
    start = end = None
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            if start is None:
                start = offset
            end = offset + len(line.rstrip())
        elif start is not None:
            yield start, end
            start = None
        offset += len(line)
    if start is not None:
        yield start, end


def load_corpus(
    text: str | bytes,
    options: TokenizeOptions | None = None,
    source_name: str = "<text>",
) -> Corpus:
    """Segment and tokenize ``text`` into an immutable :class:`Corpus`.

    Raises :class:`CorpusEncodingError` for undecodable bytes and
    :class:`EmptyCorpusError` when no paragraph survives segmentation.
    """
    if isinstance(text, (bytes, bytearray)):
        text = decode_text(bytes(text))
    options = options or TokenizeOptions()
    fold = str.casefold if options.case_fold else None

    paragraphs: list[Paragraph] = []
    global_pos = 0
    for block_start, block_end in _paragraph_blocks(text):
        toks = []
        for pos, m in enumerate(TOKEN_RE.finditer(text, block_start, block_end)):
            surface = m.group()
            toks.append(
                Token(
                    surface=surface,
                    norm=fold(surface) if fold else surface,
                    paragraph_idx=len(paragraphs),
                    pos_in_paragraph=pos,
                    global_pos=global_pos,
                    is_word=m.lastgroup == "word",
                    char_start=m.start(),
                    char_end=m.end(),
                )
            )
            global_pos += 1
        if not toks:
            continue
        paragraphs.append(
            Paragraph(
                idx=len(paragraphs),
                tokens=tuple(toks),
                sentence_count=count_sentences(toks),
                char_span=(toks[0].char_start, toks[-1].char_end),
            )
        )

    if not paragraphs:
        raise EmptyCorpusError(f"{source_name}: no paragraphs found")
    corpus = Corpus(tuple(paragraphs), CorpusStats(), source_name, options)
    object.__setattr__(corpus, "stats", corpus_stats(corpus))
    return corpus


def load_corpus_file(path: str | Path, options: TokenizeOptions | None = None) -> Corpus:
    path = Path(path)
    return load_corpus(path.read_bytes(), options, source_name=path.name)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    total = CorpusStats()
    for para in corpus.paragraphs:
        total = total + para.stats()
    return total


def corpus_from_paragraphs(
    paragraphs: Sequence[Sequence[str]],
    options: TokenizeOptions | None = None,
) -> Corpus:
    """Build a corpus from pre-split paragraphs of whitespace-free tokens.

    Convenience for synthetic tests: tokens are joined with single spaces
    and paragraphs with blank lines, then loaded through the normal path so
    the result is identical to reading that text.
    """
    text = "\n\n".join(" ".join(p) for p in paragraphs if p)
    return load_corpus(text, options)
