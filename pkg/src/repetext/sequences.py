"""Paragraph labelling by network component, run compression, pattern counts.

A run stream is split into segments wherever a run is forcibly broken
(a paragraph referencing several selected components under the ``break``
policy, or a gap longer than ``max_gap``). Adjacent runs inside a segment
always carry different components; patterns are counted as overlapping
windows of consecutive runs within one segment.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping, Sequence

from .entities import Mention
from .errors import ParameterError
from .networks import ComponentPartition

MULTI_POLICIES = ("break", "emit_all")


@dataclass(frozen=True)
class NetworkLabeling:
    labels: Mapping[int, frozenset[int]]
    components: tuple[int, ...]
    paragraph_count: int
    names: Mapping[int, str] = field(default_factory=dict)

    def name(self, comp: int) -> str:
        return self.names.get(comp, str(comp))


@dataclass(frozen=True)
class Run:
    component: int
    start: int  # first paragraph index
    end: int  # last paragraph index (inclusive)
    length: int  # number of labelled paragraphs in the run
    segment: int


@dataclass(frozen=True)
class RunSequence:
    runs: tuple[Run, ...]
    selected: tuple[int, ...]
    max_gap: int | None = None
    multi_policy: str = "break"

    def segments(self) -> list[list[Run]]:
        out: dict[int, list[Run]] = defaultdict(list)
        for run in self.runs:
            out[run.segment].append(run)
        return [out[k] for k in sorted(out)]

    def components(self) -> list[int]:
        return [r.component for r in self.runs]


@dataclass(frozen=True)
class PatternCounts:
    counts: Mapping[tuple[int, ...], int]
    max_len: int

    def __getitem__(self, pattern: Sequence[int]) -> int:
        return self.counts.get(tuple(pattern), 0)

    def of_length(self, length: int) -> dict[tuple[int, ...], int]:
        return {p: c for p, c in self.counts.items() if len(p) == length}

    def ranked(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.counts.items(), key=lambda kv: (len(kv[0]), -kv[1], kv[0]))


def label_paragraphs(
    mentions: Iterable[Mention],
    partition: ComponentPartition,
    selected: Collection[int],
    paragraph_count: int | None = None,
    names: Mapping[int, str] | None = None,
) -> NetworkLabeling:
    """Map each paragraph to the selected components its mentions belong to."""
    selected = tuple(sorted(set(selected)))
    if not selected:
        raise ParameterError("no components selected")
    for comp in selected:
        if not 0 <= comp < len(partition):
            raise ParameterError(f"component {comp} not in partition of {len(partition)}")
    wanted = set(selected)
    labels: dict[int, set[int]] = defaultdict(set)
    last = -1
    for m in mentions:
        last = max(last, m.paragraph_idx)
        comp = partition.node_to_component.get(m.entity_id)
        if comp in wanted:
            labels[m.paragraph_idx].add(comp)
    count = paragraph_count if paragraph_count is not None else last + 1
    frozen = {p: frozenset(c) for p, c in sorted(labels.items())}
    return NetworkLabeling(frozen, selected, count, dict(names or {}))


def compress_runs(
    labeling: NetworkLabeling,
    selected: Collection[int] | None = None,
    max_gap: int | None = None,
    multi_policy: str = "break",
) -> RunSequence:
    """Compress labelled paragraphs into runs of a single component.

    ``max_gap`` is the largest number of unlabelled paragraphs allowed
    between two paragraphs of the same run (``None``: unbounded). Under
    ``break`` a paragraph labelled with several selected components ends
    the current run and starts none; under ``emit_all`` it contributes one
    event per component in ascending id order.
    """
    if multi_policy not in MULTI_POLICIES:
        raise ParameterError(f"multi_policy must be one of {MULTI_POLICIES}, got {multi_policy!r}")
    if max_gap is not None and max_gap < 0:
        raise ParameterError("max_gap must be non-negative")
    chosen = set(labeling.components if selected is None else selected)

    runs: list[Run] = []
    segment = 0
    cur: list[int] | None = None  # [component, start, end, length]

    def close():
        nonlocal cur
        if cur is not None:
            runs.append(Run(cur[0], cur[1], cur[2], cur[3], segment))
            cur = None

    last_p = None
    for p in sorted(labeling.labels):
        comps = sorted(labeling.labels[p] & chosen)
        if not comps:
            continue
        if max_gap is not None and last_p is not None and p - last_p - 1 > max_gap:
            close()
            if runs and runs[-1].segment == segment:
                segment += 1
        last_p = p
        if len(comps) > 1 and multi_policy == "break":
            close()
            if runs and runs[-1].segment == segment:
                segment += 1
            continue
        for comp in comps:
            if cur is not None and cur[0] == comp:
                cur[2] = p
                cur[3] += 1
            else:
                close()
                cur = [comp, p, p, 1]
    close()
    return RunSequence(tuple(runs), tuple(sorted(chosen)), max_gap, multi_policy)


def count_patterns(run_seq: RunSequence, max_len: int = 10) -> PatternCounts:
    """Count overlapping windows of 2..max_len consecutive runs within each segment."""
    if max_len < 2:
        raise ParameterError("max_len must be at least 2")
    counts: Counter = Counter()
    for seg in run_seq.segments():
        comps = [r.component for r in seg]
        for length in range(2, max_len + 1):
            for i in range(len(comps) - length + 1):
                counts[tuple(comps[i : i + length])] += 1
    return PatternCounts(dict(sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0]))), max_len)


@dataclass(frozen=True)
class BandSpec:
    cells: tuple[tuple[str, ...], ...]  # per paragraph: colours, empty for unlabelled
    legend: tuple[tuple[str, str], ...]  # (name, colour)
    background: str = "#FFFFFF"


def band_data(
    labeling: NetworkLabeling,
    all_components: Sequence[int],
    color_map: Mapping[int, str],
) -> BandSpec:
    """One cell per paragraph coloured by its components; multi-label cells list several colours."""
    missing = [c for c in all_components if c not in color_map]
    if missing:
        raise ParameterError(f"no colour for components {missing}")
    rank = {c: i for i, c in enumerate(all_components)}
    cells = []
    for p in range(labeling.paragraph_count):
        comps = sorted((c for c in labeling.labels.get(p, ()) if c in rank), key=rank.__getitem__)
        cells.append(tuple(color_map[c] for c in comps))
    legend = tuple((labeling.name(c), color_map[c]) for c in all_components)
    return BandSpec(tuple(cells), legend)
