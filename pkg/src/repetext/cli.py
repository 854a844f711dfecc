"""Command-line entry point: ``repetext {stats,repeats,entities,graph,sequences,all}``.

Settings come from an optional JSON config file whose keys mirror
:class:`RunConfig`; command-line flags override it. Exit status is 0 on
success, 1 for usage or configuration errors and 2 for unreadable or
malformed input.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

from . import export
from .corpus import Corpus, TokenizeOptions, load_corpus
from .entities import (
    Gazetteer,
    Mention,
    candidate_entities,
    entities_in_repeats,
    find_mentions,
    load_gazetteer,
    mentions_in_repeat_spans,
)
from .errors import InputError, ParameterError, RepetextError
from .networks import (
    AssociationGraph,
    ComponentPartition,
    build_graph,
    connected_components,
    degree_weights,
    name_components,
    pagerank,
    subgraph_window_comparison,
)
from .repeats import RepeatConfig, RepeatSet, extract_repeats, paragraphs_with_repeats, top_by_frequency, top_by_length
from .sequences import MULTI_POLICIES, band_data, compress_runs, count_patterns, label_paragraphs

log = logging.getLogger("repetext")

COMMANDS = ("stats", "repeats", "entities", "graph", "sequences", "all")
DEFAULT_OUT = "repetext_out"


class UsageError(RepetextError):
    pass


@dataclass
class EntityOptions:
    min_words: int = 3
    case_sensitive: bool | None = None
    scope: str = "repeats"  # paragraphs used for networks: "repeats" or "all"
    fragment_only: bool = False


@dataclass
class SequencePolicy:
    selected: list | None = None  # component names or 1-based numbers; None = all multi-node
    max_gap: int | None = None
    multi_policy: str = "break"
    max_pattern_len: int = 10


@dataclass
class ExportConfig:
    format: list = field(default_factory=lambda: list(export.GRAPH_FORMATS))
    color_map: dict = field(default_factory=dict)
    width: int | None = None
    cell_width: int = 1
    strip_height: int = 60
    timestamp: bool = False


@dataclass
class RunConfig:
    input: str | None = None
    gazetteer: str | None = None
    labels: str | None = None
    out: str | None = None
    tokenize: TokenizeOptions = field(default_factory=TokenizeOptions)
    repeats: RepeatConfig = field(default_factory=RepeatConfig)
    entities: EntityOptions = field(default_factory=EntityOptions)
    window: int = 0
    sequences: SequencePolicy = field(default_factory=SequencePolicy)
    export: ExportConfig = field(default_factory=ExportConfig)
    top_k: int = 10

    def validate(self) -> None:
        if self.window not in (0, 1):
            raise UsageError(f"window must be 0 or 1, got {self.window}")
        if self.sequences.max_pattern_len < 2:
            raise UsageError("max_pattern_len must be at least 2")
        if self.sequences.multi_policy not in MULTI_POLICIES:
            raise UsageError(f"multi_policy must be one of {MULTI_POLICIES}")
        if self.sequences.max_gap is not None and self.sequences.max_gap < 0:
            raise UsageError("max_gap must be non-negative")
        if self.entities.scope not in ("repeats", "all"):
            raise UsageError("entities.scope must be 'repeats' or 'all'")
        if self.input is None:
            raise UsageError("no input text given (--input or \"input\" in the config file)")
        for name in ("input", "gazetteer", "labels"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise UsageError(f"{name} file not found: {path}")


_SECTIONS = {
    "tokenize": TokenizeOptions,
    "repeats": RepeatConfig,
    "entities": EntityOptions,
    "sequences": SequencePolicy,
    "export": ExportConfig,
}


def config_from_dict(data: dict) -> RunConfig:
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        section = _SECTIONS.get(key)
        if section is None:
            kwargs[key] = value
            continue
        if not isinstance(value, dict):
            raise UsageError(f"config section {key!r} must be an object")
        fields = {f.name for f in dataclasses.fields(section)}
        bad = set(value) - fields
        if bad:
            raise UsageError(f"unknown keys in {key!r}: {sorted(bad)}")
        try:
            kwargs[key] = section(**value)
        except (ParameterError, TypeError) as exc:
            raise UsageError(f"bad {key!r} settings: {exc}") from None
    return RunConfig(**kwargs)


def config_to_dict(cfg: RunConfig) -> dict:
    return asdict(cfg)


# flag name -> (section or None, field)
_FLAG_TARGETS = {
    "input": (None, "input"),
    "gazetteer": (None, "gazetteer"),
    "labels": (None, "labels"),
    "out": (None, "out"),
    "window": (None, "window"),
    "top_k": (None, "top_k"),
    "case_fold": ("tokenize", "case_fold"),
    "min_n": ("repeats", "min_n"),
    "max_n": ("repeats", "max_n"),
    "span_paragraphs": ("repeats", "span_paragraphs"),
    "count_overlapping": ("repeats", "count_overlapping"),
    "include_punct": ("repeats", "include_punct"),
    "strict_maximality": ("repeats", "strict_maximality"),
    "min_words": ("entities", "min_words"),
    "case_sensitive": ("entities", "case_sensitive"),
    "scope": ("entities", "scope"),
    "fragment_only": ("entities", "fragment_only"),
    "selected": ("sequences", "selected"),
    "max_gap": ("sequences", "max_gap"),
    "multi_policy": ("sequences", "multi_policy"),
    "max_pattern_len": ("sequences", "max_pattern_len"),
    "format": ("export", "format"),
    "cell_width": ("export", "cell_width"),
    "strip_height": ("export", "strip_height"),
    "timestamp": ("export", "timestamp"),
}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    data: dict[str, Any] = {}
    if args.config:
        cfg_path = Path(args.config)
        try:
            data = json.loads(cfg_path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise UsageError(f"config file not found: {cfg_path}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        # paths inside a config file are relative to that file
        for key in ("input", "gazetteer", "labels", "out"):
            if isinstance(data.get(key), str) and not Path(data[key]).is_absolute():
                data[key] = str(cfg_path.parent / data[key])
    for flag, (section, name) in _FLAG_TARGETS.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        if section is None:
            data[name] = value
        else:
            data.setdefault(section, {})
            data[section][name] = value
    if data.get("out") is None:
        data["out"] = os.environ.get("REPETEXT_OUT", DEFAULT_OUT)
    cfg = config_from_dict(data)
    cfg.validate()
    try:
        export.ExportOptions(tuple(cfg.export.format), cfg.export.color_map, cfg.export.width,
                             cfg.export.cell_width, cfg.export.strip_height)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def _sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class Pipeline:
    """Lazily computed stages; each property runs its upstream stages on first use."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.out = Path(cfg.out)
        self.written: list[Path] = []

    def write(self, name: str, text: str) -> None:
        self.written.append(export.write_atomic(self.out / name, text))

    # inputs -----------------------------------------------------------------

    @cached_property
    def source_bytes(self) -> bytes:
        return Path(self.cfg.input).read_bytes()

    @cached_property
    def corpus(self) -> Corpus:
        return load_corpus(self.source_bytes, self.cfg.tokenize, source_name=Path(self.cfg.input).name)

    @cached_property
    def gazetteer(self) -> Gazetteer:
        if self.cfg.gazetteer is None:
            raise UsageError(
                "this command needs a gazetteer: pass --gazetteer FILE "
                '(JSON array of {"canonical", "aliases", "category"} objects)'
            )
        return load_gazetteer(self.cfg.gazetteer, self.cfg.entities.case_sensitive)

    @cached_property
    def label_map(self) -> dict[str, str]:
        if self.cfg.labels is None:
            return {}
        try:
            data = json.loads(Path(self.cfg.labels).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError(f"labels file is not valid JSON: {exc}") from None
        if not isinstance(data, dict) or not all(isinstance(v, str) for v in data.values()):
            raise InputError("labels file must map entity names to component names")
        return data

    def provenance(self) -> dict:
        cfg = self.cfg
        prov: dict[str, Any] = {
            "input": {"name": Path(cfg.input).name, "sha256": _sha256(cfg.input)},
            "tokenize": asdict(cfg.tokenize),
            "repeats": cfg.repeats.as_dict(),
            "entities": asdict(cfg.entities),
            "window": cfg.window,
            "sequences": asdict(cfg.sequences),
            "export": {k: v for k, v in asdict(cfg.export).items()},
        }
        for key in ("gazetteer", "labels"):
            path = getattr(cfg, key)
            prov[key] = None if path is None else {"name": Path(path).name, "sha256": _sha256(path)}
        if cfg.export.timestamp:
            prov["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        return prov

    # repeats ----------------------------------------------------------------

    def _cache_key(self) -> str:
        h = hashlib.sha256(self.source_bytes)
        h.update(json.dumps(asdict(self.cfg.tokenize), sort_keys=True).encode())
        h.update(json.dumps(self.cfg.repeats.as_dict(), sort_keys=True).encode())
        return h.hexdigest()[:16]

    @cached_property
    def repeat_set(self) -> RepeatSet:
        cache_dir = self.out / ".cache"
        cached = cache_dir / f"repeats-{self._cache_key()}.json"
        if cached.is_file():
            log.info("using cached repeats %s", cached.name)
            try:
                return export.repeats_from_json(cached.read_text(encoding="utf-8"))
            except (KeyError, ValueError, TypeError):
                log.warning("ignoring unreadable cache %s", cached)
        rs = extract_repeats(self.corpus, self.cfg.repeats)
        if cache_dir.is_dir():
            for stale in cache_dir.glob("repeats-*.json"):
                stale.unlink()
        export.write_atomic(cached, export.repeats_to_json(rs))
        return rs

    @cached_property
    def bearing(self) -> set[int]:
        return paragraphs_with_repeats(self.repeat_set, self.cfg.entities.min_words)

    def repeat_summary(self) -> dict:
        k = self.cfg.top_k
        short = lambda p: {"phrase": p.text, "n": p.n, "count": p.count}  # noqa: E731
        return {
            "min_words": self.cfg.entities.min_words,
            "paragraphs_with_repeats": len(self.bearing),
            "top_by_length": [short(p) for p in top_by_length(self.repeat_set, k)],
            "top_by_frequency": [short(p) for p in top_by_frequency(self.repeat_set, k)],
        }

    # entities ---------------------------------------------------------------

    @cached_property
    def mentions(self) -> list[Mention]:
        return find_mentions(self.corpus, self.gazetteer)

    @cached_property
    def network_mentions(self) -> list[Mention]:
        if self.cfg.entities.fragment_only:
            return mentions_in_repeat_spans(self.mentions, self.repeat_set, self.corpus, self.cfg.entities.min_words)
        return self.mentions

    @cached_property
    def paragraph_set(self) -> set[int] | None:
        return self.bearing if self.cfg.entities.scope == "repeats" else None

    def entity_summary(self) -> dict:
        ents, paras = entities_in_repeats(self.mentions, self.repeat_set, self.cfg.entities.min_words)
        return {
            "gazetteer_size": len(self.gazetteer),
            "mention_count": len(self.mentions),
            "unique_entities": len({m.entity_id for m in self.mentions}),
            "entities_in_repeats": len(ents),
            "paragraphs_in_repeats": len(paras),
        }

    # networks ---------------------------------------------------------------

    @cached_property
    def entity_labels(self) -> dict[int, str]:
        return {e.id: e.canonical for e in self.gazetteer.entities}

    def graph(self, window: int) -> AssociationGraph:
        return self._graphs[window]

    @cached_property
    def _graphs(self) -> dict[int, AssociationGraph]:
        desc = ("repeat-bearing paragraphs" if self.paragraph_set is not None else "all paragraphs") + (
            ", mentions inside repeats" if self.cfg.entities.fragment_only else ""
        )
        return {w: build_graph(self.network_mentions, self.paragraph_set, w, desc) for w in (0, 1)}

    @cached_property
    def partitions(self) -> dict[int, ComponentPartition]:
        return {w: connected_components(g) for w, g in self._graphs.items()}

    def component_names(self, window: int) -> dict[int, str]:
        return name_components(self.partitions[window], self.gazetteer, self.label_map)

    def graph_summary(self) -> dict:
        doc: dict[str, Any] = {}
        for w, g in self._graphs.items():
            part = self.partitions[w]
            names = self.component_names(w)
            ranks = pagerank(g) if g.nodes else {}
            top = sorted(ranks, key=lambda v: (-round(ranks[v], 12), v))[: self.cfg.top_k]
            doc[f"window_{w}"] = {
                "nodes": len(g.nodes),
                "edges": len(g.edges),
                "total_weight": sum(g.edges.values()),
                "components": len(part),
                "multi_node_components": len(part.multi_node()),
                "component_sizes": [len(c) for c in part.components],
                "named_components": {
                    names[i]: len(part.components[i]) for i in part.multi_node() if not names[i].startswith("component-")
                },
                "top_pagerank": [
                    {"entity": self.entity_labels[v], "pagerank": round(ranks[v], 9)} for v in top
                ],
            }
        cmp_ = self.comparison
        doc["comparison"] = {
            "edges_subset": cmp_.edges_subset,
            "new_edges": [[self.entity_labels[a], self.entity_labels[b]] for a, b in cmp_.new_edges],
            "merged": [[i + 1 for i in group] for group in cmp_.merged],
            "bridges": [self.entity_labels[v] for v in cmp_.bridges],
        }
        return doc

    @cached_property
    def comparison(self):
        return subgraph_window_comparison(self._graphs[0], self._graphs[1])

    # sequences --------------------------------------------------------------

    def selected_components(self) -> list[int]:
        part = self.partitions[self.cfg.window]
        names = self.component_names(self.cfg.window)
        wanted = self.cfg.sequences.selected
        if wanted is None:
            return part.multi_node()
        by_name = {v: k for k, v in names.items()}
        out = []
        for item in wanted:
            if isinstance(item, int) and not isinstance(item, bool):
                if not 1 <= item <= len(part):
                    raise UsageError(f"selected component {item} out of range 1..{len(part)}")
                out.append(item - 1)
            elif isinstance(item, str) and item in by_name:
                out.append(by_name[item])
            else:
                raise UsageError(f"selected component {item!r} not found (known: {sorted(by_name)})")
        return out

    def sequence_products(self) -> dict:
        pol = self.cfg.sequences
        names = self.component_names(self.cfg.window)
        selected = self.selected_components()
        n_par = self.corpus.stats.paragraph_count
        prov = {
            "window": self.cfg.window,
            "selected": [names[c] for c in selected],
            "max_gap": pol.max_gap,
            "multi_policy": pol.multi_policy,
            "max_pattern_len": pol.max_pattern_len,
        }
        if not selected:
            log.warning("no multi-node components to sequence")
            return {"names": names, "runs": None, "counts": None, "band": None, "provenance": prov}
        labeling = label_paragraphs(self.network_mentions, self.partitions[self.cfg.window], selected, n_par, names)
        runs = compress_runs(labeling, selected, pol.max_gap, pol.multi_policy)
        counts = count_patterns(runs, pol.max_pattern_len)
        colours = export.component_colors(selected, names, self.cfg.export.color_map)
        band = band_data(labeling, selected, colours)
        return {"names": names, "runs": runs, "counts": counts, "band": band, "provenance": prov}

    @property
    def export_options(self) -> export.ExportOptions:
        e = self.cfg.export
        return export.ExportOptions(tuple(e.format), e.color_map, e.width, e.cell_width, e.strip_height, e.timestamp)


# commands -------------------------------------------------------------------


def _report(pipe: Pipeline, **blocks) -> dict:
    doc = export.build_report(pipe.provenance(), **blocks)
    json_p, text_p = export.export_report(doc, pipe.out / "report.json", pipe.out / "report.txt")
    pipe.written += [json_p, text_p]
    return doc


def cmd_stats(pipe: Pipeline) -> dict:
    return _report(pipe, corpus_stats=pipe.corpus.stats)


def _write_repeats(pipe: Pipeline) -> None:
    rs = pipe.repeat_set
    pipe.write("repeats.csv", export.repeats_to_csv(rs))
    pipe.write("repeats.json", export.repeats_to_json(rs))
    k = pipe.cfg.top_k
    pipe.write("top_by_length.csv", export.repeats_to_csv(dataclasses.replace(rs, phrases=tuple(top_by_length(rs, k)))))
    pipe.write(
        "top_by_frequency.csv", export.repeats_to_csv(dataclasses.replace(rs, phrases=tuple(top_by_frequency(rs, k))))
    )


def cmd_repeats(pipe: Pipeline) -> dict:
    _write_repeats(pipe)
    return _report(pipe, corpus_stats=pipe.corpus.stats, repeat_set=pipe.repeat_set, repeat_summary=pipe.repeat_summary())


def _write_entities(pipe: Pipeline) -> None:
    pipe.write("mentions.csv", export.mentions_to_csv(pipe.mentions, pipe.gazetteer))
    pipe.write("candidates.csv", export.candidates_to_csv(candidate_entities(pipe.corpus)))


def cmd_entities(pipe: Pipeline) -> dict:
    pipe.gazetteer  # fail early, before the expensive stages
    _write_entities(pipe)
    return _report(
        pipe,
        corpus_stats=pipe.corpus.stats,
        repeat_set=pipe.repeat_set,
        repeat_summary=pipe.repeat_summary(),
        entity_results=pipe.entity_summary(),
    )


def _write_graphs(pipe: Pipeline) -> dict:
    labels = pipe.entity_labels
    for w in (0, 1):
        g, part = pipe.graph(w), pipe.partitions[w]
        for fmt in pipe.cfg.export.format:
            ext = {"dot": "dot", "graphml": "graphml", "json": "json"}[fmt]
            pipe.write(f"graph_w{w}.{ext}", export.GRAPH_WRITERS[fmt](g, part, labels))
        names = pipe.component_names(w)
        pipe.write(f"components_w{w}.csv", export.components_to_csv(part, names, labels))
        ranks = pagerank(g) if g.nodes else {}
        pipe.write(f"centrality_w{w}.csv", export.centrality_to_csv(degree_weights(g), ranks, labels))
    summary = pipe.graph_summary()
    pipe.write("window_comparison.json", export.to_json(summary["comparison"]))
    return summary


def cmd_graph(pipe: Pipeline) -> dict:
    pipe.gazetteer
    summary = _write_graphs(pipe)
    return _report(
        pipe,
        corpus_stats=pipe.corpus.stats,
        repeat_set=pipe.repeat_set,
        repeat_summary=pipe.repeat_summary(),
        entity_results=pipe.entity_summary(),
        graphs=summary,
    )


def _write_sequences(pipe: Pipeline) -> dict:
    prod = pipe.sequence_products()
    names, runs, counts = prod["names"], prod["runs"], prod["counts"]
    if counts is None:
        pipe.write("patterns.csv", export.to_csv(("pattern", "length", "count"), []))
        pipe.write("patterns.json", export.to_json({"patterns": [], "provenance": prod["provenance"]}))
        return {"run_count": 0, "segment_count": 0, "patterns": [], "provenance": prod["provenance"]}
    pipe.write("patterns.csv", export.patterns_to_csv(counts, names))
    pipe.write("patterns.json", export.patterns_to_json(counts, names, prod["provenance"]))
    pipe.write(
        "runs.csv",
        export.to_csv(
            ("segment", "component", "first_paragraph", "last_paragraph", "length"),
            ((r.segment, names[r.component], r.start + 1, r.end + 1, r.length) for r in runs.runs),
        ),
    )
    pipe.write("band.svg", export.band_to_svg(prod["band"], pipe.export_options))
    return {
        "run_count": len(runs.runs),
        "segment_count": len(runs.segments()),
        "patterns": [
            {"pattern": export.pattern_name(p, names), "count": c} for p, c in counts.ranked()
        ],
        "provenance": prod["provenance"],
    }


def cmd_sequences(pipe: Pipeline) -> dict:
    pipe.gazetteer
    seq = _write_sequences(pipe)
    return _report(pipe, corpus_stats=pipe.corpus.stats, patterns=seq)


def cmd_all(pipe: Pipeline) -> dict:
    pipe.gazetteer
    _write_repeats(pipe)
    _write_entities(pipe)
    graphs = _write_graphs(pipe)
    seq = _write_sequences(pipe)
    return _report(
        pipe,
        corpus_stats=pipe.corpus.stats,
        repeat_set=pipe.repeat_set,
        repeat_summary=pipe.repeat_summary(),
        entity_results=pipe.entity_summary(),
        graphs=graphs,
        patterns=seq,
    )


_COMMANDS = {
    "stats": cmd_stats,
    "repeats": cmd_repeats,
    "entities": cmd_entities,
    "graph": cmd_graph,
    "sequences": cmd_sequences,
    "all": cmd_all,
}


# argument parsing -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _selection(text: str) -> list:
    return [int(t) if t.isdigit() else t for t in _csv_list(text)]


def _gap(text: str) -> int | None:
    return None if text in ("none", "unbounded") else int(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("inputs and outputs")
    g.add_argument("--config", help="JSON config file (flags override it)")
    g.add_argument("--input", help="UTF-8 plain-text input")
    g.add_argument("--out", help="output directory (default: $REPETEXT_OUT or ./repetext_out)")
    g.add_argument("--gazetteer", help="JSON gazetteer file")
    g.add_argument("--labels", help='JSON {"entity canonical name": "component name"} map')
    g.add_argument("--top-k", type=int, dest="top_k")
    g.add_argument("-v", "--verbose", action="count", default=0)

    b = argparse.BooleanOptionalAction
    s = common.add_argument_group("analysis settings")
    s.add_argument("--case-fold", action=b, default=None, dest="case_fold")
    s.add_argument("--min-n", type=int, dest="min_n")
    s.add_argument("--max-n", type=int, dest="max_n")
    s.add_argument("--span-paragraphs", action=b, default=None, dest="span_paragraphs")
    s.add_argument("--count-overlapping", action=b, default=None, dest="count_overlapping")
    s.add_argument("--include-punct", action=b, default=None, dest="include_punct")
    s.add_argument("--strict-maximality", action=b, default=None, dest="strict_maximality")
    s.add_argument("--min-words", type=int, dest="min_words")
    s.add_argument("--case-sensitive", action=b, default=None, dest="case_sensitive")
    s.add_argument("--scope", choices=("repeats", "all"))
    s.add_argument("--fragment-only", action=b, default=None, dest="fragment_only")
    s.add_argument("--window", type=int)
    s.add_argument("--selected", type=_selection, help="comma-separated component names or 1-based numbers")
    s.add_argument("--max-gap", type=_gap, dest="max_gap")
    s.add_argument("--multi-policy", choices=MULTI_POLICIES, dest="multi_policy")
    s.add_argument("--max-pattern-len", type=int, dest="max_pattern_len")
    s.add_argument("--format", type=_csv_list, help="graph formats: dot,graphml,json")
    s.add_argument("--cell-width", type=int, dest="cell_width")
    s.add_argument("--strip-height", type=int, dest="strip_height")
    s.add_argument("--timestamp", action=b, default=None)

    parser = _Parser(prog="repetext", description="Repetition structure of paragraph-segmented texts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "stats": "corpus statistics",
        "repeats": "maximal repeated n-grams",
        "entities": "gazetteer mentions and candidate entities",
        "graph": "association graphs, components, pagerank",
        "sequences": "run patterns and band plot",
        "all": "full pipeline and report",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        cfg = resolve_config(args)
        pipe = Pipeline(cfg)
        doc = _COMMANDS[args.command](pipe)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(export.report_to_text(doc), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
