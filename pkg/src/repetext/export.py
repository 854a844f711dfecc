"""File outputs: graphs (DOT, GraphML, JSON), CSV/JSON tables, SVG band plots, reports.

Everything written here is byte-stable for identical inputs: orderings are
explicit, floats are formatted with fixed precision and no timestamps are
emitted unless asked for. Paragraph numbers in files are 1-based.
"""
from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .corpus import CorpusStats
from .entities import Gazetteer, Mention
from .errors import InputError, OutputError, ParameterError
from .networks import AssociationGraph, ComponentPartition
from .repeats import RepeatConfig, RepeatedPhrase, RepeatSet, Occurrence
from .sequences import BandSpec, PatternCounts

GRAPH_FORMATS = ("dot", "graphml", "json")
MIN_PENWIDTH = 1.0
MAX_PENWIDTH = 8.0

# Default palette, keyed by component display name.
DEFAULT_COLORS = {
    "Paris": "#00FFFF",
    "Homeric": "#FFC0CB",
    "Rome": "#0000FF",
    "Spanish": "#FF0000",
    "Gallery": "#008000",
}
FALLBACK_COLORS = ("#FFA500", "#800080", "#A52A2A", "#808000", "#008080", "#000080", "#808080")

_HEX = re.compile(r"^#[0-9A-Fa-f]{6}$")


@dataclass(frozen=True)
class ExportOptions:
    graph_formats: tuple[str, ...] = GRAPH_FORMATS
    color_map: Mapping[str, str] = field(default_factory=dict)
    width: int | None = None
    cell_width: int = 1
    strip_height: int = 60
    timestamp: bool = False

    def __post_init__(self):
        bad = [f for f in self.graph_formats if f not in GRAPH_FORMATS]
        if bad:
            raise ParameterError(f"unknown graph format(s) {bad}; choose from {GRAPH_FORMATS}")
        for name, colour in self.color_map.items():
            if not _HEX.match(colour):
                raise ParameterError(f"colour for {name!r} is not #RRGGBB: {colour!r}")
        if self.cell_width <= 0 or self.strip_height <= 0 or (self.width is not None and self.width <= 0):
            raise ParameterError("svg dimensions must be positive")


def write_atomic(path: str | Path, data: str) -> Path:
    """Write text to ``path`` via a temp file in the same directory and a rename."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path


def _num(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.3f}".rstrip("0").rstrip(".")


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# graphs ---------------------------------------------------------------------


def penwidths(graph: AssociationGraph) -> dict[tuple[int, int], float]:
    """Linear edge widths: lightest edge 1, heaviest 8, all 4 when weights are equal."""
    if not graph.edges:
        return {}
    lo, hi = min(graph.edges.values()), max(graph.edges.values())
    if lo == hi:
        return {e: 4.0 for e in graph.edges}
    span = MAX_PENWIDTH - MIN_PENWIDTH
    return {e: MIN_PENWIDTH + span * (w - lo) / (hi - lo) for e, w in graph.edges.items()}


def _labels_for(graph: AssociationGraph, labels: Mapping[int, str] | Gazetteer | None) -> dict[int, str]:
    if isinstance(labels, Gazetteer):
        return {v: labels[v].canonical for v in graph.nodes}
    labels = labels or {}
    return {v: labels.get(v, str(v)) for v in graph.nodes}


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(graph, partition=None, labels=None) -> str:
    names = _labels_for(graph, labels)
    widths = penwidths(graph)
    lines = [f"graph association_w{graph.window} {{"]
    for v in sorted(graph.nodes):
        attrs = [f"label={_dot_str(names[v])}"]
        if partition is not None:
            attrs.append(f"component={partition.node_to_component[v] + 1}")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for (a, b), w in sorted(graph.edges.items()):
        lines.append(f"  {a} -- {b} [weight={w}, penwidth={_num(widths[(a, b)])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_graphml(graph, partition=None, labels=None) -> str:
    names = _labels_for(graph, labels)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
        '  <key id="component" for="node" attr.name="component" attr.type="int"/>',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
        f'  <graph id="association_w{graph.window}" edgedefault="undirected">',
    ]
    for v in sorted(graph.nodes):
        out.append(f'    <node id="n{v}">')
        out.append(f'      <data key="label">{escape(names[v])}</data>')
        if partition is not None:
            out.append(f'      <data key="component">{partition.node_to_component[v] + 1}</data>')
        out.append("    </node>")
    for (a, b), w in sorted(graph.edges.items()):
        out.append(f'    <edge source="n{a}" target="n{b}">')
        out.append(f'      <data key="weight">{w}</data>')
        out.append("    </edge>")
    out += ["  </graph>", "</graphml>"]
    return "\n".join(out) + "\n"


def graph_to_json(graph, partition=None, labels=None) -> str:
    names = _labels_for(graph, labels)
    doc = {
        "window": graph.window,
        "paragraph_filter": graph.paragraph_filter,
        "nodes": [
            {
                "id": v,
                "label": names[v],
                "component": partition.node_to_component[v] + 1 if partition is not None else None,
            }
            for v in sorted(graph.nodes)
        ],
        "edges": [{"source": a, "target": b, "weight": w} for (a, b), w in sorted(graph.edges.items())],
    }
    return to_json(doc)


def graph_from_json(text: str) -> AssociationGraph:
    try:
        doc = json.loads(text)
        nodes = frozenset(int(n["id"]) for n in doc["nodes"])
        edges = {}
        for e in doc["edges"]:
            a, b = int(e["source"]), int(e["target"])
            edges[(min(a, b), max(a, b))] = int(e["weight"])
        return AssociationGraph(nodes, dict(sorted(edges.items())), int(doc["window"]), doc["paragraph_filter"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a graph document: {exc}") from None


GRAPH_WRITERS = {"dot": graph_to_dot, "graphml": graph_to_graphml, "json": graph_to_json}


def export_graph(
    graph: AssociationGraph,
    partition: ComponentPartition | None,
    labels: Mapping[int, str] | Gazetteer | None,
    fmt: str,
    path: str | Path,
) -> Path:
    if fmt not in GRAPH_WRITERS:
        raise ParameterError(f"unknown graph format {fmt!r}")
    return write_atomic(path, GRAPH_WRITERS[fmt](graph, partition, labels))


# tables ---------------------------------------------------------------------


def _occ_label(occ: Occurrence) -> str:
    return f"{occ.paragraph_idx + 1}:{occ.start_pos_in_paragraph}"


def repeats_to_csv(repeat_set: RepeatSet) -> str:
    rows = (
        (p.text, p.n, p.count, p.word_count, " ".join(_occ_label(o) for o in p.occurrences))
        for p in repeat_set.phrases
    )
    return to_csv(("phrase", "n", "count", "word_count", "occurrences"), rows)


def phrase_record(p: RepeatedPhrase) -> dict:
    return {
        "phrase": p.text,
        "tokens": list(p.tokens),
        "n": p.n,
        "count": p.count,
        "word_count": p.word_count,
        "occurrences": [
            {
                "paragraph": o.paragraph_idx + 1,
                "start": o.start_pos_in_paragraph,
                "global_start": o.global_start,
                "end_paragraph": o.end_paragraph_idx + 1,
                "global_end": o.global_end,
            }
            for o in p.occurrences
        ],
    }


def repeats_to_json(repeat_set: RepeatSet) -> str:
    doc = {
        "config": repeat_set.config.as_dict(),
        "pre_prune_count": repeat_set.pre_prune_count,
        "repeated_by_length": {str(k): v for k, v in sorted(repeat_set.repeated_by_length.items())},
        "phrase_count": len(repeat_set),
        "phrases": [phrase_record(p) for p in repeat_set.phrases],
    }
    return to_json(doc)


def repeats_from_json(text: str) -> RepeatSet:
    doc = json.loads(text)
    phrases = []
    for rec in doc["phrases"]:
        occs = tuple(
            Occurrence(
                global_start=o["global_start"],
                paragraph_idx=o["paragraph"] - 1,
                start_pos_in_paragraph=o["start"],
                end_paragraph_idx=o["end_paragraph"] - 1,
                global_end=o["global_end"],
            )
            for o in rec["occurrences"]
        )
        phrases.append(RepeatedPhrase(tuple(rec["tokens"]), occs, rec["word_count"]))
    by_length = {int(k): v for k, v in doc["repeated_by_length"].items()}
    return RepeatSet(tuple(phrases), RepeatConfig(**doc["config"]), by_length)


def mentions_to_csv(mentions: Sequence[Mention], gazetteer: Gazetteer) -> str:
    rows = (
        (m.entity_id, gazetteer[m.entity_id].canonical, m.paragraph_idx + 1, m.start, m.end)
        for m in sorted(mentions)
    )
    return to_csv(("entity_id", "canonical", "paragraph", "start", "end"), rows)


def candidates_to_csv(candidates: Sequence[tuple[tuple[str, ...], int]]) -> str:
    return to_csv(("candidate", "frequency"), ((" ".join(toks), f) for toks, f in candidates))


def components_to_csv(partition: ComponentPartition, names: Mapping[int, str], labels: Mapping[int, str]) -> str:
    rows = []
    for i, comp in enumerate(partition.components):
        for v in sorted(comp):
            rows.append((i + 1, names.get(i, ""), len(comp), v, labels.get(v, str(v))))
    return to_csv(("component", "name", "size", "entity_id", "entity"), rows)


def centrality_to_csv(
    degrees: Mapping[int, tuple[int, int]], ranks: Mapping[int, float], labels: Mapping[int, str]
) -> str:
    order = sorted(ranks, key=lambda v: (-round(ranks[v], 12), v))
    rows = ((v, labels.get(v, str(v)), degrees[v][0], degrees[v][1], f"{ranks[v]:.12f}") for v in order)
    return to_csv(("entity_id", "entity", "degree", "weighted_degree", "pagerank"), rows)


def pattern_name(pattern: Sequence[int], names: Mapping[int, str]) -> str:
    return ",".join(names.get(c, str(c)) for c in pattern)


def patterns_to_csv(counts: PatternCounts, names: Mapping[int, str]) -> str:
    rows = ((pattern_name(p, names), len(p), c) for p, c in counts.ranked())
    return to_csv(("pattern", "length", "count"), rows)


def patterns_to_json(counts: PatternCounts, names: Mapping[int, str], provenance: Mapping | None = None) -> str:
    doc = {
        "max_len": counts.max_len,
        "patterns": [{"pattern": pattern_name(p, names), "length": len(p), "count": c} for p, c in counts.ranked()],
    }
    if provenance:
        doc["provenance"] = dict(provenance)
    return to_json(doc)


# band plot ------------------------------------------------------------------


def band_to_svg(band: BandSpec, options: ExportOptions | None = None) -> str:
    """Render a band strip: one rect per paragraph, stacked sub-rects for multi-label cells."""
    options = options or ExportOptions()
    cw, sh = options.cell_width, options.strip_height
    n = len(band.cells)
    legend_row = 18
    strip_w = n * cw
    legend_w = sum(24 + 7 * len(name) for name, _ in band.legend)
    width = max(strip_w, legend_w, options.width or 0, 1)
    height = sh + 20 + legend_row + 4
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '  <g class="strip" shape-rendering="crispEdges">',
    ]
    for i, colours in enumerate(band.cells):
        x = i * cw
        if not colours:
            out.append(f'    <rect class="cell" x="{x}" y="0" width="{cw}" height="{sh}" fill="{band.background}"/>')
            continue
        part = sh / len(colours)
        for k, colour in enumerate(colours):
            out.append(
                f'    <rect class="cell" x="{x}" y="{_num(k * part)}" width="{cw}" '
                f'height="{_num(part)}" fill="{colour}"/>'
            )
    out.append("  </g>")
    if n:
        out.append(f'  <text x="0" y="{sh + 14}" font-size="10" font-family="sans-serif">1</text>')
        out.append(
            f'  <text x="{strip_w}" y="{sh + 14}" font-size="10" font-family="sans-serif" '
            f'text-anchor="end">{n}</text>'
        )
    out.append('  <g class="legend" font-size="11" font-family="sans-serif">')
    x = 0
    y = sh + 20
    for name, colour in band.legend:
        out.append(f'    <rect class="swatch" x="{x}" y="{y}" width="12" height="12" fill="{colour}" stroke="#000000"/>')
        out.append(f'    <text x="{x + 16}" y="{y + 10}">{escape(name)}</text>')
        x += 24 + 7 * len(name)
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_band_svg(band: BandSpec, options: ExportOptions | None, path: str | Path) -> Path:
    return write_atomic(path, band_to_svg(band, options))


def component_colors(
    components: Sequence[int], names: Mapping[int, str], color_map: Mapping[str, str] | None = None
) -> dict[int, str]:
    """Colour per component: explicit map by name, then the default palette, then fallbacks."""
    palette = {**DEFAULT_COLORS, **(color_map or {})}
    out = {}
    spare = iter(FALLBACK_COLORS * (1 + len(components) // len(FALLBACK_COLORS)))
    for comp in components:
        name = names.get(comp, str(comp))
        out[comp] = palette.get(name) or next(spare)
    return out


# report ---------------------------------------------------------------------


def build_report(
    provenance: Mapping[str, Any],
    corpus_stats: CorpusStats | None = None,
    repeat_set: RepeatSet | None = None,
    repeat_summary: Mapping[str, Any] | None = None,
    entity_results: Mapping[str, Any] | None = None,
    graphs: Mapping[str, Any] | None = None,
    patterns: Mapping[str, Any] | None = None,
) -> dict:
    """Assemble the summary document from whichever stages ran."""
    doc: dict[str, Any] = {"provenance": dict(provenance)}
    if corpus_stats is not None:
        doc["corpus"] = corpus_stats.as_dict()
    if repeat_set is not None:
        block = {
            "maximal_phrases": len(repeat_set),
            "repeated_before_pruning": repeat_set.pre_prune_count,
            "repeated_by_length": {str(k): v for k, v in sorted(repeat_set.repeated_by_length.items())},
        }
        block.update(repeat_summary or {})
        doc["repeats"] = block
    if entity_results is not None:
        doc["entities"] = dict(entity_results)
    if graphs is not None:
        doc["networks"] = dict(graphs)
    if patterns is not None:
        doc["sequences"] = dict(patterns)
    return doc


def report_to_text(doc: Mapping[str, Any]) -> str:
    lines = ["repetext report", "==============="]
    corpus = doc.get("corpus")
    if corpus:
        lines += [
            "",
            "Corpus",
            f"  paragraphs: {corpus['paragraph_count']}",
            f"  sentences:  {corpus['sentence_count']}",
            f"  words:      {corpus['word_count']}",
            f"  tokens:     {corpus['token_count']}",
        ]
    rep = doc.get("repeats")
    if rep:
        lines += [
            "",
            "Repeated phrases",
            f"  maximal repeated phrases: {rep['maximal_phrases']}",
            f"  repeated n-grams before pruning: {rep['repeated_before_pruning']}",
        ]
        if "paragraphs_with_repeats" in rep:
            lines.append(
                f"  paragraphs with a repeat of more than {rep['min_words']} words: {rep['paragraphs_with_repeats']}"
            )
        for title, key in (("longest", "top_by_length"), ("most frequent", "top_by_frequency")):
            if rep.get(key):
                lines.append(f"  {title}:")
                lines += [f"    {r['count']:>4}  n={r['n']:<3} {r['phrase']}" for r in rep[key]]
    ent = doc.get("entities")
    if ent:
        lines += [
            "",
            "Entities",
            f"  gazetteer entities: {ent['gazetteer_size']}",
            f"  mentions: {ent['mention_count']}",
            f"  distinct entities mentioned: {ent['unique_entities']}",
            f"  entities in repeat-bearing paragraphs: {ent['entities_in_repeats']}"
            f" (over {ent['paragraphs_in_repeats']} paragraphs)",
        ]
    nets = doc.get("networks")
    if nets:
        lines += ["", "Networks"]
        for key in sorted(k for k in nets if k.startswith("window_")):
            g = nets[key]
            sizes = ", ".join(str(s) for s in g["component_sizes"][:10])
            lines.append(
                f"  {key}: {g['nodes']} nodes, {g['edges']} edges, "
                f"{g['multi_node_components']} multi-node components (sizes {sizes})"
            )
            if g.get("top_pagerank"):
                top = ", ".join(f"{r['entity']} {r['pagerank']:.4f}" for r in g["top_pagerank"][:5])
                lines.append(f"    top pagerank: {top}")
        cmp_ = nets.get("comparison")
        if cmp_:
            lines.append(
                f"  widening to window 1: {len(cmp_['new_edges'])} new edges, "
                f"{len(cmp_['merged'])} merged groups, bridges: {', '.join(cmp_['bridges']) or 'none'}"
            )
    seq = doc.get("sequences")
    if seq:
        lines += ["", "Sequences", f"  runs: {seq['run_count']} in {seq['segment_count']} segments"]
        for rec in seq.get("patterns", [])[:20]:
            lines.append(f"    <{rec['pattern']}>  {rec['count']}")
    lines += ["", "Provenance", to_json(doc["provenance"]).rstrip()]
    return "\n".join(lines) + "\n"


def export_report(doc: Mapping[str, Any], json_path: str | Path, text_path: str | Path) -> tuple[Path, Path]:
    return write_atomic(json_path, to_json(doc)), write_atomic(text_path, report_to_text(doc))
