"""Entity association graphs built from paragraph co-mentions.

Window 0 links two entities for every paragraph in which both are
mentioned. Window 1 also links an entity in paragraph p with one in
p + 1. Each paragraph index p adds at most 1 to a pair's weight, so the
window-1 weights dominate the window-0 weights edge by edge.
"""
from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping

from .entities import Gazetteer, Mention
from .errors import ParameterError

log = logging.getLogger(__name__)

Pair = tuple[int, int]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class AssociationGraph:
    nodes: frozenset[int]
    edges: Mapping[Pair, int]
    window: int
    paragraph_filter: str = "all"

    def __post_init__(self):
        for (a, b), w in self.edges.items():
            if a >= b or w < 1 or a not in self.nodes or b not in self.nodes:
                raise ParameterError(f"bad edge {(a, b)} with weight {w}")

    def weight(self, a: int, b: int) -> int:
        return self.edges.get(_pair(a, b), 0)

    def adjacency(self) -> dict[int, dict[int, int]]:
        adj: dict[int, dict[int, int]] = {v: {} for v in sorted(self.nodes)}
        for (a, b), w in sorted(self.edges.items()):
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def __len__(self) -> int:
        return len(self.nodes)


def build_graph(
    mentions: Iterable[Mention],
    paragraph_set: Collection[int] | None = None,
    window: int = 0,
    paragraph_filter: str | None = None,
) -> AssociationGraph:
    """Count co-mentions of entities within ``window`` paragraphs.

    ``paragraph_set=None`` uses every paragraph. Mentions outside the set
    are ignored, and a window-1 link from p to p + 1 requires both to be
    in the set.
    """
    if window not in (0, 1):
        raise ParameterError(f"window must be 0 or 1, got {window!r}")
    allowed = None if paragraph_set is None else frozenset(paragraph_set)
    by_para: dict[int, set[int]] = defaultdict(set)
    for m in mentions:
        if allowed is None or m.paragraph_idx in allowed:
            by_para[m.paragraph_idx].add(m.entity_id)

    weights: dict[Pair, int] = defaultdict(int)
    for p in sorted(by_para):
        here = by_para[p]
        pairs = {_pair(a, b) for a, b in itertools.combinations(here, 2)}
        if window == 1 and (allowed is None or p + 1 in allowed):
            nxt = by_para.get(p + 1, ())
            pairs.update(_pair(a, b) for a in here for b in nxt if a != b)
        for pr in pairs:
            weights[pr] += 1

    nodes = frozenset(e for ents in by_para.values() for e in ents)
    if paragraph_filter is None:
        paragraph_filter = "all" if allowed is None else f"{len(allowed)} paragraphs"
    return AssociationGraph(nodes, dict(sorted(weights.items())), window, paragraph_filter)


@dataclass(frozen=True)
class ComponentPartition:
    components: tuple[frozenset[int], ...]
    node_to_component: Mapping[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.components)

    def multi_node(self) -> list[int]:
        return [i for i, c in enumerate(self.components) if len(c) > 1]


def _components_of(nodes: Iterable[int], adj: Mapping[int, Mapping[int, int]]) -> list[set[int]]:
    allowed = set(nodes)
    seen: set[int] = set()
    comps = []
    for start in sorted(allowed):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            for u in adj.get(stack.pop(), ()):
                if u in allowed and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def connected_components(graph: AssociationGraph) -> ComponentPartition:
    comps = _components_of(graph.nodes, graph.adjacency())
    ordered = tuple(frozenset(c) for c in sorted(comps, key=lambda c: (-len(c), min(c))))
    lookup = {v: i for i, c in enumerate(ordered) for v in c}
    return ComponentPartition(ordered, lookup)


def degree_weights(graph: AssociationGraph) -> dict[int, tuple[int, int]]:
    return {v: (len(nb), sum(nb.values())) for v, nb in graph.adjacency().items()}


def pagerank(
    graph: AssociationGraph,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 1000,
) -> dict[int, float]:
    """Weighted PageRank; each undirected edge is two arcs, isolated nodes spread uniformly."""
    if not graph.nodes:
        raise ParameterError("pagerank of an empty graph")
    if not 0.0 <= damping <= 1.0:
        raise ParameterError(f"damping must be in [0, 1], got {damping}")
    adj = graph.adjacency()
    order = list(adj)
    size = len(order)
    out_w = {v: sum(nb.values()) for v, nb in adj.items()}
    dangling = [v for v in order if out_w[v] == 0]
    rank = {v: 1.0 / size for v in order}
    for _ in range(max_iter):
        leak = damping * sum(rank[v] for v in dangling) / size
        base = (1.0 - damping) / size + leak
        new = {}
        for v in order:
            s = 0.0
            for u, w in adj[v].items():
                s += rank[u] * w / out_w[u]
            new[v] = base + damping * s
        delta = sum(abs(new[v] - rank[v]) for v in order)
        rank = new
        if delta < tol:
            break
    else:
        log.warning("pagerank did not converge in %d iterations", max_iter)
    total = sum(rank.values())
    return {v: r / total for v, r in rank.items()}


@dataclass(frozen=True)
class WindowComparison:
    edges_subset: bool
    new_edges: tuple[Pair, ...]
    weight_deltas: Mapping[Pair, tuple[int, int]]
    merged: tuple[tuple[int, ...], ...]  # window-0 component ids joined in one window-1 component
    newly_connected: tuple[tuple[int, int], ...]
    bridges: tuple[int, ...]


def subgraph_window_comparison(
    g0: AssociationGraph, g1: AssociationGraph, min_component_size: int = 2
) -> WindowComparison:
    """Compare a same-paragraph graph with its one-paragraph-wider counterpart.

    Only window-0 components with at least ``min_component_size`` nodes
    take part in the merge and bridge analysis. A bridge is a node whose
    removal from the window-1 graph separates two of those components
    again.
    """
    if g0.window != 0 or g1.window != 1:
        raise ParameterError("expected a window-0 graph and a window-1 graph")
    if g0.nodes != g1.nodes or g0.paragraph_filter != g1.paragraph_filter:
        raise ParameterError("graphs were not built from the same mentions and paragraph set")

    subset = all(g1.weight(a, b) >= w for (a, b), w in g0.edges.items())
    new_edges = tuple(p for p in g1.edges if p not in g0.edges)
    deltas = {p: (g0.edges.get(p, 0), w) for p, w in g1.edges.items() if g0.edges.get(p, 0) != w}

    part0 = connected_components(g0)
    part1 = connected_components(g1)
    tracked = {i for i, c in enumerate(part0.components) if len(c) >= min_component_size}
    merged = []
    merged_hosts = []
    for comp in part1.components:
        inside = sorted({part0.node_to_component[v] for v in comp} & tracked)
        if len(inside) >= 2:
            merged.append(tuple(inside))
            merged_hosts.append(comp)
    pairs = tuple(p for group in merged for p in itertools.combinations(group, 2))

    adj1 = g1.adjacency()
    bridges = []
    for comp in merged_hosts:
        for v in sorted(comp):
            pieces = _components_of(comp - {v}, adj1)
            touched = [{part0.node_to_component[u] for u in piece} & tracked for piece in pieces]
            touched = [t for t in touched if t]
            # two pieces holding tracked nodes, and more than one tracked component overall
            if len(touched) >= 2 and len(set().union(*touched)) >= 2:
                bridges.append(v)
    return WindowComparison(subset, new_edges, deltas, tuple(merged), pairs, tuple(sorted(bridges)))


def name_components(
    partition: ComponentPartition,
    gazetteer: Gazetteer,
    labels: Mapping[str, str] | None = None,
) -> dict[int, str]:
    """Display names for components from a ``{canonical entity: name}`` map.

    A component holding several labelled entities with different names
    (networks merged by a wider window) gets the names joined with "+",
    in label-file order. Unlabelled components are ``component-<k>`` (1-based).
    """
    assigned: dict[int, list[str]] = defaultdict(list)
    for canonical, display in (labels or {}).items():
        try:
            ent = gazetteer.by_canonical(canonical)
        except KeyError:
            raise ParameterError(f"labels file names unknown entity {canonical!r}") from None
        comp = partition.node_to_component.get(ent.id)
        if comp is None:
            log.info("labelled entity %r is not in the graph", canonical)
        elif display not in assigned[comp]:
            assigned[comp].append(display)
    return {
        i: "+".join(assigned[i]) if assigned.get(i) else f"component-{i + 1}" for i in range(len(partition))
    }
