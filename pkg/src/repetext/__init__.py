"""Repeated-phrase mining and entity-network analysis for a single literary text."""
from .corpus import Corpus, TokenizeOptions, load_corpus, load_corpus_file
from .entities import build_gazetteer, find_mentions, load_gazetteer
from .networks import build_graph, connected_components, pagerank, subgraph_window_comparison
from .repeats import RepeatConfig, extract_repeats, oracle_repeats
from .sequences import compress_runs, count_patterns, label_paragraphs

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "RepeatConfig",
    "TokenizeOptions",
    "build_gazetteer",
    "build_graph",
    "compress_runs",
    "connected_components",
    "count_patterns",
    "extract_repeats",
    "find_mentions",
    "label_paragraphs",
    "load_corpus",
    "load_corpus_file",
    "load_gazetteer",
    "oracle_repeats",
    "pagerank",
    "subgraph_window_comparison",
]
