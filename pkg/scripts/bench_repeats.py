"""Time repeat extraction (and the naive oracle, where allowed) on synthetic texts of growing size."""
import argparse
import time

from repetext.corpus import load_corpus
from repetext.repeats import ORACLE_TOKEN_LIMIT, RepeatConfig, extract_repeats, oracle_repeats
from repetext.synthetic import mini_novel


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="100,400,1000,2000,4600", help="paragraph counts")
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--span-paragraphs", action="store_true")
    args = ap.parse_args()
    cfg = RepeatConfig(span_paragraphs=args.span_paragraphs)

    print(f"{'paragraphs':>10} {'tokens':>8} {'phrases':>8} {'fast s':>8} {'oracle s':>9}")
    for n in (int(s) for s in args.sizes.split(",")):
        corpus = load_corpus(mini_novel(n, args.seed))
        rs, fast = timed(extract_repeats, corpus, cfg)
        slow = "-"
        if corpus.stats.token_count <= ORACLE_TOKEN_LIMIT:
            ref, t = timed(oracle_repeats, corpus, cfg)
            assert ref == rs, "fast path and oracle disagree"
            slow = f"{t:.3f}"
        print(f"{n:>10} {corpus.stats.token_count:>8} {len(rs):>8} {fast:>8.3f} {slow:>9}")


if __name__ == "__main__":
    main()
