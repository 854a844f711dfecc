"""Compare maximal-repeat counts under every combination of the repeat settings.

Useful for seeing how much the headline phrase count depends on choices
the analysis has to make: paragraph spanning, overlap counting,
punctuation and the maximality rule.
"""
import argparse
import itertools

from repetext.corpus import load_corpus, load_corpus_file
from repetext.repeats import RepeatConfig, extract_repeats, paragraphs_with_repeats
from repetext.synthetic import mini_novel

FLAGS = ("span_paragraphs", "count_overlapping", "include_punct", "strict_maximality")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", help="plain-text file (default: synthetic mini-novel)")
    ap.add_argument("--min-words", type=int, default=3)
    args = ap.parse_args()
    corpus = load_corpus_file(args.input) if args.input else load_corpus(mini_novel())
    print(f"{corpus.stats.token_count} tokens, {corpus.stats.paragraph_count} paragraphs")
    print(" ".join(f"{f[:8]:>8}" for f in FLAGS), f"{'maximal':>8} {'repeated':>9} {'paras':>6}")
    for values in itertools.product((False, True), repeat=len(FLAGS)):
        cfg = RepeatConfig(**dict(zip(FLAGS, values)))
        rs = extract_repeats(corpus, cfg)
        paras = len(paragraphs_with_repeats(rs, args.min_words))
        print(" ".join(f"{str(v):>8}" for v in values), f"{len(rs):>8} {rs.pre_prune_count:>9} {paras:>6}")


if __name__ == "__main__":
    main()
