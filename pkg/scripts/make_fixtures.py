"""Regenerate the synthetic mini-novel fixture used by the tests."""
import argparse
import json
from pathlib import Path

from repetext.synthetic import mini_gazetteer, mini_labels, mini_novel


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "tests" / "fixtures", type=Path)
    ap.add_argument("--paragraphs", type=int, default=400)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "mini_novel.txt").write_text(mini_novel(args.paragraphs, args.seed), encoding="utf-8")
    (args.out / "mini_gazetteer.json").write_text(json.dumps(mini_gazetteer(), indent=2) + "\n", encoding="utf-8")
    (args.out / "mini_labels.json").write_text(json.dumps(mini_labels(), indent=2) + "\n", encoding="utf-8")
    print(f"wrote fixtures to {args.out}")


if __name__ == "__main__":
    main()
