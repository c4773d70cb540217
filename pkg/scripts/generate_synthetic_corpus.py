#!/usr/bin/env python3
"""Regenerate the bundled synthetic corpora under data/.

Outputs:
  data/synthetic_comments_1k.jsonl   pipeline demo corpus (1,000 comments)
  data/synthetic_comments_3k.jsonl   client-scaling corpus (3,000 comments)
  data/planted_topics.jsonl          40-doc two-topic corpus for LDA checks

All three are deterministic for a fixed seed; rerunning this script must
leave the files byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fedsent import synth  # noqa: E402


def write_jsonl(path: Path, records) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"wrote {len(records):>5} records -> {path}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=None, help="default: <repo>/data")
    parser.add_argument("--seed", type=int, default=20220901)
    args = parser.parse_args()

    out_dir = Path(args.out_dir) if args.out_dir else Path(__file__).resolve().parents[1] / "data"

    write_jsonl(out_dir / "synthetic_comments_1k.jsonl", synth.generate_corpus(1000, seed=args.seed))
    write_jsonl(out_dir / "synthetic_comments_3k.jsonl", synth.generate_corpus(3000, seed=args.seed + 1))
    planted = [c.to_json() for c in synth.planted_topics_corpus(n_docs=40, tokens_per_doc=25, seed=7)]
    write_jsonl(out_dir / "planted_topics.jsonl", planted)
    return 0


if __name__ == "__main__":
    sys.exit(main())
