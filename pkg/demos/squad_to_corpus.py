"""Convert a small SQuAD slice into an implicit-tuple training corpus.

Walks the library's whole conversion path on checked-in fixtures: read
QA pairs, pair them with their dependency parses, run the rule cascade,
and write corpus.jsonl / src.txt / tgt.txt plus a drop report into a
scratch directory.

Run from the repository root:

    python demos/squad_to_corpus.py
"""

import tempfile
from pathlib import Path

from qa2oie import convert_pairs, parse_conllu, read_squad, split_validation, write_corpus

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main() -> None:
    pairs, dropped = read_squad((DATA / "squad_mini.json").read_text())
    print(f"read {len(pairs)} QA pairs ({dropped} unusable rows dropped by the reader)")

    trees = {tree.sent_id: tree for tree in parse_conllu((DATA / "squad_questions.conllu").read_text())}
    examples, drops = convert_pairs(pairs, trees)
    print(f"converted {len(examples)} pairs into tuples; drop causes: {drops}")

    train, validation = split_validation(examples, n=2, seed=13)
    out_dir = Path(tempfile.mkdtemp(prefix="qa2oie-demo-"))
    stats = write_corpus(train, out_dir, drops=drops, validation=validation)
    print(f"wrote {sorted(p.name for p in out_dir.iterdir())} to {out_dir}")
    print(f"tuples per source: {stats.tuples_by_source}")

    src_lines = (out_dir / "src.txt").read_text().splitlines()
    tgt_lines = (out_dir / "tgt.txt").read_text().splitlines()
    print("\nfirst aligned pair:")
    print(f"  src: {src_lines[0]}")
    print(f"  tgt: {tgt_lines[0]}")


if __name__ == "__main__":
    main()
