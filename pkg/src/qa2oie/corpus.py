"""Corpus serialization: canonical JSONL plus parallel text for training.

corpus.jsonl is the canonical record stream; src.txt/tgt.txt are the
line-parallel training view, where each target linearizes a tuple as
"<sub> subject <rel> relation <obj> object". A literal '<' inside a slot
is escaped as '&lt;' so the three markers stay unambiguous. stats.json
summarizes what was written and what was dropped along the way.
"""

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .alignment import AlignedExample
from .errors import DataError
from .rules import Extraction

__all__ = [
    "CorpusStats",
    "DROP_CAUSES",
    "format_target",
    "escape_slot",
    "unescape_slot",
    "write_corpus",
    "read_corpus",
    "split_validation",
]

DROP_CAUSES = ("reader_dropped", "no_parse", "too_long", "no_rule")

_RECORD_FIELDS = (
    "qa_id",
    "source",
    "sentence",
    "subject",
    "relation",
    "object",
    "rule_id",
    "sentence_index",
    "flags",
)


@dataclass
class CorpusStats:
    """Counts for one written corpus, Table-style per source plus drops."""

    sentences_by_source: dict[str, int] = field(default_factory=dict)
    tuples_by_source: dict[str, int] = field(default_factory=dict)
    validation_tuples: int = 0
    drops: dict[str, int] = field(default_factory=dict)

    @property
    def total_sentences(self) -> int:
        return sum(self.sentences_by_source.values())

    @property
    def total_tuples(self) -> int:
        return sum(self.tuples_by_source.values())

    @property
    def input_pairs(self) -> int:
        return self.total_tuples + self.validation_tuples + sum(self.drops.values())

    def to_dict(self) -> dict:
        return {
            "sentences_by_source": dict(sorted(self.sentences_by_source.items())),
            "tuples_by_source": dict(sorted(self.tuples_by_source.items())),
            "total_sentences": self.total_sentences,
            "total_tuples": self.total_tuples,
            "validation_tuples": self.validation_tuples,
            "drops": dict(sorted(self.drops.items())),
            "input_pairs": self.input_pairs,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "CorpusStats":
        return cls(
            sentences_by_source=dict(doc.get("sentences_by_source", {})),
            tuples_by_source=dict(doc.get("tuples_by_source", {})),
            validation_tuples=int(doc.get("validation_tuples", 0)),
            drops=dict(doc.get("drops", {})),
        )


def escape_slot(text: str) -> str:
    return text.replace("<", "&lt;")


def unescape_slot(text: str) -> str:
    return text.replace("&lt;", "<")


def format_target(extraction: Extraction) -> str:
    return (
        f"<sub> {escape_slot(extraction.subject)}"
        f" <rel> {escape_slot(extraction.relation)}"
        f" <obj> {escape_slot(extraction.object)}"
    )


def _record(example: AlignedExample) -> dict:
    ext = example.extraction
    return {
        "qa_id": example.qa_id,
        "source": example.source,
        "sentence": example.sentence,
        "subject": ext.subject,
        "relation": ext.relation,
        "object": ext.object,
        "rule_id": ext.rule_id,
        "sentence_index": example.sentence_index,
        "flags": list(example.flags),
    }


def _write_lines(path: Path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in lines:
            handle.write(line + "\n")


def write_corpus(
    examples: Sequence[AlignedExample],
    out_dir: str | Path,
    drops: Mapping[str, int] | None = None,
    validation: Sequence[AlignedExample] = (),
) -> CorpusStats:
    """Write corpus.jsonl, src.txt, tgt.txt, and stats.json into out_dir.

    Output order follows input order exactly. When a validation split is
    given it goes to validation.jsonl plus src.valid.txt/tgt.valid.txt.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_lines(out / "corpus.jsonl", (json.dumps(_record(ex), ensure_ascii=False) for ex in examples))
    _write_lines(out / "src.txt", (ex.sentence for ex in examples))
    _write_lines(out / "tgt.txt", (format_target(ex.extraction) for ex in examples))
    if validation:
        _write_lines(
            out / "validation.jsonl", (json.dumps(_record(ex), ensure_ascii=False) for ex in validation)
        )
        _write_lines(out / "src.valid.txt", (ex.sentence for ex in validation))
        _write_lines(out / "tgt.valid.txt", (format_target(ex.extraction) for ex in validation))

    stats = CorpusStats(validation_tuples=len(validation))
    seen: dict[str, set[str]] = {}
    for ex in examples:
        stats.tuples_by_source[ex.source] = stats.tuples_by_source.get(ex.source, 0) + 1
        seen.setdefault(ex.source, set()).add(ex.sentence)
    # the sentence inventory covers the whole corpus, held-out tuples included
    for ex in validation:
        seen.setdefault(ex.source, set()).add(ex.sentence)
    stats.sentences_by_source = {source: len(sents) for source, sents in seen.items()}
    stats.drops = {cause: 0 for cause in DROP_CAUSES}
    for cause, count in (drops or {}).items():
        stats.drops[cause] = stats.drops.get(cause, 0) + count

    with open(out / "stats.json", "w", encoding="utf-8", newline="\n") as handle:
        json.dump(stats.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")
    return stats


def read_corpus(path: str | Path) -> list[AlignedExample]:
    """Reload corpus.jsonl records as AlignedExample values."""
    examples: list[AlignedExample] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: bad JSON record: {exc}") from None
            missing = [key for key in _RECORD_FIELDS if key not in doc]
            if missing:
                raise DataError(f"{path}:{lineno}: record missing fields {missing}")
            examples.append(
                AlignedExample(
                    sentence=doc["sentence"],
                    extraction=Extraction(
                        subject=doc["subject"],
                        relation=doc["relation"],
                        object=doc["object"],
                        rule_id=doc["rule_id"],
                    ),
                    qa_id=doc["qa_id"],
                    sentence_index=doc["sentence_index"],
                    source=doc["source"],
                    flags=tuple(doc["flags"]),
                )
            )
    return examples


def split_validation(
    examples: Sequence[AlignedExample], n: int, seed: int
) -> tuple[list[AlignedExample], list[AlignedExample]]:
    """Split off n uniformly sampled validation examples, seeded.

    Both halves keep their original relative order and are disjoint.
    """
    if n < 0:
        raise DataError(f"validation size must be non-negative, got {n}")
    if n > len(examples):
        raise DataError(f"validation size {n} exceeds corpus size {len(examples)}")
    picked = set(random.Random(seed).sample(range(len(examples)), n))
    train = [ex for i, ex in enumerate(examples) if i not in picked]
    validation = [ex for i, ex in enumerate(examples) if i in picked]
    return train, validation
