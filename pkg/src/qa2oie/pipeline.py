"""End-to-end conversion: QA pairs + parses -> aligned training examples.

Conversion of a single pair is pure, so the fan-out across worker
threads only changes wall time; the sink preserves input order and the
output is identical for any job count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Mapping, Sequence

from .alignment import AlignedExample, align
from .conllu import DepTree
from .corpus import DROP_CAUSES
from .qa_readers import QAPair
from .questions import DEFAULT_MAX_QUESTION_CHARS, classify
from .rules import DEFAULT_REGISTRY, RuleSpec, apply_rules

__all__ = ["convert_pair", "convert_pairs"]


def convert_pair(
    qa: QAPair,
    tree: DepTree | None,
    registry: tuple[RuleSpec, ...] = DEFAULT_REGISTRY,
    max_question_chars: int = DEFAULT_MAX_QUESTION_CHARS,
) -> tuple[AlignedExample | None, str | None]:
    """Convert one pair; returns (example, None) or (None, drop_cause)."""
    if tree is None:
        return None, "no_parse"
    qtype = classify(tree, max_question_chars)
    if not qtype.length_ok:
        return None, "too_long"
    extraction = apply_rules(tree, qa.answer, qtype, registry)
    if extraction is None:
        return None, "no_rule"
    return align(extraction, qa), None


def convert_pairs(
    pairs: Sequence[QAPair],
    trees_by_id: Mapping[str, DepTree],
    registry: tuple[RuleSpec, ...] = DEFAULT_REGISTRY,
    max_question_chars: int = DEFAULT_MAX_QUESTION_CHARS,
    jobs: int = 1,
) -> tuple[list[AlignedExample], dict[str, int]]:
    """Convert every pair, preserving order; returns (examples, drop counts)."""

    def one(qa: QAPair) -> tuple[AlignedExample | None, str | None]:
        return convert_pair(qa, trees_by_id.get(qa.id), registry, max_question_chars)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, pairs))
    else:
        results = [one(qa) for qa in pairs]

    examples: list[AlignedExample] = []
    drops = {cause: 0 for cause in DROP_CAUSES}
    for example, cause in results:
        if example is not None:
            examples.append(example)
        else:
            drops[cause] = drops.get(cause, 0) + 1
    return examples, drops
