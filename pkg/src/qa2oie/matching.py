"""Slot-wise embedding match between a predicted and a gold tuple.

Two tuples match when every slot's bag-of-words cosine clears the
threshold; the weakest slot decides. The comparison is strictly
greater-than, so a zero-vector slot (all words unknown) can never match
at any non-negative threshold.
"""

from dataclasses import dataclass

from .embeddings import EmbeddingTable, bow_embed, cosine
from .rules import Extraction

__all__ = ["MatchConfig", "DEFAULT_THRESHOLD", "tuple_match", "slot_similarities"]

DEFAULT_THRESHOLD = 0.70


@dataclass(frozen=True, slots=True)
class MatchConfig:
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be within [0, 1], got {self.threshold}")


def slot_similarities(
    pred: Extraction, gold: Extraction, table: EmbeddingTable
) -> tuple[float, float, float]:
    """(subject, relation, object) cosine similarities."""
    return (
        cosine(bow_embed(pred.subject, table)[0], bow_embed(gold.subject, table)[0]),
        cosine(bow_embed(pred.relation, table)[0], bow_embed(gold.relation, table)[0]),
        cosine(bow_embed(pred.object, table)[0], bow_embed(gold.object, table)[0]),
    )


def tuple_match(
    pred: Extraction,
    gold: Extraction,
    table: EmbeddingTable,
    config: MatchConfig = MatchConfig(),
) -> tuple[bool, tuple[float, float, float]]:
    """Whether pred matches gold, with the per-slot similarities."""
    sims = slot_similarities(pred, gold, table)
    return min(sims) > config.threshold, sims
