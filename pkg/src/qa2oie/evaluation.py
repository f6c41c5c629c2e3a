"""Precision/recall evaluation of scored extractions against a gold set.

Predictions are ranked by confidence and greedily matched one-to-one
against unmatched gold tuples from the same sentence; each distinct
confidence value then yields one PR point (cutoff = keep predictions
with confidence >= value). The area under the curve integrates
precision over recall with an implicit (recall 0, precision 1) anchor.
"""

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .embeddings import EmbeddingTable
from .errors import DataError
from .matching import MatchConfig, tuple_match
from .rules import Extraction

__all__ = [
    "GoldSet",
    "PRPoint",
    "ScoredPrediction",
    "load_gold",
    "load_predictions",
    "evaluate",
    "area_under_pr",
    "write_pr_csv",
    "PR_CSV_HEADER",
]

PR_CSV_HEADER = ("cutoff", "precision", "recall", "matched", "predicted")

# (sentence, extraction) with a confidence on the extraction
ScoredPrediction = tuple[str, Extraction]


@dataclass(frozen=True, slots=True)
class PRPoint:
    confidence_cutoff: float
    precision: float
    recall: float
    matched: int
    predicted: int


class GoldSet:
    """Gold tuples keyed by their source sentence."""

    def __init__(self, records: Iterable[tuple[str, Extraction]]):
        self.records: list[tuple[str, Extraction]] = list(records)
        for sentence, ext in self.records:
            if not sentence or not (ext.subject and ext.relation and ext.object):
                raise DataError("gold records must have a sentence and three non-empty slots")
        self.by_sentence: dict[str, list[int]] = {}
        for i, (sentence, _) in enumerate(self.records):
            self.by_sentence.setdefault(sentence, []).append(i)

    def __len__(self) -> int:
        return len(self.records)


def _rows(source: str | IO[str] | Iterable[str]) -> Iterable[tuple[int, str]]:
    lines = source.splitlines() if isinstance(source, str) else source
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.strip():
            yield lineno, line


def load_gold(source: str | IO[str] | Iterable[str]) -> GoldSet:
    """Read gold TSV rows: sentence <tab> subject <tab> relation <tab> object."""
    records = []
    for lineno, line in _rows(source):
        cols = line.split("\t")
        if len(cols) != 4:
            raise DataError(f"gold row {lineno}: expected 4 tab-separated columns, got {len(cols)}")
        records.append((cols[0], Extraction(subject=cols[1], relation=cols[2], object=cols[3])))
    return GoldSet(records)


def load_predictions(source: str | IO[str] | Iterable[str]) -> list[ScoredPrediction]:
    """Read prediction TSV rows: sentence, subject, relation, object, confidence."""
    preds: list[ScoredPrediction] = []
    for lineno, line in _rows(source):
        cols = line.split("\t")
        if len(cols) != 5:
            raise DataError(
                f"prediction row {lineno}: expected 5 tab-separated columns, got {len(cols)}"
            )
        try:
            confidence = float(cols[4])
        except ValueError:
            raise DataError(f"prediction row {lineno}: bad confidence {cols[4]!r}") from None
        preds.append(
            (cols[0], Extraction(subject=cols[1], relation=cols[2], object=cols[3], confidence=confidence))
        )
    return preds


def evaluate(
    predictions: Sequence[ScoredPrediction],
    gold: GoldSet,
    table: EmbeddingTable,
    config: MatchConfig = MatchConfig(),
) -> list[PRPoint]:
    """PR points at every distinct confidence cutoff, descending.

    Matching is greedy in confidence order (stable for ties): each
    prediction may consume the single unmatched gold tuple from its
    sentence that passes the slot match with the highest minimum
    similarity. Greedy order makes every cutoff's assignment the prefix
    of the full one, so recall cannot increase with the cutoff.
    """
    if len(gold) == 0:
        raise DataError("gold set is empty")
    for _, ext in predictions:
        if ext.confidence is None or math.isnan(ext.confidence):
            raise DataError("every prediction needs a finite confidence")

    order = sorted(range(len(predictions)), key=lambda i: -predictions[i][1].confidence)
    consumed = [False] * len(gold)
    matched_flags = [False] * len(predictions)
    for i in order:
        sentence, pred = predictions[i]
        best_gold = None
        best_min = -1.0
        for gi in gold.by_sentence.get(sentence, ()):
            if consumed[gi]:
                continue
            ok, sims = tuple_match(pred, gold.records[gi][1], table, config)
            if ok and min(sims) > best_min:
                best_gold = gi
                best_min = min(sims)
        if best_gold is not None:
            consumed[best_gold] = True
            matched_flags[i] = True

    points: list[PRPoint] = []
    kept = 0
    matched = 0
    position = 0
    ranked = [predictions[i] for i in order]
    flags = [matched_flags[i] for i in order]
    while position < len(ranked):
        cutoff = ranked[position][1].confidence
        while position < len(ranked) and ranked[position][1].confidence == cutoff:
            kept += 1
            matched += int(flags[position])
            position += 1
        points.append(
            PRPoint(
                confidence_cutoff=cutoff,
                precision=matched / kept if kept else 1.0,
                recall=matched / len(gold),
                matched=matched,
                predicted=kept,
            )
        )
    return points


def area_under_pr(points: Sequence[PRPoint]) -> float:
    """Trapezoidal area under the PR points over recall, clamped to [0, 1].

    An implicit (recall 0, precision 1) anchor closes the curve on the
    left, so a single perfect point still integrates to 1.0.
    """
    if not points:
        raise DataError("cannot integrate an empty PR curve")
    curve = sorted(((p.recall, p.precision) for p in points))
    if curve[0][0] > 0.0:
        curve.insert(0, (0.0, 1.0))
    area = 0.0
    for (r0, p0), (r1, p1) in zip(curve, curve[1:]):
        area += (r1 - r0) * (p0 + p1) / 2.0
    return max(0.0, min(1.0, area))


def write_pr_csv(points: Sequence[PRPoint], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(PR_CSV_HEADER)
    for p in points:
        writer.writerow(
            (f"{p.confidence_cutoff:g}", f"{p.precision:.6f}", f"{p.recall:.6f}", p.matched, p.predicted)
        )
