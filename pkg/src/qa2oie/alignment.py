"""Pair an extraction with the passage sentence that contains its answer.

Sentence segmentation is deliberately naive: periods delimit sentences
and attach to the one before them, so abbreviations like "Dr." split.
The answer's character offset decides which sentence a tuple is paired
with; answers whose span crosses a period keep the sentence containing
the offset and are flagged rather than repaired.
"""

from dataclasses import dataclass

from .errors import DataError
from .qa_readers import QAPair
from .rules import Extraction

__all__ = ["AlignedExample", "segment_sentences", "align", "BOUNDARY_FLAG"]

BOUNDARY_FLAG = "boundary_spanning"


@dataclass(frozen=True, slots=True)
class AlignedExample:
    """One training example: a source sentence and its extraction."""

    sentence: str
    extraction: Extraction
    qa_id: str
    sentence_index: int
    source: str
    flags: tuple[str, ...] = ()


def segment_sentences(passage: str) -> list[tuple[int, int]]:
    """Character intervals of the passage's sentences, in order.

    Splits at '.', trims surrounding whitespace, and drops segments that
    are empty after trimming. A passage without periods is one segment.
    """
    intervals: list[tuple[int, int]] = []
    start = 0
    for pos, ch in enumerate(passage):
        if ch == ".":
            intervals.append((start, pos + 1))
            start = pos + 1
    if start < len(passage):
        intervals.append((start, len(passage)))

    trimmed: list[tuple[int, int]] = []
    for lo, hi in intervals:
        while lo < hi and passage[lo].isspace():
            lo += 1
        while hi > lo and passage[hi - 1].isspace():
            hi -= 1
        if lo < hi:
            trimmed.append((lo, hi))
    return trimmed


def align(extraction: Extraction, qa: QAPair) -> AlignedExample:
    """Attach the extraction to the sentence containing the answer offset."""
    if not 0 <= qa.answer_start < len(qa.passage):
        raise DataError(
            f"{qa.id}: answer_start {qa.answer_start} outside passage of length {len(qa.passage)}"
        )
    intervals = segment_sentences(qa.passage)
    if not intervals:
        raise DataError(f"{qa.id}: passage has no sentences")
    index = None
    for i, (lo, hi) in enumerate(intervals):
        if lo <= qa.answer_start < hi:
            index = i
            break
        if qa.answer_start < lo:  # offset fell in trimmed whitespace
            index = i
            break
    if index is None:
        index = len(intervals) - 1
    lo, hi = intervals[index]
    flags: tuple[str, ...] = ()
    if qa.answer_start + len(qa.answer) > hi:
        flags = (BOUNDARY_FLAG,)
    return AlignedExample(
        sentence=qa.passage[lo:hi],
        extraction=extraction,
        qa_id=qa.id,
        sentence_index=index,
        source=qa.source,
        flags=flags,
    )
