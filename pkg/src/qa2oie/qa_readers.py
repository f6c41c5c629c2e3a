"""Readers for span-based QA datasets (SQuAD v1.1 JSON, NewsQA).

Both readers emit QAPair records whose answer text is a verified
substring of the passage at answer_start (character offsets, as in the
released data). Records that violate the span check, lack a consensus
answer, or are flagged unanswerable are dropped and counted, never
silently kept.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import DataError

__all__ = ["QAPair", "read_squad", "read_newsqa", "load_story_dir", "SOURCES"]

log = logging.getLogger(__name__)

SOURCES = ("squad", "newsqa")


@dataclass(frozen=True, slots=True)
class QAPair:
    id: str
    source: str  # "squad" | "newsqa"
    passage: str
    question: str
    answer: str
    answer_start: int

    def __post_init__(self) -> None:
        if self.source not in SOURCES:
            raise DataError(f"{self.id}: unknown source {self.source!r}")
        if not self.question or not self.answer:
            raise DataError(f"{self.id}: empty question or answer")
        end = self.answer_start + len(self.answer)
        if self.answer_start < 0 or self.passage[self.answer_start : end] != self.answer:
            raise DataError(f"{self.id}: answer text does not match passage span")


def _span_ok(passage: str, answer: str, start: int) -> bool:
    return (
        bool(answer)
        and start >= 0
        and passage[start : start + len(answer)] == answer
    )


def _get(obj: Any, key: str, path: str) -> Any:
    try:
        return obj[key]
    except (KeyError, TypeError, IndexError):
        raise DataError(f"missing key {key!r} at {path}") from None


def read_squad(text: str) -> tuple[list[QAPair], int]:
    """Parse SQuAD v1.1 JSON; returns (pairs, dropped_count)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"input is not valid JSON: {exc}") from None
    articles = _get(doc, "data", "$")
    pairs: list[QAPair] = []
    dropped = 0
    for ai, article in enumerate(articles):
        paragraphs = _get(article, "paragraphs", f"data[{ai}]")
        for pi, para in enumerate(paragraphs):
            where = f"data[{ai}].paragraphs[{pi}]"
            context = _get(para, "context", where)
            for qi, qa in enumerate(_get(para, "qas", where)):
                at = f"{where}.qas[{qi}]"
                if "is_impossible" in qa or "plausible_answers" in qa:
                    raise DataError(
                        f"{at}: v2.0 unanswerable-question layout detected; supply the v1.1 release"
                    )
                question = _get(qa, "question", at)
                qa_id = _get(qa, "id", at)
                answers = _get(qa, "answers", at)
                if not answers:
                    dropped += 1
                    continue
                answer = _get(answers[0], "text", f"{at}.answers[0]")
                start = _get(answers[0], "answer_start", f"{at}.answers[0]")
                if not question or not _span_ok(context, answer, start):
                    dropped += 1
                    continue
                pairs.append(
                    QAPair(
                        id=str(qa_id),
                        source="squad",
                        passage=context,
                        question=question,
                        answer=answer,
                        answer_start=start,
                    )
                )
    if dropped:
        log.info("read_squad: dropped %d record(s) failing the answer-span check", dropped)
    return pairs, dropped


def load_story_dir(path: str) -> dict[str, str]:
    """Map story id -> text for every regular file under a directory."""
    import os

    stories: dict[str, str] = {}
    for name in sorted(os.listdir(path)):
        full = os.path.join(path, name)
        if os.path.isfile(full):
            with open(full, encoding="utf-8") as handle:
                stories[name] = handle.read()
    return stories


def _newsqa_json(doc: Any) -> tuple[list[QAPair], int]:
    pairs: list[QAPair] = []
    dropped = 0
    for si, story in enumerate(_get(doc, "data", "$")):
        story_id = _get(story, "storyId", f"data[{si}]")
        text = _get(story, "text", f"data[{si}]")
        for qi, question in enumerate(_get(story, "questions", f"data[{si}]")):
            q = _get(question, "q", f"data[{si}].questions[{qi}]")
            consensus = question.get("consensus") or {}
            start, end = consensus.get("s"), consensus.get("e")
            if start is None or end is None:  # noAnswer / bad question / no agreement
                dropped += 1
                continue
            if not (0 <= start < end <= len(text)):
                dropped += 1
                continue
            answer = text[start:end]
            if not answer.strip() or not q:
                dropped += 1
                continue
            pairs.append(
                QAPair(
                    id=f"{story_id}#q{qi}",
                    source="newsqa",
                    passage=text,
                    question=q,
                    answer=answer,
                    answer_start=start,
                )
            )
    return pairs, dropped


def _majority_span(row: Mapping[str, str]) -> tuple[int, int] | None:
    """Consensus answer range for one CSV row, or None.

    Prefers the validation vote when present; otherwise requires two
    annotators to agree on an identical range. "none"/"bad_question"
    votes and flagged rows yield None.
    """

    def parse_range(text: str) -> tuple[int, int] | None:
        lo, sep, hi = text.partition(":")
        if sep and lo.isdigit() and hi.isdigit():
            return int(lo), int(hi)
        return None

    for flag in ("is_answer_absent", "is_question_bad"):
        raw = (row.get(flag) or "").strip()
        try:
            if raw and float(raw) >= 0.5:
                return None
        except ValueError:
            pass
    validated = (row.get("validated_answers") or "").strip()
    if validated:
        try:
            votes = json.loads(validated)
        except json.JSONDecodeError:
            return None
        best = max(sorted(votes), key=lambda key: votes[key])
        return parse_range(best)
    # "|" separates annotators, "," separates one annotator's spans; a span
    # counts once per annotator no matter how often they repeat it
    counts: dict[tuple[int, int], int] = {}
    for annotator in (row.get("answer_char_ranges") or "").split("|"):
        spans = {parse_range(piece.strip()) for piece in annotator.split(",")}
        for span in spans - {None}:
            counts[span] = counts.get(span, 0) + 1
    agreed = [span for span, n in counts.items() if n >= 2]
    return min(agreed) if agreed else None


def _newsqa_csv(text: str, stories: Mapping[str, str] | None) -> tuple[list[QAPair], int]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or "story_id" not in reader.fieldnames:
        raise DataError("NewsQA CSV is missing the 'story_id' column")
    pairs: list[QAPair] = []
    dropped = 0
    counters: dict[str, int] = {}
    for row in reader:
        story_id = row["story_id"]
        passage = row.get("story_text")
        if not passage:
            if stories is None or story_id not in stories:
                raise DataError(
                    f"story {story_id!r}: no story_text column and no story directory entry"
                )
            passage = stories[story_id]
        question = (row.get("question") or "").strip()
        qi = counters.get(story_id, 0)
        counters[story_id] = qi + 1
        span = _majority_span(row)
        if span is None:
            dropped += 1
            continue
        start, end = span
        if not (0 <= start < end <= len(passage)):
            dropped += 1
            continue
        answer = passage[start:end]
        if not answer.strip() or not question:
            dropped += 1
            continue
        pairs.append(
            QAPair(
                id=f"{story_id}#q{qi}",
                source="newsqa",
                passage=passage,
                question=question,
                answer=answer,
                answer_start=start,
            )
        )
    return pairs, dropped


def read_newsqa(text: str, stories: Mapping[str, str] | None = None) -> tuple[list[QAPair], int]:
    """Parse the NewsQA combined release (JSON or CSV); returns (pairs, dropped).

    The answer is taken from the validated/consensus character range;
    questions without one are dropped and counted. For the CSV layout,
    story text comes from a 'story_text' column or from ``stories``.
    """
    head = text.lstrip()[:1]
    if head == "{":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"input is not valid JSON: {exc}") from None
        pairs, dropped = _newsqa_json(doc)
    else:
        pairs, dropped = _newsqa_csv(text, stories)
    if dropped:
        log.info("read_newsqa: dropped %d record(s) without a usable consensus answer", dropped)
    return pairs, dropped
