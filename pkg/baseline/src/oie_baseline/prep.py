"""Run a dependency parser over a QA dataset's questions, emit CoNLL-U.

The output contract is the corpus converter's parse input: one block
per question, ``# sent_id`` equal to the QA pair id, ten tab-separated
columns, single root. Pre-parsed fixtures keep the converter's own test
suite parser-free; this module is for preparing real datasets.

Backends are pluggable. The built-in ``whitespace`` backend produces a
flat placebo tree (every token hangs off the first) — structurally
valid and useful for plumbing tests, useless for rule quality. The
``spacy`` backend requires the spacy package plus an English model.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import CorpusError, ParserError

__all__ = [
    "PrepSummary",
    "extract_questions",
    "whitespace_parse",
    "spacy_parser",
    "prep_parses",
    "BACKENDS",
]

# a backend maps a question to CoNLL-U token rows, or None when it
# cannot produce a single well-formed tree
ParseFn = Callable[[str], list[tuple] | None]


@dataclass(frozen=True)
class PrepSummary:
    questions: int
    parsed: int
    failed: int


def extract_questions(text: str, fmt: str) -> list[tuple[str, str]]:
    """(qa id, question) pairs in dataset order, ids matching the converter's."""
    if fmt == "squad":
        return _squad_questions(text)
    if fmt == "newsqa":
        return _newsqa_questions(text)
    raise CorpusError(f"unknown dataset format {fmt!r}")


def _squad_questions(text: str) -> list[tuple[str, str]]:
    try:
        payload = json.loads(text)
        articles = payload["data"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CorpusError(f"not a SQuAD file: {exc}") from None
    out = []
    for article in articles:
        for paragraph in article.get("paragraphs", ()):
            for qa in paragraph.get("qas", ()):
                out.append((str(qa["id"]), qa["question"]))
    return out


def _newsqa_questions(text: str) -> list[tuple[str, str]]:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            stories = json.loads(text)["data"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CorpusError(f"not a NewsQA file: {exc}") from None
        out = []
        for story in stories:
            story_id = story["storyId"]
            for qi, question in enumerate(story.get("questions", ())):
                out.append((f"{story_id}#q{qi}", question["q"]))
        return out
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or "story_id" not in reader.fieldnames:
        raise CorpusError("NewsQA CSV is missing the 'story_id' column")
    counters: dict[str, int] = {}
    out = []
    for row in reader:
        story_id = row["story_id"]
        qi = counters.get(story_id, 0)
        counters[story_id] = qi + 1
        out.append((f"{story_id}#q{qi}", row.get("question", "")))
    return out


def whitespace_parse(question: str) -> list[tuple] | None:
    tokens = question.split()
    if not tokens:
        return None
    rows = []
    for i, form in enumerate(tokens, start=1):
        head = 0 if i == 1 else 1
        deprel = "root" if i == 1 else "dep"
        rows.append((i, form, form.lower(), "X", "_", "_", head, deprel, "_", "_"))
    return rows


def spacy_parser() -> ParseFn:
    """Load spaCy's English pipeline; explains how to install it if absent."""
    try:
        import spacy
    except ImportError:
        raise ParserError(
            "the spacy backend needs the spacy package: pip install spacy"
        ) from None
    try:
        nlp = spacy.load("en_core_web_sm")
    except OSError:
        raise ParserError(
            "no English model installed; run: python -m spacy download en_core_web_sm"
        ) from None

    def parse(question: str) -> list[tuple] | None:
        doc = nlp(" ".join(question.split()))
        tokens = [tok for tok in doc]
        roots = [tok for tok in tokens if tok.head is tok]
        if not tokens or len(roots) != 1:
            return None
        index = {tok.i: i for i, tok in enumerate(tokens, start=1)}
        rows = []
        for i, tok in enumerate(tokens, start=1):
            head = 0 if tok.head is tok else index[tok.head.i]
            deprel = "root" if head == 0 else (tok.dep_.lower() or "dep")
            rows.append((i, tok.text, tok.lemma_, tok.pos_, tok.tag_, "_", head, deprel, "_", "_"))
        return rows

    return parse


BACKENDS: dict[str, Callable[[], ParseFn]] = {
    "whitespace": lambda: whitespace_parse,
    "spacy": spacy_parser,
}


def _block(sent_id: str, question: str, rows: Iterable[tuple]) -> str:
    text = " ".join(question.split())
    lines = [f"# sent_id = {sent_id}", f"# text = {text}"]
    lines += ["\t".join(str(col) for col in row) for row in rows]
    return "\n".join(lines) + "\n"


def prep_parses(
    questions: Iterable[tuple[str, str]],
    parse: ParseFn,
) -> tuple[str, PrepSummary]:
    """CoNLL-U text for every parseable question, plus counts."""
    blocks = []
    seen: set[str] = set()
    total = failed = 0
    for qa_id, question in questions:
        if qa_id in seen:
            raise CorpusError(f"duplicate question id {qa_id!r}")
        seen.add(qa_id)
        total += 1
        rows = parse(question)
        if rows is None:
            failed += 1
            continue
        blocks.append(_block(qa_id, question, rows))
    return "\n".join(blocks), PrepSummary(questions=total, parsed=total - failed, failed=failed)
