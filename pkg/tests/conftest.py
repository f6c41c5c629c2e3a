"""Shared fixtures: checked-in parses, datasets, vectors, and golden files."""

import json
from pathlib import Path

import pytest

from qa2oie.conllu import parse_conllu
from qa2oie.embeddings import load_vectors

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def coverage_trees():
    text = (DATA / "coverage_questions.conllu").read_text(encoding="utf-8")
    return {tree.sent_id: tree for tree in parse_conllu(text)}


@pytest.fixture(scope="session")
def coverage_questions():
    rows = []
    with open(DATA / "coverage_questions.jsonl", encoding="utf-8") as handle:
        for line in handle:
            rows.append(json.loads(line))
    return rows


@pytest.fixture(scope="session")
def coverage_golden():
    with open(DATA / "coverage_golden.json", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture(scope="session")
def squad_trees():
    text = (DATA / "squad_questions.conllu").read_text(encoding="utf-8")
    return {tree.sent_id: tree for tree in parse_conllu(text)}


@pytest.fixture(scope="session")
def newsqa_trees():
    text = (DATA / "newsqa_questions.conllu").read_text(encoding="utf-8")
    return {tree.sent_id: tree for tree in parse_conllu(text)}


@pytest.fixture(scope="session")
def vector_table():
    with open(DATA / "vectors.txt", encoding="utf-8") as handle:
        return load_vectors(handle)
