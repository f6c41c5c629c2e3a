"""Shared fixtures: toy corpus, vectors, and a small trained model."""

from pathlib import Path

import pytest

from oie_baseline import TrainConfig, train

DATA = Path(__file__).parent / "data"

# deliberately small: unit tests need a working model, not a good one
TINY = TrainConfig(hidden_size=32, embedding_size=24, epochs=2, batch_size=50, seed=3)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def toy_src() -> str:
    return (DATA / "toy_src.txt").read_text()


@pytest.fixture(scope="session")
def toy_tgt() -> str:
    return (DATA / "toy_tgt.txt").read_text()


@pytest.fixture(scope="session")
def tiny_trained(toy_src, toy_tgt):
    return train(toy_src, toy_tgt, TINY)
