"""Word-vector table with bag-of-words phrase embedding and cosine.

The table is plain text, one word per line followed by its values.
Lookup is case-folded; a word missing from the table contributes
nothing to a phrase embedding (fail closed: unknown words can only
lower similarity, never fake it). A phrase with no known words embeds
to the zero vector, whose cosine against anything is defined as 0.
"""

from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from .errors import DataError

__all__ = ["EmbeddingTable", "load_vectors", "bow_embed", "cosine", "tokenize_phrase"]


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    def lookup(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word.lower())


def load_vectors(source: str | IO[str] | Iterable[str], limit: int | None = None) -> EmbeddingTable:
    """Read "word v1 ... vd" lines; dimension is fixed by the first line.

    ``limit`` keeps only the first N entries (vocabulary truncation for
    large releases). A line whose value count disagrees with the first
    line is an error naming the line number.
    """
    lines: Iterable[str] = source.splitlines() if isinstance(source, str) else source
    table: EmbeddingTable | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if limit is not None and table is not None and len(table) >= limit:
            break
        parts = line.split()
        word = parts[0].lower()
        try:
            values = np.array([float(p) for p in parts[1:]], dtype=np.float64)
        except ValueError:
            raise DataError(f"line {lineno}: non-numeric vector value") from None
        if table is None:
            if values.size == 0:
                raise DataError(f"line {lineno}: no vector values")
            table = EmbeddingTable(dimension=values.size)
        elif values.size != table.dimension:
            raise DataError(
                f"line {lineno}: expected {table.dimension} values, got {values.size}"
            )
        if word not in table.vectors:  # first occurrence wins after case folding
            table.vectors[word] = values
    if table is None:
        raise DataError("embedding file contained no vectors")
    return table


def tokenize_phrase(phrase: str) -> list[str]:
    """Lowercased whitespace tokens, punctuation-only tokens removed."""
    return [
        tok.lower()
        for tok in phrase.split()
        if any(ch.isalnum() for ch in tok)
    ]


def bow_embed(phrase: str, table: EmbeddingTable) -> tuple[np.ndarray, int]:
    """Average of the known word vectors in the phrase, plus the OOV count."""
    tokens = tokenize_phrase(phrase)
    found = []
    oov = 0
    for tok in tokens:
        vec = table.lookup(tok)
        if vec is None:
            oov += 1
        else:
            found.append(vec)
    if not found:
        return np.zeros(table.dimension, dtype=np.float64), oov
    return np.mean(found, axis=0), oov


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; zero-norm input yields 0.0 by convention."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DataError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))
