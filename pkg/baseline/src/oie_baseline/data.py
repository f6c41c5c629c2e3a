"""Parallel src/tgt corpus reading and padded batch construction."""

from dataclasses import dataclass
from typing import IO, Iterable

import torch

from .errors import CorpusError
from .vocab import Vocab

__all__ = ["ParallelCorpus", "read_parallel", "make_batches"]


@dataclass
class ParallelCorpus:
    src: list[list[str]]
    tgt: list[list[str]]

    def __len__(self) -> int:
        return len(self.src)


def _lines(source: str | IO[str] | Iterable[str]) -> list[str]:
    if isinstance(source, str):
        return source.splitlines()
    return [line.rstrip("\n") for line in source]


def read_parallel(src: str | IO[str], tgt: str | IO[str]) -> ParallelCorpus:
    """Line-parallel whitespace-tokenized pairs; counts must agree."""
    src_lines = _lines(src)
    tgt_lines = _lines(tgt)
    if len(src_lines) != len(tgt_lines):
        raise CorpusError(
            f"src has {len(src_lines)} lines but tgt has {len(tgt_lines)}"
        )
    if not src_lines:
        raise CorpusError("corpus is empty")
    src_tokens, tgt_tokens = [], []
    for lineno, (s, t) in enumerate(zip(src_lines, tgt_lines), start=1):
        s_toks, t_toks = s.split(), t.split()
        if not s_toks or not t_toks:
            raise CorpusError(f"line {lineno}: blank source or target")
        src_tokens.append(s_toks)
        tgt_tokens.append(t_toks)
    return ParallelCorpus(src=src_tokens, tgt=tgt_tokens)


def make_batches(
    corpus: ParallelCorpus,
    src_vocab: Vocab,
    tgt_vocab: Vocab,
    batch_size: int,
    order: list[int] | None = None,
) -> list[tuple[torch.Tensor, torch.Tensor, torch.Tensor]]:
    """(src_ids, src_lengths, tgt_ids) tensors, padded per batch.

    ``tgt_ids`` carries <s> ... </s>; the caller shifts it for teacher
    forcing. ``order`` permutes examples (shuffling is the trainer's
    job so batching stays deterministic).
    """
    indices = order if order is not None else list(range(len(corpus)))
    batches = []
    for start in range(0, len(indices), batch_size):
        chunk = indices[start : start + batch_size]
        src_ids = [src_vocab.encode(corpus.src[i]) for i in chunk]
        tgt_ids = [
            [tgt_vocab.bos_index, *tgt_vocab.encode(corpus.tgt[i]), tgt_vocab.eos_index]
            for i in chunk
        ]
        src_len = max(len(s) for s in src_ids)
        tgt_len = max(len(t) for t in tgt_ids)
        src_tensor = torch.full((len(chunk), src_len), src_vocab.pad_index, dtype=torch.long)
        tgt_tensor = torch.full((len(chunk), tgt_len), tgt_vocab.pad_index, dtype=torch.long)
        lengths = torch.zeros(len(chunk), dtype=torch.long)
        for row, (s, t) in enumerate(zip(src_ids, tgt_ids)):
            src_tensor[row, : len(s)] = torch.tensor(s, dtype=torch.long)
            tgt_tensor[row, : len(t)] = torch.tensor(t, dtype=torch.long)
            lengths[row] = len(s)
        batches.append((src_tensor, lengths, tgt_tensor))
    return batches
