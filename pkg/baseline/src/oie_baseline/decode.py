"""Beam-search decoding into confidence-scored prediction rows.

Each decoded string is parsed back through the ``<sub>/<rel>/<obj>``
markers; the beam's summed token log-probability rides along as the
tuple confidence. Decodes without the full marker skeleton are dropped
and counted, never repaired.
"""

from dataclasses import dataclass
from typing import IO, Sequence

import torch

from .train import TrainedModel

__all__ = ["PredictionRow", "beam_decode", "parse_markers", "predict", "write_predictions"]

MARKERS = ("<sub>", "<rel>", "<obj>")


@dataclass(frozen=True)
class PredictionRow:
    sentence: str
    subject: str
    relation: str
    object: str
    log_likelihood: float


@dataclass(frozen=True)
class _Beam:
    tokens: tuple[int, ...]
    score: float
    state: tuple[torch.Tensor, torch.Tensor]
    finished: bool


def beam_decode(
    trained: TrainedModel,
    tokens: Sequence[str],
    beam_size: int | None = None,
    max_len: int | None = None,
) -> list[tuple[list[str], float]]:
    """Top-k decodes of one tokenized sentence, best (highest score) first."""
    model = trained.model
    config = trained.config
    width = beam_size or config.beam_size
    limit = max_len or config.max_decode_len
    src_vocab, tgt_vocab = trained.src_vocab, trained.tgt_vocab

    model.eval()
    with torch.no_grad():
        src = torch.tensor([src_vocab.encode(tokens)], dtype=torch.long)
        encoder_outputs, state, mask = model.encode(src)
        beams = [_Beam(tokens=(tgt_vocab.bos_index,), score=0.0, state=state, finished=False)]
        for _ in range(limit):
            if all(beam.finished for beam in beams):
                break
            grown: list[_Beam] = []
            for beam in beams:
                if beam.finished:
                    grown.append(beam)
                    continue
                step = torch.tensor([[beam.tokens[-1]]], dtype=torch.long)
                logits, new_state = model.decode(step, beam.state, encoder_outputs, mask)
                log_probs = torch.log_softmax(logits[0, -1], dim=-1)
                top = torch.topk(log_probs, min(width, log_probs.numel()))
                for value, index in zip(top.values.tolist(), top.indices.tolist()):
                    grown.append(
                        _Beam(
                            tokens=beam.tokens + (index,),
                            score=beam.score + value,
                            state=new_state,
                            finished=index == tgt_vocab.eos_index,
                        )
                    )
            grown.sort(key=lambda b: -b.score)
            beams = grown[:width]

    results = []
    for beam in sorted(beams, key=lambda b: -b.score):
        inner = [i for i in beam.tokens[1:] if i != tgt_vocab.eos_index]
        results.append((tgt_vocab.decode(inner), beam.score))
    return results


def _unescape(text: str) -> str:
    return text.replace("&lt;", "<")


def parse_markers(tokens: Sequence[str]) -> tuple[str, str, str] | None:
    """Slots between <sub>/<rel>/<obj>, or None when the skeleton is broken."""
    positions = []
    for marker in MARKERS:
        if tokens.count(marker) != 1:
            return None
        positions.append(tokens.index(marker))
    p_sub, p_rel, p_obj = positions
    if not p_sub < p_rel < p_obj:
        return None
    subject = " ".join(tokens[p_sub + 1 : p_rel])
    relation = " ".join(tokens[p_rel + 1 : p_obj])
    obj = " ".join(tokens[p_obj + 1 :])
    return _unescape(subject), _unescape(relation), _unescape(obj)


def predict(
    trained: TrainedModel,
    sentences: Sequence[str],
    beam_size: int | None = None,
    max_len: int | None = None,
) -> tuple[list[PredictionRow], int]:
    """Up to beam_size rows per sentence plus the malformed-decode count."""
    rows: list[PredictionRow] = []
    malformed = 0
    for sentence in sentences:
        clean = " ".join(sentence.split())  # keep the TSV single-line
        for tokens, score in beam_decode(trained, clean.split(), beam_size, max_len):
            slots = parse_markers(tokens)
            if slots is None:
                malformed += 1
                continue
            rows.append(PredictionRow(clean, slots[0], slots[1], slots[2], score))
    return rows, malformed


def write_predictions(rows: Sequence[PredictionRow], stream: IO[str]) -> None:
    for row in rows:
        stream.write(
            f"{row.sentence}\t{row.subject}\t{row.relation}\t{row.object}\t{row.log_likelihood:.6f}\n"
        )
