"""Training loop: SGD with a decaying learning rate, perplexity log.

The learning rate halves (``lr_decay``) whenever an epoch fails to
improve validation perplexity. Without a validation pair the training
corpus doubles as the validation set, which is exactly what the toy
overfit check wants.
"""

import json
import math
import random
from dataclasses import asdict, dataclass
from typing import IO

import torch
from torch import nn

from .data import make_batches, read_parallel
from .model import Seq2Seq, TrainConfig
from .vocab import Vocab, build_vocab

__all__ = ["TrainedModel", "train", "save_model", "load_model", "write_log"]


@dataclass
class TrainedModel:
    model: Seq2Seq
    src_vocab: Vocab
    tgt_vocab: Vocab
    config: TrainConfig
    log: list[dict]


def _epoch_loss(
    model: Seq2Seq,
    batches: list[tuple[torch.Tensor, torch.Tensor, torch.Tensor]],
    criterion: nn.Module,
    optimizer: torch.optim.Optimizer | None,
    clip: float,
) -> tuple[float, int]:
    """Summed token NLL and token count; optimizes when given an optimizer."""
    total = 0.0
    tokens = 0
    for src, _, tgt in batches:
        logits = model(src, tgt[:, :-1])
        target = tgt[:, 1:]
        loss = criterion(logits.reshape(-1, logits.size(-1)), target.reshape(-1))
        if optimizer is not None:
            optimizer.zero_grad()
            loss.backward()
            nn.utils.clip_grad_norm_(model.parameters(), clip)
            optimizer.step()
        total += loss.item()
        tokens += int(target.ne(model.pad_index).sum())
    return total, tokens


def train(
    src: str | IO[str],
    tgt: str | IO[str],
    config: TrainConfig = TrainConfig(),
    valid_src: str | IO[str] | None = None,
    valid_tgt: str | IO[str] | None = None,
) -> TrainedModel:
    corpus = read_parallel(src, tgt)
    validation = (
        read_parallel(valid_src, valid_tgt)
        if valid_src is not None and valid_tgt is not None
        else corpus
    )
    torch.manual_seed(config.seed)
    src_vocab = build_vocab(corpus.src, config.min_count)
    tgt_vocab = build_vocab(corpus.tgt, config.min_count)
    model = Seq2Seq(len(src_vocab), len(tgt_vocab), config, src_vocab.pad_index)
    criterion = nn.CrossEntropyLoss(ignore_index=tgt_vocab.pad_index, reduction="sum")
    lr = config.learning_rate
    optimizer = torch.optim.SGD(model.parameters(), lr=lr)
    shuffler = random.Random(config.seed)
    valid_batches = make_batches(validation, src_vocab, tgt_vocab, config.batch_size)

    log: list[dict] = []
    best_perplexity = math.inf
    for epoch in range(1, config.epochs + 1):
        order = list(range(len(corpus)))
        shuffler.shuffle(order)
        batches = make_batches(corpus, src_vocab, tgt_vocab, config.batch_size, order)
        model.train()
        train_total, train_tokens = _epoch_loss(model, batches, criterion, optimizer, config.grad_clip)
        model.eval()
        with torch.no_grad():
            valid_total, valid_tokens = _epoch_loss(model, valid_batches, criterion, None, config.grad_clip)
        perplexity = math.exp(valid_total / valid_tokens)
        log.append(
            {
                "epoch": epoch,
                "train_loss": train_total / train_tokens,
                "valid_perplexity": perplexity,
                "learning_rate": lr,
            }
        )
        if perplexity < best_perplexity:
            best_perplexity = perplexity
        else:
            lr *= config.lr_decay
            for group in optimizer.param_groups:
                group["lr"] = lr
    return TrainedModel(model=model, src_vocab=src_vocab, tgt_vocab=tgt_vocab, config=config, log=log)


def save_model(trained: TrainedModel, path: str) -> None:
    torch.save(
        {
            "state": trained.model.state_dict(),
            "src_itos": trained.src_vocab.itos,
            "tgt_itos": trained.tgt_vocab.itos,
            "config": asdict(trained.config),
            "log": trained.log,
        },
        path,
    )


def load_model(path: str) -> TrainedModel:
    payload = torch.load(path, weights_only=True)
    config = TrainConfig(**payload["config"])
    src_vocab = Vocab(itos=payload["src_itos"], stoi={t: i for i, t in enumerate(payload["src_itos"])})
    tgt_vocab = Vocab(itos=payload["tgt_itos"], stoi={t: i for i, t in enumerate(payload["tgt_itos"])})
    model = Seq2Seq(len(src_vocab), len(tgt_vocab), config, src_vocab.pad_index)
    model.load_state_dict(payload["state"])
    model.eval()
    return TrainedModel(model=model, src_vocab=src_vocab, tgt_vocab=tgt_vocab, config=config, log=payload["log"])


def write_log(log: list[dict], stream: IO[str]) -> None:
    for entry in log:
        stream.write(json.dumps(entry, sort_keys=True) + "\n")
