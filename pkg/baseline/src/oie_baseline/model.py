"""Two-layer LSTM encoder/decoder with general (bilinear) attention.

Hidden size and depth follow the published baseline configuration; the
unstated knobs (embedding size, epochs, schedule) have package defaults
and are recorded in the checkpoint alongside the weights.
"""

from dataclasses import dataclass, field

import torch
from torch import nn

from .errors import ConfigError

__all__ = ["TrainConfig", "Seq2Seq"]

ATTENTION_KINDS = ("general",)


@dataclass(frozen=True)
class TrainConfig:
    layers: int = 2
    hidden_size: int = 500
    embedding_size: int = 500
    attention: str = "general"
    dropout: float = 0.33
    beam_size: int = 10
    epochs: int = 40
    batch_size: int = 32
    learning_rate: float = 1.0
    lr_decay: float = 0.5
    grad_clip: float = 5.0
    min_count: int = 1
    max_decode_len: int = 60
    seed: int = 1

    def __post_init__(self) -> None:
        positive = (
            ("layers", self.layers),
            ("hidden_size", self.hidden_size),
            ("embedding_size", self.embedding_size),
            ("beam_size", self.beam_size),
            ("epochs", self.epochs),
            ("batch_size", self.batch_size),
            ("learning_rate", self.learning_rate),
            ("lr_decay", self.lr_decay),
            ("grad_clip", self.grad_clip),
            ("min_count", self.min_count),
            ("max_decode_len", self.max_decode_len),
        )
        for name, value in positive:
            if value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError(f"dropout must be within [0, 1), got {self.dropout}")
        if self.attention not in ATTENTION_KINDS:
            raise ConfigError(f"unknown attention kind {self.attention!r}")


class Seq2Seq(nn.Module):
    def __init__(self, src_vocab_size: int, tgt_vocab_size: int, config: TrainConfig, pad_index: int):
        super().__init__()
        self.config = config
        self.pad_index = pad_index
        inter_layer = config.dropout if config.layers > 1 else 0.0
        self.src_embedding = nn.Embedding(src_vocab_size, config.embedding_size, padding_idx=pad_index)
        self.tgt_embedding = nn.Embedding(tgt_vocab_size, config.embedding_size, padding_idx=pad_index)
        self.encoder = nn.LSTM(
            config.embedding_size, config.hidden_size, num_layers=config.layers,
            dropout=inter_layer, batch_first=True,
        )
        self.decoder = nn.LSTM(
            config.embedding_size, config.hidden_size, num_layers=config.layers,
            dropout=inter_layer, batch_first=True,
        )
        # score(h_t, h_s) = h_t W h_s
        self.attention_weight = nn.Linear(config.hidden_size, config.hidden_size, bias=False)
        self.attention_combine = nn.Linear(2 * config.hidden_size, config.hidden_size, bias=False)
        self.dropout = nn.Dropout(config.dropout)
        self.generator = nn.Linear(config.hidden_size, tgt_vocab_size)

    def encode(self, src: torch.Tensor) -> tuple[torch.Tensor, tuple[torch.Tensor, torch.Tensor], torch.Tensor]:
        mask = src.eq(self.pad_index)
        embedded = self.dropout(self.src_embedding(src))
        outputs, state = self.encoder(embedded)
        return outputs, state, mask

    def attend(
        self,
        decoder_states: torch.Tensor,
        encoder_outputs: torch.Tensor,
        src_mask: torch.Tensor,
    ) -> torch.Tensor:
        scores = self.attention_weight(decoder_states) @ encoder_outputs.transpose(1, 2)
        scores = scores.masked_fill(src_mask.unsqueeze(1), torch.finfo(scores.dtype).min)
        context = torch.softmax(scores, dim=-1) @ encoder_outputs
        combined = torch.tanh(
            self.attention_combine(torch.cat((context, decoder_states), dim=-1))
        )
        return combined

    def decode(
        self,
        tgt_in: torch.Tensor,
        state: tuple[torch.Tensor, torch.Tensor],
        encoder_outputs: torch.Tensor,
        src_mask: torch.Tensor,
    ) -> tuple[torch.Tensor, tuple[torch.Tensor, torch.Tensor]]:
        embedded = self.dropout(self.tgt_embedding(tgt_in))
        states, new_state = self.decoder(embedded, state)
        attended = self.dropout(self.attend(states, encoder_outputs, src_mask))
        return self.generator(attended), new_state

    def forward(self, src: torch.Tensor, tgt_in: torch.Tensor) -> torch.Tensor:
        encoder_outputs, state, mask = self.encode(src)
        logits, _ = self.decode(tgt_in, state, encoder_outputs, mask)
        return logits
