"""Token vocabulary for the sequence model.

Tokens are whitespace-delimited; the tuple markers ``<sub>/<rel>/<obj>``
arrive as ordinary tokens because the corpus writer emits them
space-separated. Index order is first appearance, so a vocabulary built
from the same corpus is always identical.
"""

from dataclasses import dataclass
from typing import Iterable

PAD, UNK, BOS, EOS = "<pad>", "<unk>", "<s>", "</s>"
SPECIALS = (PAD, UNK, BOS, EOS)


@dataclass
class Vocab:
    itos: list[str]
    stoi: dict[str, int]

    def __len__(self) -> int:
        return len(self.itos)

    @property
    def pad_index(self) -> int:
        return self.stoi[PAD]

    @property
    def unk_index(self) -> int:
        return self.stoi[UNK]

    @property
    def bos_index(self) -> int:
        return self.stoi[BOS]

    @property
    def eos_index(self) -> int:
        return self.stoi[EOS]

    def encode(self, tokens: Iterable[str]) -> list[int]:
        unk = self.unk_index
        return [self.stoi.get(tok, unk) for tok in tokens]

    def decode(self, indices: Iterable[int]) -> list[str]:
        return [self.itos[i] for i in indices]


def build_vocab(token_lines: Iterable[list[str]], min_count: int = 1) -> Vocab:
    """Specials first, then corpus tokens in order of first appearance."""
    counts: dict[str, int] = {}
    for tokens in token_lines:
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
    itos = list(SPECIALS)
    for tok, n in counts.items():  # dict preserves first-appearance order
        if n >= min_count and tok not in SPECIALS:
            itos.append(tok)
    return Vocab(itos=itos, stoi={tok: i for i, tok in enumerate(itos)})
