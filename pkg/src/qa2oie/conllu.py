"""CoNLL-U reading, validation, and dependency-tree primitives.

Dependency parses are produced by an external parser and supplied as
CoNLL-U: ten tab-separated columns per token, sentences separated by a
blank line. Every sentence block must carry a ``# sent_id = <key>``
comment; a ``# text = ...`` comment is optional and, when present, is
used to recover character spans for the tokens. Multiword-token ranges
("3-4") and empty nodes ("3.1") are skipped.
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .errors import ConlluError

__all__ = [
    "Token",
    "DepTree",
    "parse_conllu",
    "to_conllu",
    "find_first",
    "subtree_indices",
    "subtree_text",
]


@dataclass(frozen=True, slots=True)
class Token:
    """One syntactic word of a dependency-parsed sentence."""

    index: int  # 1-based position in the sentence
    surface: str
    lemma: str
    upos: str
    head: int  # 0 for the root, otherwise a 1-based token index
    deprel: str
    char_span: tuple[int, int] | None = None  # span into DepTree.text


@dataclass(frozen=True, slots=True)
class DepTree:
    """A validated single-root dependency tree for one sentence."""

    sent_id: str
    text: str
    tokens: tuple[Token, ...]
    # True when text came from a "# text" comment rather than being
    # reassembled from token surfaces; to_conllu() round-trips it.
    has_text_metadata: bool = False

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"token index {index} out of range for {self.sent_id!r}")
        return self.tokens[index - 1]

    def root(self) -> Token:
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        raise ConlluError(f"sentence {self.sent_id!r} has no root")  # unreachable after validation

    def children(self, index: int) -> list[Token]:
        return [tok for tok in self.tokens if tok.head == index]


def _validate(sent_id: str, tokens: list[Token]) -> None:
    n = len(tokens)
    if n == 0:
        raise ConlluError(f"sentence {sent_id!r} has no tokens")
    for pos, tok in enumerate(tokens, start=1):
        if tok.index != pos:
            raise ConlluError(
                f"sentence {sent_id!r}: token indices not contiguous from 1 "
                f"(found {tok.index} at position {pos})"
            )
        if not tok.deprel or any(ch.isspace() for ch in tok.deprel):
            raise ConlluError(f"sentence {sent_id!r}: bad deprel {tok.deprel!r} at token {tok.index}")
        if tok.head == tok.index:
            raise ConlluError(f"sentence {sent_id!r}: token {tok.index} is its own head")
        if not 0 <= tok.head <= n:
            raise ConlluError(f"sentence {sent_id!r}: head {tok.head} of token {tok.index} out of range")
    roots = [tok.index for tok in tokens if tok.head == 0]
    if len(roots) != 1:
        raise ConlluError(f"sentence {sent_id!r}: expected exactly one root, found {len(roots)}")
    # Single root plus full reachability rules out cycles.
    kids: dict[int, list[int]] = defaultdict(list)
    for tok in tokens:
        kids[tok.head].append(tok.index)
    seen: set[int] = set()
    stack = [roots[0]]
    while stack:
        idx = stack.pop()
        if idx in seen:
            raise ConlluError(f"sentence {sent_id!r}: cycle involving token {idx}")
        seen.add(idx)
        stack.extend(kids[idx])
    if len(seen) != n:
        raise ConlluError(f"sentence {sent_id!r}: cycle detected (tokens unreachable from root)")


def _char_spans(text: str, surfaces: list[str]) -> list[tuple[int, int] | None]:
    """Greedy left-to-right alignment of token surfaces onto the sentence text."""
    spans: list[tuple[int, int] | None] = []
    cursor = 0
    for surface in surfaces:
        pos = text.find(surface, cursor)
        if pos < 0:
            spans.append(None)
        else:
            spans.append((pos, pos + len(surface)))
            cursor = pos + len(surface)
    return spans


def _parse_block(block: list[tuple[int, str]]) -> DepTree:
    sent_id: str | None = None
    text: str | None = None
    rows: list[tuple[int, str, str, str, int, str]] = []
    for lineno, line in block:
        if line.startswith("#"):
            comment = line[1:].strip()
            if "=" in comment:
                key, _, value = comment.partition("=")
                key = key.strip()
                if key == "sent_id":
                    sent_id = value.strip()
                elif key == "text":
                    text = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}")
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            continue  # multiword range / empty node
        try:
            index = int(token_id)
        except ValueError:
            raise ConlluError(f"line {lineno}: bad token id {token_id!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluError(f"line {lineno}: bad head {cols[6]!r}") from None
        rows.append((index, cols[1], cols[2], cols[3], head, cols[7]))
    if sent_id is None:
        raise ConlluError(f"line {block[0][0]}: sentence block without a '# sent_id' comment")
    if not rows:
        raise ConlluError(f"sentence {sent_id!r} has no tokens")

    surfaces = [row[1] for row in rows]
    has_meta = text is not None
    if text is None:
        text = " ".join(surfaces)
    spans = _char_spans(text, surfaces) if has_meta else [None] * len(rows)
    tokens = [
        Token(index=idx, surface=sf, lemma=lm, upos=up, head=hd, deprel=dr, char_span=span)
        for (idx, sf, lm, up, hd, dr), span in zip(rows, spans)
    ]
    _validate(sent_id, tokens)
    return DepTree(sent_id=sent_id, text=text, tokens=tuple(tokens), has_text_metadata=has_meta)


def parse_conllu(source: str | IO[str] | Iterable[str]) -> list[DepTree]:
    """Parse CoNLL-U text into validated trees.

    ``source`` may be the file content itself or any iterable of lines.
    Raises ConlluError naming the offending line number or sent_id.
    """
    if isinstance(source, str):
        lines: Iterator[str] = iter(source.splitlines())
    else:
        lines = iter(source)

    trees: list[DepTree] = []
    seen_ids: set[str] = set()
    block: list[tuple[int, str]] = []

    def flush() -> None:
        if not block:
            return
        tree = _parse_block(block)
        if tree.sent_id in seen_ids:
            raise ConlluError(f"duplicate sent_id {tree.sent_id!r}")
        seen_ids.add(tree.sent_id)
        trees.append(tree)
        block.clear()

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush()
        else:
            block.append((lineno, line))
    flush()
    return trees


def to_conllu(tree: DepTree) -> str:
    """Serialize a tree back to CoNLL-U (one sentence block, trailing blank line)."""
    out = [f"# sent_id = {tree.sent_id}"]
    if tree.has_text_metadata:
        out.append(f"# text = {tree.text}")
    for tok in tree.tokens:
        out.append(
            "\t".join(
                (
                    str(tok.index),
                    tok.surface,
                    tok.lemma,
                    tok.upos,
                    "_",
                    "_",
                    str(tok.head),
                    tok.deprel,
                    "_",
                    "_",
                )
            )
        )
    return "\n".join(out) + "\n\n"


def find_first(tree: DepTree, deprel: str) -> Token | None:
    """Lowest-index token carrying exactly the given deprel, or None."""
    for tok in tree.tokens:
        if tok.deprel == deprel:
            return tok
    return None


def subtree_indices(tree: DepTree, head_index: int) -> list[int]:
    """Indices of a token and all its descendants, ascending."""
    if not 1 <= head_index <= len(tree.tokens):
        raise IndexError(f"token index {head_index} out of range for {tree.sent_id!r}")
    kids: dict[int, list[int]] = defaultdict(list)
    for tok in tree.tokens:
        kids[tok.head].append(tok.index)
    seen: set[int] = set()
    stack = [head_index]
    while stack:
        idx = stack.pop()
        if idx in seen:
            continue
        seen.add(idx)
        stack.extend(kids[idx])
    return sorted(seen)


def subtree_text(tree: DepTree, head_index: int) -> str:
    """Surfaces of a token and its descendants in sentence order, space-joined."""
    return " ".join(tree.token(i).surface for i in subtree_indices(tree, head_index))
