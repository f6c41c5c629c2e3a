"""The fifteen-rule cascade turning (parsed question, answer) into a tuple.

Each rule is registry data (id, priority, guard over the QuestionType,
answer slot) paired with a tree traversal keyed by rule id. Rules are
tried most-specific first; the first traversal that produces all three
slots wins. A question no rule can handle is discarded, not an error.

The answer fills exactly one slot; the other two are assembled from
question tokens, so relations read like question fragments ("when did
emigrate to the US") rather than sentence verbs.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .conllu import DepTree, Token, subtree_indices
from .errors import DataError
from .questions import (
    AUX_RELS,
    PASSIVE_SUBJECT_RELS,
    SUBJECT_RELS,
    QuestionType,
    classify,
    find_wh_token,
)

__all__ = [
    "Extraction",
    "RuleSpec",
    "DEFAULT_REGISTRY",
    "apply_rules",
    "run_rule",
    "load_registry",
    "normalize_span",
]

_OBJECT_RELS = ("dobj", "obj")
_COMPLEMENT_RELS = ("dobj", "obj", "xcomp", "ccomp", "attr", "obl", "nmod", "advmod")
_QUANTITY_WORDS = ("many", "much")

Slots = tuple[str, str, str]
Traversal = Callable[[DepTree, str, QuestionType], Slots | None]


@dataclass(frozen=True, slots=True)
class Extraction:
    """A (subject, relation, object) tuple plus provenance."""

    subject: str
    relation: str
    object: str
    rule_id: str | None = None
    qtype: QuestionType | None = None
    confidence: float | None = None


@dataclass(frozen=True, slots=True)
class RuleSpec:
    rule_id: str
    priority: int  # lower fires first
    guard: Callable[[QuestionType], bool]
    answer_slot: str  # which slot the answer fills: subject | relation | object
    traversal: Traversal | None = None  # defaults to the built-in for rule_id


def normalize_span(text: str) -> str:
    """Whitespace normalization used for slots and answers."""
    return " ".join(text.split())


# ---------------------------------------------------------------------------
# traversal helpers

def _subtree_tokens(tree: DepTree, head_index: int, exclude: set[int] = frozenset()) -> list[Token]:
    return [tree.token(i) for i in subtree_indices(tree, head_index) if i not in exclude]


def _strip_punct_edges(tokens: list[Token]) -> list[Token]:
    lo, hi = 0, len(tokens)
    while lo < hi and tokens[lo].upos == "PUNCT":
        lo += 1
    while hi > lo and tokens[hi - 1].upos == "PUNCT":
        hi -= 1
    return tokens[lo:hi]


def _text(tokens: list[Token]) -> str:
    return " ".join(tok.surface for tok in tokens)


def _subtree_span(tree: DepTree, head_index: int, exclude: set[int] = frozenset()) -> str:
    return _text(_strip_punct_edges(_subtree_tokens(tree, head_index, exclude)))


def _first_token(tree: DepTree, deprels: tuple[str, ...]) -> Token | None:
    for tok in tree.tokens:
        if tok.deprel in deprels:
            return tok
    return None


def _first_child(tree: DepTree, head_index: int, deprels: tuple[str, ...]) -> Token | None:
    for tok in tree.tokens:
        if tok.head == head_index and tok.deprel in deprels:
            return tok
    return None


def _complement_child(tree: DepTree, head_index: int, wh_index: int) -> Token | None:
    """First complement-like child whose subtree stands apart from the wh-word."""
    for tok in tree.tokens:
        if tok.head != head_index or tok.deprel not in _COMPLEMENT_RELS:
            continue
        if wh_index in subtree_indices(tree, tok.index):
            continue
        return tok
    return None


def _subject_np(tree: DepTree, wh: Token) -> tuple[Token, set[int]] | None:
    """First subject token standing apart from the wh-word, with its subtree."""
    for tok in tree.tokens:
        if tok.deprel not in SUBJECT_RELS or tok.index == wh.index:
            continue
        indices = set(subtree_indices(tree, tok.index))
        if wh.index in indices:
            continue
        return tok, indices
    return None


def _first_aux_after(tree: DepTree, position: int, deprels: tuple[str, ...]) -> Token | None:
    for tok in tree.tokens:
        if tok.index > position and tok.deprel in deprels:
            return tok
    return None


def _tokens_after(tree: DepTree, position: int, exclude: set[int]) -> list[Token]:
    return [
        tok
        for tok in tree.tokens
        if tok.index > position and tok.index not in exclude and tok.upos != "PUNCT"
    ]


def _verb_span(tree: DepTree, wh: Token, root: Token) -> list[Token]:
    """Auxiliaries/markers between the wh-word and the root, then the root."""
    mid = [
        tok
        for tok in tree.tokens
        if wh.index < tok.index < root.index
        and (tok.deprel in AUX_RELS or tok.deprel in ("mark", "cop"))
    ]
    return mid + [root]


# ---------------------------------------------------------------------------
# traversals (one per registry entry)

def _r01_who_copula(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "Who was Rollo?" -> (answer, was, Rollo)
    wh = find_wh_token(tree)
    cop = _first_token(tree, ("cop",))
    if wh is None or cop is None:
        return None
    subj = _subject_np(tree, wh)
    if subj is None:
        return None
    subj_tok, subj_idx = subj
    return answer, cop.surface, _subtree_span(tree, subj_tok.index)


def _r02_who_verb(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "Who invented the telephone?" -> (answer, invented, the telephone)
    root = tree.root()
    if root.upos != "VERB":
        return None
    obj = _first_child(tree, root.index, _OBJECT_RELS)
    if obj is None:
        return None
    obj_idx = set(subtree_indices(tree, obj.index))
    trailing = _tokens_after(tree, root.index, obj_idx)
    return answer, _text([root] + trailing), _subtree_span(tree, obj.index)


def _r03_who_passive(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "Who was the telephone invented by?" -> (the telephone, invented by, answer)
    wh = find_wh_token(tree)
    if wh is None:
        return None
    subj = None
    for tok in tree.tokens:
        if tok.deprel in PASSIVE_SUBJECT_RELS and tok.index != wh.index:
            indices = set(subtree_indices(tree, tok.index))
            if wh.index not in indices:
                subj = tok
                break
    if subj is None:
        return None
    root = tree.root()
    if not any(tok.surface.lower() == "by" and tok.index > root.index for tok in tree.tokens):
        return None
    return _subtree_span(tree, subj.index), f"{root.surface} by", answer


def _r04_what_copula(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "What is the capital of France?" -> (the capital of France, is, answer)
    wh = find_wh_token(tree)
    cop = _first_token(tree, ("cop",))
    if wh is None or cop is None:
        return None
    subj = _subject_np(tree, wh)
    if subj is None:
        return None
    subj_tok, _ = subj
    return _subtree_span(tree, subj_tok.index), cop.surface, answer


def _question_prefixed(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    """Shared shape for R05-R09: subject NP, "wh aux ..." relation, answer object.

    "When did Einstein emigrate to the US" + 1933
        -> (Einstein, when did emigrate to the US, 1933)
    """
    wh = find_wh_token(tree)
    if wh is None:
        return None
    subj = _subject_np(tree, wh)
    if subj is None:
        return None
    subj_tok, subj_idx = subj
    aux = _first_aux_after(tree, wh.index, AUX_RELS + ("cop",))
    if aux is None:
        return None
    rest = _tokens_after(tree, max(subj_idx), subj_idx | {aux.index})
    if not rest and aux.deprel != "cop":
        return None
    relation = " ".join([wh.surface.lower(), aux.surface, *[t.surface for t in rest]])
    return _subtree_span(tree, subj_tok.index), relation, answer


def _r10_how_many(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "How many employees did Google hire?" -> (Google, how many employees did hire, answer)
    wh = find_wh_token(tree)
    if wh is None or wh.index >= len(tree.tokens):
        return None
    quant = tree.token(wh.index + 1)
    if quant.surface.lower() not in _QUANTITY_WORDS or quant.head == 0:
        return None
    counted = tree.token(quant.head)
    counted_idx = set(subtree_indices(tree, counted.index)) - {wh.index, quant.index}
    if not counted_idx:
        return None
    subj = _subject_np(tree, wh)
    if subj is None:
        return None
    subj_tok, subj_idx = subj
    if subj_idx & counted_idx:
        return None
    aux = _first_aux_after(tree, wh.index, AUX_RELS)
    if aux is None:
        return None
    verb = _tokens_after(tree, max(subj_idx), subj_idx | counted_idx | {aux.index, wh.index, quant.index})
    if not verb:
        return None
    counted_text = _text(_strip_punct_edges([tree.token(i) for i in sorted(counted_idx)]))
    relation = " ".join(
        [wh.surface.lower(), quant.surface.lower(), counted_text, aux.surface, *[t.surface for t in verb]]
    )
    return _subtree_span(tree, subj_tok.index), relation, answer


def _r11_how_no_subj(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "How to cook rice?" -> (answer, how to cook, rice)
    wh = find_wh_token(tree)
    root = tree.root()
    if wh is None or root.index == wh.index or root.upos != "VERB":
        return None
    comp = _complement_child(tree, root.index, wh.index)
    if comp is None:
        return None
    relation = " ".join([wh.surface.lower(), *[t.surface for t in _verb_span(tree, wh, root)]])
    return answer, relation, _subtree_span(tree, comp.index)


def _r12_which_subj(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "Which company acquired WhatsApp?" -> (answer, acquired, WhatsApp)
    wh = find_wh_token(tree)
    if wh is None:
        return None
    subj = _first_token(tree, SUBJECT_RELS)
    if subj is None or wh.index not in subtree_indices(tree, subj.index):
        return None  # the which-phrase is not the subject; leave to the generic rules
    root = tree.root()
    if root.upos != "VERB":
        return None
    obj = _first_child(tree, root.index, _OBJECT_RELS)
    if obj is None:
        return None
    obj_idx = set(subtree_indices(tree, obj.index))
    trailing = _tokens_after(tree, root.index, obj_idx)
    return answer, _text([root] + trailing), _subtree_span(tree, obj.index)


def _r13_whose(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # "Whose car is in the driveway?" -> (answer, has, car)
    wh = find_wh_token(tree)
    if wh is None or wh.head == 0:
        return None
    owned = _subtree_span(tree, wh.head, exclude={wh.index})
    if not owned:
        return None
    return answer, "has", owned


def _r14_generic_subj(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # Fallback: subject NP, then "wh + everything else" as the relation.
    wh = find_wh_token(tree)
    if wh is None:
        return None
    subj = _subject_np(tree, wh)
    if subj is None:
        return None
    subj_tok, subj_idx = subj
    rest = [
        tok
        for tok in tree.tokens
        if tok.index != wh.index and tok.index not in subj_idx and tok.upos != "PUNCT"
    ]
    if not rest:
        return None
    relation = " ".join([wh.surface.lower(), *[t.surface for t in rest]])
    return _subtree_span(tree, subj_tok.index), relation, answer


def _r15_generic_no_subj(tree: DepTree, answer: str, qtype: QuestionType) -> Slots | None:
    # Fallback when no separate subject exists; the answer becomes the subject.
    wh = find_wh_token(tree)
    root = tree.root()
    if wh is None or root.index == wh.index:
        return None
    cop = _first_child(tree, root.index, ("cop",))
    if cop is not None:
        remainder = [
            tok
            for tok in tree.tokens
            if tok.index not in (wh.index, cop.index)
            and tok.upos != "PUNCT"
            and tok.deprel not in AUX_RELS
        ]
        if not remainder:
            return None
        return answer, f"{wh.surface.lower()} {cop.surface}", _text(remainder)
    if root.upos != "VERB":
        return None
    comp = _complement_child(tree, root.index, wh.index)
    if comp is None:
        return None
    relation = " ".join([wh.surface.lower(), *[t.surface for t in _verb_span(tree, wh, root)]])
    return answer, relation, _subtree_span(tree, comp.index)


_TRAVERSALS: dict[str, Traversal] = {
    "R01-who-copula": _r01_who_copula,
    "R02-who-verb": _r02_who_verb,
    "R03-who-passive": _r03_who_passive,
    "R04-what-copula": _r04_what_copula,
    "R05-when-did": _question_prefixed,
    "R06-when-was": _question_prefixed,
    "R07-where-did": _question_prefixed,
    "R08-where-copula": _question_prefixed,
    "R09-what-did": _question_prefixed,
    "R10-how-many": _r10_how_many,
    "R11-how-no-subj": _r11_how_no_subj,
    "R12-which-subj": _r12_which_subj,
    "R13-whose": _r13_whose,
    "R14-generic-subj": _r14_generic_subj,
    "R15-generic-no-subj": _r15_generic_no_subj,
}

# Registry: most-specific shapes first, the two generic fallbacks last.
DEFAULT_REGISTRY: tuple[RuleSpec, ...] = tuple(
    RuleSpec(rule_id=rid, priority=prio, guard=guard, answer_slot=slot)
    for prio, (rid, guard, slot) in enumerate(
        [
            ("R01-who-copula", lambda q: q.wh == "who" and q.aux_pattern == "copula", "subject"),
            ("R02-who-verb", lambda q: q.wh == "who" and q.aux_pattern == "none", "subject"),
            ("R03-who-passive", lambda q: q.wh == "who" and q.aux_pattern == "was_participle", "object"),
            ("R04-what-copula", lambda q: q.wh == "what" and q.aux_pattern == "copula" and q.has_nsubj, "object"),
            ("R05-when-did", lambda q: q.wh == "when" and q.aux_pattern == "did_do" and q.has_nsubj, "object"),
            ("R06-when-was", lambda q: q.wh == "when" and q.aux_pattern == "was_participle" and q.has_nsubj, "object"),
            ("R07-where-did", lambda q: q.wh == "where" and q.aux_pattern == "did_do" and q.has_nsubj, "object"),
            ("R08-where-copula", lambda q: q.wh == "where" and q.aux_pattern == "copula" and q.has_nsubj, "object"),
            ("R09-what-did", lambda q: q.wh == "what" and q.aux_pattern == "did_do" and q.has_nsubj, "object"),
            ("R10-how-many", lambda q: q.wh == "how" and q.has_nsubj, "object"),
            ("R11-how-no-subj", lambda q: q.wh == "how" and not q.has_nsubj, "subject"),
            ("R12-which-subj", lambda q: q.wh == "which" and q.has_nsubj, "subject"),
            ("R13-whose", lambda q: q.wh == "whose", "subject"),
            ("R14-generic-subj", lambda q: q.has_nsubj, "object"),
            ("R15-generic-no-subj", lambda q: not q.has_nsubj, "subject"),
        ],
        start=1,
    )
)


def run_rule(
    rule: RuleSpec,
    tree: DepTree,
    answer: str,
    qtype: QuestionType | None = None,
) -> Extraction | None:
    """Run one rule's traversal, assuming its guard already passed."""
    if qtype is None:
        qtype = classify(tree)
    answer = normalize_span(answer)
    if not answer:
        return None
    traversal = rule.traversal or _TRAVERSALS.get(rule.rule_id)
    if traversal is None:
        raise DataError(f"no traversal registered for rule {rule.rule_id!r}")
    slots = traversal(tree, answer, qtype)
    if slots is None:
        return None
    subject, relation, object_ = (normalize_span(s) for s in slots)
    if not (subject and relation and object_):
        return None
    return Extraction(
        subject=subject,
        relation=relation,
        object=object_,
        rule_id=rule.rule_id,
        qtype=qtype,
    )


def apply_rules(
    tree: DepTree,
    answer: str,
    qtype: QuestionType | None = None,
    registry: tuple[RuleSpec, ...] = DEFAULT_REGISTRY,
) -> Extraction | None:
    """First matching rule's extraction in priority order, or None.

    Over-length questions are filtered before any rule is tried; a
    question no rule covers yields None rather than an error.
    """
    if qtype is None:
        qtype = classify(tree)
    if not qtype.length_ok:
        return None
    priorities = [rule.priority for rule in registry]
    if len(set(priorities)) != len(priorities):
        raise DataError("rule registry has duplicate priorities")
    for rule in sorted(registry, key=lambda r: r.priority):
        if not rule.guard(qtype):
            continue
        extraction = run_rule(rule, tree, answer, qtype)
        if extraction is not None:
            return extraction
    return None


def load_registry(path: str | Path) -> tuple[RuleSpec, ...]:
    """Reorder the default cascade from a config file of rule ids.

    The file lists one rule id per line (blank lines and #-comments
    ignored) and must name every built-in rule exactly once; priority
    follows file order.
    """
    by_id = {rule.rule_id: rule for rule in DEFAULT_REGISTRY}
    order: list[str] = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line not in by_id:
            raise DataError(f"unknown rule id {line!r} in {path}")
        if line in order:
            raise DataError(f"duplicate rule id {line!r} in {path}")
        order.append(line)
    if len(order) != len(by_id):
        missing = sorted(set(by_id) - set(order))
        raise DataError(f"registry config {path} must list every rule; missing {missing}")
    return tuple(
        RuleSpec(rule_id=rid, priority=prio, guard=by_id[rid].guard, answer_slot=by_id[rid].answer_slot)
        for prio, rid in enumerate(order, start=1)
    )
