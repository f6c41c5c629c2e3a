"""Question typing: wh-word, subject presence, auxiliary pattern, length gate.

The type assignment is a pure function of the parsed question (plus the
length limit), so the same parse always routes to the same rule.
"""

from dataclasses import dataclass

from .conllu import DepTree, Token

__all__ = [
    "QuestionType",
    "classify",
    "find_wh_token",
    "WH_CATEGORIES",
    "AUX_PATTERNS",
    "SUBJECT_RELS",
    "AUX_RELS",
    "DEFAULT_MAX_QUESTION_CHARS",
]

# Wh-surface -> category. "whom" folds into "who"; anything else is "other".
_WH_NORMALIZE = {
    "who": "who",
    "whom": "who",
    "what": "what",
    "when": "when",
    "where": "where",
    "why": "why",
    "how": "how",
    "which": "which",
    "whose": "whose",
}

WH_CATEGORIES = ("who", "what", "when", "where", "why", "how", "which", "whose", "other")
AUX_PATTERNS = ("copula", "did_do", "was_participle", "modal", "none")

# Label sets accepted for subjects and auxiliaries. Both the classic
# nsubjpass/auxpass spelling and the colon variants occur in parser output.
SUBJECT_RELS = ("nsubj", "nsubjpass", "nsubj:pass")
PASSIVE_SUBJECT_RELS = ("nsubjpass", "nsubj:pass")
AUX_RELS = ("aux", "auxpass", "aux:pass")

_MODAL_LEMMAS = {"can", "could", "will", "would", "may", "might", "must"}

DEFAULT_MAX_QUESTION_CHARS = 60


@dataclass(frozen=True, slots=True)
class QuestionType:
    wh: str
    has_nsubj: bool
    aux_pattern: str
    length_ok: bool


def find_wh_token(tree: DepTree) -> Token | None:
    """First token (by position) whose surface is a wh-word, or None."""
    for tok in tree.tokens:
        if tok.surface.lower() in _WH_NORMALIZE:
            return tok
    return None


def _aux_pattern(tree: DepTree, wh: Token | None) -> str:
    start = wh.index if wh is not None else 0
    for tok in tree.tokens:
        if tok.index <= start:
            continue
        if tok.deprel not in AUX_RELS and tok.deprel != "cop" and tok.upos != "AUX":
            continue
        lemma = tok.lemma.lower()
        if lemma == "be":
            # A copular "be" predicates directly; "be" as an auxiliary in a
            # question signals a passive/participial main verb.
            return "copula" if tok.deprel == "cop" else "was_participle"
        if lemma == "do":
            return "did_do"
        if lemma in _MODAL_LEMMAS:
            return "modal"
        return "none"
    return "none"


def classify(tree: DepTree, max_question_chars: int = DEFAULT_MAX_QUESTION_CHARS) -> QuestionType:
    """Assign the question its type; total over valid trees."""
    wh_tok = find_wh_token(tree)
    wh = _WH_NORMALIZE[wh_tok.surface.lower()] if wh_tok is not None else "other"
    has_nsubj = any(
        tok.deprel in SUBJECT_RELS and (wh_tok is None or tok.index != wh_tok.index)
        for tok in tree.tokens
    )
    return QuestionType(
        wh=wh,
        has_nsubj=has_nsubj,
        aux_pattern=_aux_pattern(tree, wh_tok),
        length_ok=len(tree.text) <= max_question_chars,
    )
