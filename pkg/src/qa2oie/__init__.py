"""qa2oie: turn span-based QA datasets into Open IE training corpora.

A question/answer pair is converted into a (subject, relation, object)
tuple by a fifteen-rule cascade over the question's dependency parse;
the tuple is paired with the passage sentence containing the answer.
Predicted tuples are scored against gold with per-slot bag-of-words
embedding cosine and summarized as a precision/recall curve.
"""

from .alignment import AlignedExample, align, segment_sentences
from .conllu import DepTree, Token, find_first, parse_conllu, subtree_text, to_conllu
from .corpus import CorpusStats, format_target, read_corpus, split_validation, write_corpus
from .embeddings import EmbeddingTable, bow_embed, cosine, load_vectors
from .errors import ConlluError, DataError, Qa2OieError
from .evaluation import GoldSet, PRPoint, area_under_pr, evaluate, load_gold, load_predictions
from .matching import DEFAULT_THRESHOLD, MatchConfig, tuple_match
from .pipeline import convert_pair, convert_pairs
from .qa_readers import QAPair, read_newsqa, read_squad
from .questions import QuestionType, classify
from .rules import DEFAULT_REGISTRY, Extraction, RuleSpec, apply_rules, load_registry, run_rule

__version__ = "0.1.0"

__all__ = [
    "AlignedExample",
    "align",
    "segment_sentences",
    "DepTree",
    "Token",
    "find_first",
    "parse_conllu",
    "subtree_text",
    "to_conllu",
    "CorpusStats",
    "format_target",
    "read_corpus",
    "split_validation",
    "write_corpus",
    "EmbeddingTable",
    "bow_embed",
    "cosine",
    "load_vectors",
    "ConlluError",
    "DataError",
    "Qa2OieError",
    "GoldSet",
    "PRPoint",
    "area_under_pr",
    "evaluate",
    "load_gold",
    "load_predictions",
    "DEFAULT_THRESHOLD",
    "MatchConfig",
    "tuple_match",
    "convert_pair",
    "convert_pairs",
    "QAPair",
    "read_newsqa",
    "read_squad",
    "QuestionType",
    "classify",
    "DEFAULT_REGISTRY",
    "Extraction",
    "RuleSpec",
    "apply_rules",
    "load_registry",
    "run_rule",
    "__version__",
]
