"""oie_baseline: question parsing helper and seq2seq tuple generator.

Two standalone batch tools around the qa2oie file formats: ``prep``
turns a QA dataset's questions into the CoNLL-U bundle the converter
reads, and the trainer fits an attentional encoder/decoder on the
converter's src/tgt output, emitting beam-scored predictions in the
evaluator's five-column TSV format.
"""

from .data import ParallelCorpus, make_batches, read_parallel
from .decode import PredictionRow, beam_decode, parse_markers, predict, write_predictions
from .errors import BaselineError, ConfigError, CorpusError, ParserError
from .model import Seq2Seq, TrainConfig
from .prep import BACKENDS, PrepSummary, extract_questions, prep_parses, whitespace_parse
from .train import TrainedModel, load_model, save_model, train, write_log
from .vocab import BOS, EOS, PAD, UNK, Vocab, build_vocab

__version__ = "0.1.0"

__all__ = [
    "ParallelCorpus",
    "make_batches",
    "read_parallel",
    "PredictionRow",
    "beam_decode",
    "parse_markers",
    "predict",
    "write_predictions",
    "BaselineError",
    "ConfigError",
    "CorpusError",
    "ParserError",
    "Seq2Seq",
    "TrainConfig",
    "BACKENDS",
    "PrepSummary",
    "extract_questions",
    "prep_parses",
    "whitespace_parse",
    "TrainedModel",
    "load_model",
    "save_model",
    "train",
    "write_log",
    "Vocab",
    "build_vocab",
    "PAD",
    "UNK",
    "BOS",
    "EOS",
    "__version__",
]
