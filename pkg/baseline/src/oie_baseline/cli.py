"""Command-line interface.

Subcommands:
    prep     parse a QA dataset's questions into CoNLL-U
    train    fit the seq2seq model on parallel src/tgt files
    predict  beam-decode sentences into a predictions TSV

Exit codes: 0 success, 1 usage error, 2 data/parser error.
"""

import argparse
import dataclasses
import json
import sys

from .decode import predict, write_predictions
from .errors import BaselineError
from .model import TrainConfig
from .prep import BACKENDS, extract_questions, prep_parses
from .train import load_model, save_model, train, write_log


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit 1 (2 is reserved for data errors)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


_DEFAULTS = TrainConfig()


def _build_parser() -> _Parser:
    parser = _Parser(prog="oie-baseline", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_prep = sub.add_parser("prep", help="parse QA questions into CoNLL-U")
    p_prep.add_argument("--input", required=True, help="dataset file (JSON or CSV)")
    p_prep.add_argument("--format", required=True, choices=("squad", "newsqa"))
    p_prep.add_argument("--out", required=True, help="CoNLL-U output path")
    p_prep.add_argument("--backend", default="spacy", choices=sorted(BACKENDS))

    p_train = sub.add_parser("train", help="train the tuple generator")
    p_train.add_argument("--src", required=True)
    p_train.add_argument("--tgt", required=True)
    p_train.add_argument("--valid-src")
    p_train.add_argument("--valid-tgt")
    p_train.add_argument("--out", required=True, help="checkpoint path")
    p_train.add_argument("--log", help="training log path (jsonl)")
    for name in ("layers", "hidden-size", "embedding-size", "epochs", "batch-size", "seed", "min-count"):
        field = name.replace("-", "_")
        p_train.add_argument(f"--{name}", type=int, default=getattr(_DEFAULTS, field))
    for name in ("dropout", "learning-rate", "lr-decay", "grad-clip"):
        field = name.replace("-", "_")
        p_train.add_argument(f"--{name}", type=float, default=getattr(_DEFAULTS, field))

    p_predict = sub.add_parser("predict", help="decode sentences into a predictions TSV")
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--src", required=True, help="one sentence per line")
    p_predict.add_argument("--out", required=True, help="predictions TSV path")
    p_predict.add_argument("--beam-size", type=int, default=_DEFAULTS.beam_size)
    p_predict.add_argument("--max-len", type=int, default=_DEFAULTS.max_decode_len)

    return parser


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _cmd_prep(args: argparse.Namespace) -> int:
    questions = extract_questions(_read_text(args.input), args.format)
    parse = BACKENDS[args.backend]()
    conllu, summary = prep_parses(questions, parse)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(conllu)
    print(json.dumps(dataclasses.asdict(summary), sort_keys=True))
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = TrainConfig(
        layers=args.layers,
        hidden_size=args.hidden_size,
        embedding_size=args.embedding_size,
        dropout=args.dropout,
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        lr_decay=args.lr_decay,
        grad_clip=args.grad_clip,
        min_count=args.min_count,
        seed=args.seed,
    )
    valid_src = _read_text(args.valid_src) if args.valid_src else None
    valid_tgt = _read_text(args.valid_tgt) if args.valid_tgt else None
    trained = train(_read_text(args.src), _read_text(args.tgt), config, valid_src, valid_tgt)
    save_model(trained, args.out)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as handle:
            write_log(trained.log, handle)
    final = trained.log[-1]
    print(f"epochs {final['epoch']} valid_perplexity {final['valid_perplexity']:.4f}")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    trained = load_model(args.model)
    sentences = [line for line in _read_text(args.src).splitlines() if line.strip()]
    rows, malformed = predict(trained, sentences, args.beam_size, args.max_len)
    with open(args.out, "w", encoding="utf-8") as handle:
        write_predictions(rows, handle)
    print(f"rows {len(rows)} malformed {malformed}")
    return 0


_COMMANDS = {"prep": _cmd_prep, "train": _cmd_train, "predict": _cmd_predict}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (BaselineError, OSError) as exc:
        print(f"oie-baseline: error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
