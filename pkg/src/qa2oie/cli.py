"""Command-line interface.

Subcommands:
    convert  QA dataset + CoNLL-U parses -> corpus directory
    stats    print a corpus summary table from stats.json
    sample   print a seeded random audit sheet from corpus.jsonl
    match    debug one prediction/gold tuple pair (per-slot similarities)
    eval     score a predictions TSV against gold, write pr_curve.csv

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from .corpus import CorpusStats, read_corpus, split_validation, write_corpus
from .conllu import parse_conllu
from .embeddings import load_vectors
from .errors import Qa2OieError
from .evaluation import area_under_pr, evaluate, load_gold, load_predictions, write_pr_csv
from .matching import DEFAULT_THRESHOLD, MatchConfig, slot_similarities
from .pipeline import convert_pairs
from .qa_readers import load_story_dir, read_newsqa, read_squad
from .questions import DEFAULT_MAX_QUESTION_CHARS
from .rules import DEFAULT_REGISTRY, Extraction, load_registry

log = logging.getLogger(__name__)

# Labels used when hand-auditing sampled tuples, mirroring the error
# classes seen in manual review: how the relation relates to the sentence.
AUDIT_CATEGORIES = (
    "noun-mediated",
    "sentence-level inference",
    "long sentence",
    "nominalization",
    "noisy informal",
    "pp-attachment",
    "explicit",
    "misaligned",
)

# Published reference corpus sizes, printed next to `stats` output so a
# full-data run can be compared at a glance.
REFERENCE_TOTALS = {"sentences": 89653, "train_tuples": 107595, "validation_tuples": 1000}


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit 1 (2 is reserved for data errors)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _threshold_arg(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be within [0, 1], got {text}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="qa2oie", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser("convert", help="convert a QA dataset into a tuple corpus")
    p_convert.add_argument("--input", required=True, help="dataset file (JSON or CSV)")
    p_convert.add_argument("--format", required=True, choices=("squad", "newsqa"))
    p_convert.add_argument("--parses", required=True, help="CoNLL-U parses of the questions, keyed by QA id")
    p_convert.add_argument("--out", required=True, help="output directory")
    p_convert.add_argument("--stories", help="story directory for NewsQA CSV without story_text")
    p_convert.add_argument("--rules", help="registry ordering config (one rule id per line)")
    p_convert.add_argument(
        "--max-question-chars",
        type=int,
        default=DEFAULT_MAX_QUESTION_CHARS,
        help="questions longer than this are ignored (default %(default)s)",
    )
    p_convert.add_argument("--validation-n", type=int, default=0, help="validation split size")
    p_convert.add_argument("--seed", type=int, default=0, help="seed for the validation split")
    p_convert.add_argument("--jobs", type=int, default=1, help="worker threads (output is order-preserving)")

    p_stats = sub.add_parser("stats", help="summarize a corpus directory")
    p_stats.add_argument("--corpus", required=True, help="corpus directory or stats.json path")

    p_sample = sub.add_parser(
        "sample",
        help="print a random audit sheet",
        epilog="Suggested audit categories: " + ", ".join(AUDIT_CATEGORIES) + ".",
    )
    p_sample.add_argument("--corpus", required=True, help="corpus.jsonl path")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--seed", type=int, default=0)

    p_match = sub.add_parser("match", help="similarities for one prediction/gold pair")
    p_match.add_argument("--embeddings", required=True)
    p_match.add_argument("--vocab-limit", type=int, default=None)
    p_match.add_argument("--threshold", type=_threshold_arg, default=DEFAULT_THRESHOLD)
    p_match.add_argument("--pred", nargs=3, required=True, metavar=("SUBJ", "REL", "OBJ"))
    p_match.add_argument("--gold", nargs=3, required=True, metavar=("SUBJ", "REL", "OBJ"))

    p_eval = sub.add_parser("eval", help="PR curve for a predictions file")
    p_eval.add_argument("--gold", required=True, help="gold TSV: sentence, subject, relation, object")
    p_eval.add_argument("--preds", required=True, help="predictions TSV with a confidence column")
    p_eval.add_argument("--embeddings", required=True)
    p_eval.add_argument("--vocab-limit", type=int, default=None)
    p_eval.add_argument("--threshold", type=_threshold_arg, default=DEFAULT_THRESHOLD)
    p_eval.add_argument("--out", default="pr_curve.csv", help="output CSV path (default %(default)s)")

    return parser


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _cmd_convert(args: argparse.Namespace) -> int:
    text = _read_text(args.input)
    if args.format == "squad":
        pairs, reader_dropped = read_squad(text)
    else:
        stories = load_story_dir(args.stories) if args.stories else None
        pairs, reader_dropped = read_newsqa(text, stories)
    trees = parse_conllu(_read_text(args.parses))
    trees_by_id = {tree.sent_id: tree for tree in trees}
    registry = load_registry(args.rules) if args.rules else DEFAULT_REGISTRY

    examples, drops = convert_pairs(
        pairs,
        trees_by_id,
        registry=registry,
        max_question_chars=args.max_question_chars,
        jobs=max(1, args.jobs),
    )
    drops["reader_dropped"] = drops.get("reader_dropped", 0) + reader_dropped

    train, validation = split_validation(examples, args.validation_n, args.seed)
    stats = write_corpus(train, args.out, drops=drops, validation=validation)
    print(json.dumps(stats.to_dict(), indent=2, sort_keys=True))
    return 0


def _load_stats(path: str) -> CorpusStats:
    p = Path(path)
    if p.is_dir():
        p = p / "stats.json"
    with open(p, encoding="utf-8") as handle:
        return CorpusStats.from_dict(json.load(handle))


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = _load_stats(args.corpus)
    rows = [("source", "sentences", "train tuples", "validation tuples")]
    for source in sorted(stats.tuples_by_source):
        rows.append(
            (source, str(stats.sentences_by_source.get(source, 0)), str(stats.tuples_by_source[source]), "-")
        )
    rows.append(
        ("total", str(stats.total_sentences), str(stats.total_tuples), str(stats.validation_tuples))
    )
    rows.append(
        (
            "reference",
            str(REFERENCE_TOTALS["sentences"]),
            str(REFERENCE_TOTALS["train_tuples"]),
            str(REFERENCE_TOTALS["validation_tuples"]),
        )
    )
    widths = [max(len(row[col]) for row in rows) for col in range(4)]
    for row in rows:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    drops = ", ".join(f"{cause}={count}" for cause, count in sorted(stats.drops.items()))
    print(f"drops: {drops}")
    print("(reference = published full-data corpus, for comparison)")
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    examples = read_corpus(args.corpus)
    if args.n > len(examples):
        raise Qa2OieError(f"sample size {args.n} exceeds corpus size {len(examples)}")
    picked = random.Random(args.seed).sample(range(len(examples)), args.n)
    print("categories: " + ", ".join(AUDIT_CATEGORIES))
    for row, i in enumerate(picked, start=1):
        ex = examples[i]
        print(f"--- {row} [{ex.qa_id}] rule={ex.extraction.rule_id}")
        print(f"sentence: {ex.sentence}")
        print(f"tuple: ({ex.extraction.subject} ; {ex.extraction.relation} ; {ex.extraction.object})")
        flags = ", ".join(ex.flags) if ex.flags else "-"
        print(f"flags: {flags}")
        print("category: ____________")
    return 0


def _cmd_match(args: argparse.Namespace) -> int:
    with open(args.embeddings, encoding="utf-8") as handle:
        table = load_vectors(handle, limit=args.vocab_limit)
    config = MatchConfig(threshold=args.threshold)
    pred = Extraction(subject=args.pred[0], relation=args.pred[1], object=args.pred[2])
    gold = Extraction(subject=args.gold[0], relation=args.gold[1], object=args.gold[2])
    sims = slot_similarities(pred, gold, table)
    verdict = "match" if min(sims) > config.threshold else "no match"
    print(f"sim_subject={sims[0]:.6f} sim_relation={sims[1]:.6f} sim_object={sims[2]:.6f}")
    print(f"threshold={config.threshold:g} -> {verdict}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    gold = load_gold(_read_text(args.gold))
    preds = load_predictions(_read_text(args.preds))
    with open(args.embeddings, encoding="utf-8") as handle:
        table = load_vectors(handle, limit=args.vocab_limit)
    points = evaluate(preds, gold, table, MatchConfig(threshold=args.threshold))
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        write_pr_csv(points, handle)
    print(f"auc {area_under_pr(points):.6f}")
    return 0


_COMMANDS = {
    "convert": _cmd_convert,
    "stats": _cmd_stats,
    "sample": _cmd_sample,
    "match": _cmd_match,
    "eval": _cmd_eval,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (Qa2OieError, OSError) as exc:
        print(f"qa2oie: error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
