"""Overfit the seq2seq baseline on its toy corpus and score the output.

Trains a deliberately small model on the 100-pair toy corpus, beam-decodes
the training sentences back into marker strings, and hands the resulting
predictions TSV to the tuple evaluator. Needs both packages installed
(``pip install -e . -e baseline``).

Run from the repository root (a couple of minutes on CPU):

    python demos/overfit_toy_baseline.py
"""

import io
from pathlib import Path

from oie_baseline import TrainConfig, beam_decode, predict, train, write_predictions
from qa2oie import area_under_pr, evaluate, load_gold, load_predictions, load_vectors

DATA = Path(__file__).resolve().parent.parent / "baseline" / "tests" / "data"


def main() -> None:
    src = (DATA / "toy_src.txt").read_text()
    tgt = (DATA / "toy_tgt.txt").read_text()
    config = TrainConfig(epochs=30, batch_size=20, seed=7)
    trained = train(src, tgt, config)
    print(f"trained {config.epochs} epochs;"
          f" final validation perplexity {trained.log[-1]['valid_perplexity']:.4f}")

    sentence = src.splitlines()[0]
    print(f"\nbeam decode of {sentence!r}:")
    for tokens, score in beam_decode(trained, sentence.split(), beam_size=3):
        print(f"  {score:8.4f}  {' '.join(tokens)}")

    rows, malformed = predict(trained, src.splitlines())
    buffer = io.StringIO()
    write_predictions(rows, buffer)
    print(f"\npredicted {len(rows)} rows ({malformed} malformed decodes dropped)")

    table = load_vectors((DATA / "vectors.txt").read_text())
    gold = load_gold((DATA / "toy_gold.tsv").read_text())
    points = evaluate(load_predictions(buffer.getvalue()), gold, table)
    best_recall = max(point.recall for point in points)
    print(f"evaluator: {len(points)} PR points,"
          f" best recall {best_recall:.3f}, auc {area_under_pr(points):.6f}")


if __name__ == "__main__":
    main()
