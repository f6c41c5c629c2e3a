"""Score a predictions file against gold tuples with embedding matching.

Shows the two halves of evaluation on checked-in fixtures: a single
tuple-to-tuple match with its per-slot similarities, then the full
precision/recall sweep over a confidence-ranked predictions TSV.

Run from the repository root:

    python demos/score_predictions.py
"""

from pathlib import Path

from qa2oie import (
    Extraction,
    area_under_pr,
    evaluate,
    load_gold,
    load_predictions,
    load_vectors,
    tuple_match,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main() -> None:
    table = load_vectors((DATA / "vectors.txt").read_text())

    pred = Extraction(subject="Maria Chen", relation="works for", object="Acme")
    gold = Extraction(subject="Maria Chen", relation="is employed by", object="Acme")
    ok, sims = tuple_match(pred, gold, table)
    print("single match, paraphrased relation:")
    print(f"  sims (subject, relation, object) = {tuple(round(s, 6) for s in sims)}")
    print(f"  match at default threshold: {ok}")

    gold_set = load_gold((DATA / "gold_tuples.tsv").read_text())
    preds = load_predictions((DATA / "trainer_preds.tsv").read_text())
    points = evaluate(preds, gold_set, table)
    print(f"\nPR sweep over {len(preds)} predictions vs {len(gold_set)} gold tuples:")
    for point in points:
        print(
            f"  cutoff {point.confidence_cutoff:>6}: precision {point.precision:.3f}"
            f" recall {point.recall:.3f} ({point.matched}/{point.predicted} matched)"
        )
    print(f"area under the curve: {area_under_pr(points):.6f}")


if __name__ == "__main__":
    main()
