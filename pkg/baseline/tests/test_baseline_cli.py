"""End-to-end command-line checks: prep, train, predict, exit codes."""

import json
import subprocess
import sys

import pytest

from oie_baseline.cli import main

SQUAD = json.dumps({
    "data": [
        {
            "title": "Acme",
            "paragraphs": [
                {
                    "context": "Maria Chen works for Acme.",
                    "qas": [
                        {"id": "q-001", "question": "Who works for Acme?"},
                        {"id": "q-002", "question": "Where does Maria Chen work?"},
                    ],
                }
            ],
        }
    ]
})


@pytest.fixture()
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


class TestPrep:
    def test_whitespace_backend_end_to_end(self, run, tmp_path):
        source = tmp_path / "squad.json"
        source.write_text(SQUAD)
        out = tmp_path / "questions.conllu"
        code, stdout, _ = run(
            "prep", "--input", str(source), "--format", "squad",
            "--out", str(out), "--backend", "whitespace",
        )
        assert code == 0
        assert json.loads(stdout) == {"failed": 0, "parsed": 2, "questions": 2}
        text = out.read_text()
        assert "# sent_id = q-001" in text
        assert "# text = Who works for Acme?" in text

    def test_missing_input_exits_2(self, run, tmp_path):
        code, _, stderr = run(
            "prep", "--input", str(tmp_path / "nope.json"), "--format", "squad",
            "--out", str(tmp_path / "o.conllu"), "--backend", "whitespace",
        )
        assert code == 2
        assert "error" in stderr


class TestTrainPredict:
    def test_round_trip(self, run, tmp_path, data_dir):
        model = tmp_path / "model.pt"
        log = tmp_path / "log.jsonl"
        code, stdout, _ = run(
            "train",
            "--src", str(data_dir / "toy_src.txt"),
            "--tgt", str(data_dir / "toy_tgt.txt"),
            "--out", str(model),
            "--log", str(log),
            "--hidden-size", "16", "--embedding-size", "12",
            "--epochs", "1", "--batch-size", "50", "--seed", "3",
        )
        assert code == 0
        assert stdout.startswith("epochs 1 valid_perplexity ")
        assert len(log.read_text().splitlines()) == 1

        sentences = tmp_path / "sentences.txt"
        sentences.write_text("Maria Chen works for Acme .\n\nOmar Patel runs Globex .\n")
        tsv = tmp_path / "predictions.tsv"
        code, stdout, _ = run(
            "predict", "--model", str(model), "--src", str(sentences),
            "--out", str(tsv), "--beam-size", "3",
        )
        assert code == 0
        words = stdout.split()
        assert words[0] == "rows" and words[2] == "malformed"
        assert int(words[1]) + int(words[3]) == 6  # two sentences, three beams each
        lines = tsv.read_text().splitlines()
        assert len(lines) == int(words[1])
        assert all(line.count("\t") == 4 for line in lines)


class TestExitCodes:
    def test_no_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_unknown_backend_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main([
                "prep", "--input", "x", "--format", "squad",
                "--out", str(tmp_path / "y"), "--backend", "phrenology",
            ])
        assert exc.value.code == 1

    def test_bad_hyperparameter_exits_2(self, run, data_dir, tmp_path):
        code, _, stderr = run(
            "train",
            "--src", str(data_dir / "toy_src.txt"),
            "--tgt", str(data_dir / "toy_tgt.txt"),
            "--out", str(tmp_path / "m.pt"),
            "--dropout", "1.0",
        )
        assert code == 2
        assert "dropout" in stderr


class TestModuleEntry:
    def test_help_via_module(self):
        result = subprocess.run(
            [sys.executable, "-m", "oie_baseline", "--help"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "prep" in result.stdout
        assert "predict" in result.stdout
