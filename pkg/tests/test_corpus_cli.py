import json
import subprocess
import sys

import pytest

from autoint import corpus
from autoint.cli import main
from autoint.genlab import enumerate_automata


def read_jsonl(path):
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh]


# ------------------------------------------------------------------ corpus


def test_verify_corpus_2x2(tmp_path):
    out = tmp_path / "sweep.jsonl"
    summary = corpus.verify_corpus(2, 2, out)
    assert summary.total == 16
    assert summary.synchronizing == 12
    assert summary.violations == 0
    assert summary.histogram == {1: 12}
    assert summary.counterexamples_path is None
    assert summary.elapsed_s >= 0

    records = read_jsonl(out)
    assert len(records) == 16
    assert records[0]["id"] == "2x2:0000"
    assert records[-1]["id"] == "2x2:1111"
    sync = [r for r in records if r["synchronizing"]]
    assert len(sync) == 12 and all(r["shortest_len"] == 1 for r in sync)
    assert all(r["bound_ok"] for r in records)

    # a PNG lands next to the report
    assert summary.figure_path == str(out.with_suffix(".png"))
    with open(summary.figure_path, "rb") as fh:
        assert fh.read(8) == b"\x89PNG\r\n\x1a\n"


def test_verify_corpus_reruns_identically(tmp_path):
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    corpus.verify_corpus(2, 2, p1, plot=False)
    corpus.verify_corpus(2, 2, p2, plot=False)
    assert p1.read_bytes() == p2.read_bytes()


def test_verify_corpus_chunking_invariant(tmp_path, monkeypatch):
    # output must not depend on how the index space is partitioned
    ref = tmp_path / "ref.jsonl"
    corpus.verify_corpus(2, 2, ref, plot=False)
    monkeypatch.setattr(corpus, "_CHUNK", 5)
    split = tmp_path / "split.jsonl"
    corpus.verify_corpus(2, 2, split, jobs=2, plot=False)
    assert ref.read_bytes() == split.read_bytes()


def test_verify_corpus_sc_filter(tmp_path):
    out = tmp_path / "sc.jsonl"
    summary = corpus.verify_corpus(2, 2, out, strongly_connected_only=True, plot=False)
    expected = sum(1 for _ in enumerate_automata(2, 2, strongly_connected=True))
    assert summary.total == expected == 9
    assert summary.figure_path is None


def test_verify_corpus_single_state(tmp_path):
    summary = corpus.verify_corpus(1, 1, tmp_path / "one.jsonl", plot=False)
    assert summary.total == 1 and summary.synchronizing == 1
    assert summary.histogram == {0: 1}


def test_verify_corpus_validation(tmp_path):
    with pytest.raises(ValueError):
        corpus.verify_corpus(0, 2, tmp_path / "x.jsonl")
    with pytest.raises(ValueError):
        corpus.verify_corpus(2, 2, tmp_path / "x.jsonl", jobs=0)


def test_summary_json_shape(tmp_path):
    summary = corpus.verify_corpus(2, 1, tmp_path / "s.jsonl", plot=False)
    data = summary.to_json_dict()
    assert data["histogram"] == {"1": 2}
    assert set(data) == {
        "n", "k", "total", "synchronizing", "violations", "histogram",
        "out_path", "counterexamples_path", "figure_path", "elapsed_s",
    }


def test_id_formatting():
    assert corpus._id_of(2, 2, [0, 1, 1, 0]) == "2x2:0110"
    assert corpus._id_of(12, 1, range(12)) == "12x1:0-1-2-3-4-5-6-7-8-9-10-11"


# --------------------------------------------------------------------- cli


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def c3_file(tmp_path, c3):
    return write_json(tmp_path / "c3.json", c3.to_json_dict())


@pytest.fixture
def d4_file(tmp_path, d4):
    return write_json(tmp_path / "d4.json", d4.to_json_dict())


def test_cli_check_sync(c3_file, capsys):
    assert main(["check-sync", c3_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["synchronizing"] and out["word_str"] == "baab" and out["length"] == 4


def test_cli_check_sync_negative(tmp_path, capsys):
    f = write_json(tmp_path / "perm.json", {"letters": ["a"], "delta": [[1], [0]]})
    assert main(["check-sync", f]) == 1
    assert json.loads(capsys.readouterr().out) == {"synchronizing": False}


def test_cli_intervals(d4_file, tmp_path, theta4, capsys):
    assert main(["intervals", d4_file, "--pair", "0", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["interval"] == [0, 1, 2]

    assert main(["intervals", d4_file, "--dense"]) == 0
    assert json.loads(capsys.readouterr().out) == {"dense": True, "witness": None}

    tf = write_json(tmp_path / "theta.json", theta4.to_json_dict())
    assert main(["intervals", tf, "--check-points"]) == 0
    pts = json.loads(capsys.readouterr().out)["check_points"]
    assert pts == [{"pair": [1, 3], "z": 0}, {"pair": [2, 3], "z": 0}]

    assert main(["intervals", d4_file]) == 0
    cells = json.loads(capsys.readouterr().out)["cells"]
    assert cells[0][3] == [0, 1, 2, 3]


def test_cli_intervals_bad_pair(d4_file, capsys):
    assert main(["intervals", d4_file, "--pair", "0", "9"]) == 2


def test_cli_respect(tmp_path, c4, d4, capsys):
    af = write_json(tmp_path / "c4.json", c4.to_json_dict())
    df = write_json(tmp_path / "d4.json", d4.to_json_dict())
    assert main(["respect", af, df]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"letters_ok": True, "violations": []}

    assert main(["respect", af, df, "--words", "50", "--seed", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["words_ok"] and out["words_checked"] == 50


def test_cli_respect_violations(tmp_path, d4, capsys):
    rev = {"letters": ["a", "b"], "delta": [[1, 0], [2, 3], [3, 2], [0, 1]]}
    af = write_json(tmp_path / "rev.json", rev)
    df = write_json(tmp_path / "d4.json", d4.to_json_dict())
    assert main(["respect", af, df]) == 1
    out = json.loads(capsys.readouterr().out)
    assert not out["letters_ok"]
    assert out["violations"][0] == {
        "condition": "II", "letter": "b", "x": 0, "y": 2, "detail": [3],
    }


def test_cli_words_needs_seed(tmp_path, c4, d4, capsys):
    af = write_json(tmp_path / "c4.json", c4.to_json_dict())
    df = write_json(tmp_path / "d4.json", d4.to_json_dict())
    with pytest.raises(SystemExit) as exc:
        main(["respect", af, df, "--words", "5"])
    assert exc.value.code == 2


def test_cli_tower(tmp_path, five_state_blowup, capsys):
    a, _ = five_state_blowup
    af = write_json(tmp_path / "a.json", a.to_json_dict())
    cert = {
        "levels": [
            {"n": 5, "edges": [[1, 2], [2, 1], [3, 4], [4, 3]]},
            {"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]},
        ]
    }
    cf = write_json(tmp_path / "cert.json", cert)
    assert main(["tower", "verify", af, cf]) == 0
    assert json.loads(capsys.readouterr().out)["ok"]

    assert main(["tower", "reset", af, cf]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["word_str"] == "baabaa" and out["bound_ok"]

    bad = write_json(tmp_path / "bad.json", {"levels": [{"n": 3, "edges": []}]})
    assert main(["tower", "verify", af, bad]) == 1
    assert main(["tower", "reset", af, bad]) == 1
    capsys.readouterr()

    short = write_json(tmp_path / "short.json", {"levels": [cert["levels"][0]]})
    assert main(["tower", "verify", af, short, "--base", "cerny"]) == 0
    assert main(["tower", "reset", af, short, "--base", "cerny"]) == 0


def test_cli_reset_prop1(tmp_path, five_state_blowup, capsys):
    a, p = five_state_blowup
    af = write_json(tmp_path / "a.json", a.to_json_dict())
    pf = write_json(tmp_path / "p.json", {"blocks": p.to_blocks_list()})
    assert main(["reset-prop1", af, pf]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["length"] == 6 and out["bound"] == 6 and out["bound_ok"]

    nf = write_json(tmp_path / "nop.json", {"nope": 1})
    assert main(["reset-prop1", af, nf]) == 2


def test_cli_wm_level(tmp_path, capsys):
    f = write_json(
        tmp_path / "m.json",
        {"letters": ["a", "b"], "delta": [[0, 1], [0, 2], [1, 2]]},
    )
    assert main(["wm-level", f, "--max", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == {"level": 1, "max_level": 3}


def test_cli_gen(capsys):
    assert main(["gen", "cerny", "--states", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["delta"] == [[1, 1], [2, 1], [0, 2]]

    assert main(["gen", "orientable", "--states", "5", "--seed", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"automaton", "digraph"}

    assert (
        main(
            [
                "gen", "unique-return", "--cycles", "3,3",
                "--dag-edge", "0:1", "--seed", "2",
            ]
        )
        == 0
    )
    out = json.loads(capsys.readouterr().out)
    assert out["digraph"]["n"] == 6

    assert main(["gen", "monotonic", "--states", "5", "--seed", "1"]) == 0
    capsys.readouterr()
    assert main(["gen", "random", "--states", "4", "--seed", "0"]) == 0
    capsys.readouterr()


def test_cli_enumerate(tmp_path, capsys):
    out_path = tmp_path / "e.jsonl"
    assert (
        main(
            [
                "enumerate", "--states", "2", "--letters", "2",
                "--out", str(out_path), "--no-plot",
            ]
        )
        == 0
    )
    summary = json.loads(capsys.readouterr().out)
    assert summary["total"] == 16 and summary["violations"] == 0
    assert len(read_jsonl(out_path)) == 16

    png = tmp_path / "fig.png"
    assert (
        main(
            [
                "enumerate", "--states", "2", "--letters", "1",
                "--out", str(tmp_path / "e2.jsonl"), "--plot-path", str(png),
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert png.exists()


def test_cli_dot(tmp_path, c4, d4, capsys):
    af = write_json(tmp_path / "a.json", c4.to_json_dict())
    assert main(["dot", af]) == 0
    assert "digraph automaton" in capsys.readouterr().out
    df = write_json(tmp_path / "d.json", d4.to_json_dict())
    assert main(["dot", df]) == 0
    assert "0 -> 1;" in capsys.readouterr().out
    bad = write_json(tmp_path / "x.json", {"weird": True})
    assert main(["dot", bad]) == 2


def test_cli_error_exits(tmp_path, capsys):
    assert main(["check-sync", str(tmp_path / "missing.json")]) == 2
    garbled = tmp_path / "g.json"
    garbled.write_text("{not json", encoding="utf-8")
    assert main(["check-sync", str(garbled)]) == 2
    err = capsys.readouterr().err
    assert "invalid JSON" in err


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "autoint.cli", "gen", "cerny", "--states", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["delta"] == [[1, 1], [0, 1]]
