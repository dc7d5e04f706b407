import io
import json
from pathlib import Path

import pytest

from pwcolor.cli import main
from pwcolor.graph import generate, write_dimacs
from pwcolor.tables import PUBLISHED

WEIGHTS = Path(__file__).resolve().parent.parent / "data" / "weights"


def run(*argv):
    buf = io.StringIO()
    code = main(list(map(str, argv)), out=buf)
    return code, buf.getvalue()


@pytest.fixture
def col(tmp_path):
    def make(kind, n=0, **kw):
        path = tmp_path / f"{kind}{n}.col"
        path.write_text(write_dimacs(generate(kind, n, **kw)))
        return path

    return make


def test_solve_and_count(col):
    c5 = col("cycle", 5)
    assert run("solve", c5, "--colors", 3) == (0, "YES\n")
    assert run("count", c5, "--colors", 3) == (0, "30\n")
    assert run("solve", "--input", col("complete", 5), "--colors", 4) == (0, "NO\n")
    code, out = run("count", c5, "--colors", 3, "--oracle", "--stats")
    assert code == 0 and out.splitlines()[0] == "30"
    assert "nodes_visited" in out and "pw_triggered" in out


def test_solve_variants(col):
    pet = col("petersen")
    for extra in ([], ["--no-pathwidth"], ["--alpha", "0"], ["--degree-switch", "3"]):
        assert run("count", pet, "--colors", 3, *extra) == (0, "120\n")


def test_bad_inputs(col, tmp_path):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 2 1\ne 1 5\n")
    assert run("solve", bad, "--colors", 3)[0] == 2
    assert run("solve", tmp_path / "missing.col", "--colors", 3)[0] == 2
    assert run("solve", col("path", 3))[0] == 2
    assert run("solve", col("path", 3), "--input", col("cycle", 4), "--colors", 3)[0] == 2
    assert run("solve", "--colors", 3)[0] == 2
    assert run("analyze", "--colors", 4, "--pieces", 0)[0] == 2
    assert run("analyze", "--colors", 4, "--subroutine-exponent", "log2:x")[0] == 2
    assert run("nosuch")[0] == 2


def test_oracle_size_guard(col):
    code, out = run("count", col("path", 15), "--colors", 3, "--oracle")
    assert code == 2 and out == ""


def test_oracle_mismatch_prints_nothing(col, monkeypatch):
    from pwcolor import engine

    def wrong(g, c, **kw):
        return engine.EngineResult(answer=-1)

    monkeypatch.setattr(engine, "solve_count", wrong)
    code, out = run("count", col("cycle", 5), "--colors", 3, "--oracle")
    assert code == 4 and out == ""


def test_analyze_outputs(tmp_path):
    rep, tab = tmp_path / "r.json", tmp_path / "r.csv"
    code, out = run("analyze", "--colors", 4, "--pieces", 10, "--subroutine-exponent", "log2:1.3289",
                    "--out", rep, "--csv", tab)
    assert code == 0 and out.strip().endswith("max base 1.7257")
    doc = json.loads(rep.read_text())
    assert doc["params"]["p"] == 10 and doc["params"]["version"] and len(doc["pieces"]) == 10
    assert len(tab.read_text().splitlines()) == 11


def test_analyze_single_piece():
    code, out = run("analyze", "--colors", 4, "--pieces", 1, "--subroutine-exponent", "log2:1.3289")
    assert code == 0 and "max base 1.7275" in out


def test_analyze_deterministic_across_threads(tmp_path, monkeypatch):
    outs = []
    for t in (1, 3):
        monkeypatch.setenv("PWCOLOR_THREADS", str(t))
        path = tmp_path / f"r{t}.json"
        code, out = run("analyze", "--colors", 4, "--pieces", 300, "--subroutine-exponent", "log2:1.3289",
                        "--out", path)
        outs.append((out, path.read_bytes()))
    assert outs[0] == outs[1]


def test_analyze_optimizer_failure(monkeypatch):
    from pwcolor import analyzer

    def boom(*a, **k):
        raise analyzer.OptimizerError("no progress")

    monkeypatch.setattr(analyzer, "piecewise_analyze", boom)
    assert run("analyze", "--colors", 4) == (3, "")


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"analyze": {"pieces": 10, "c_prime": "log2:1.3289"}}))
    code, out = run("--config", cfg, "analyze", "--colors", 4)
    assert code == 0 and "max base 1.7257" in out
    # explicit flags win over the file
    code, out = run("--config", cfg, "analyze", "--colors", 4, "--pieces", 1)
    assert "max base 1.7275" in out
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run("--config", cfg, "analyze", "--colors", 4)[0] == 2


def test_verify_published():
    code, out = run("verify", "--weights", WEIGHTS / "four_coloring_550.json", "--colors", 4)
    assert code == 0 and "feasible yes" in out
    base = float(out.strip().splitlines()[-1].split()[1])
    assert abs(base - 1.7207) <= 1e-3
    code, out = run("verify", "--weights", WEIGHTS / "counting_5000.json", "--colors", 3, "--counting")
    assert code == 0 and abs(float(out.strip().splitlines()[-1].split()[1]) - 1.6225) <= 1e-3


def test_verify_infeasible_and_malformed(tmp_path):
    z = tmp_path / "z.json"
    z.write_text(json.dumps({"w1": 0, "ws": 0, "wk": {}, "alpha": 0, "l": 0, "u": 0.75}))
    code, out = run("verify", "--weights", z, "--colors", 4)
    assert code == 1 and "feasible no" in out and "slack degree=1 2.000000" in out
    z.write_text("{not json")
    assert run("verify", "--weights", z, "--colors", 4) == (2, "")
    z.write_text(json.dumps({"w1": 0, "ws": 0, "wk": {}, "alpha": 0}))
    assert run("verify", "--weights", z, "--colors", 4)[0] == 2


def test_weight_files_match_published():
    for name, e in PUBLISHED.items():
        doc = json.loads((WEIGHTS / f"{name}.json").read_text())
        assert doc["w1"] == e["weights"].w1 and doc["l"] == e["piece"].l


def test_decompose(col, tmp_path):
    code, out = run("decompose", col("path", 4))
    assert code == 0 and out.startswith("width 1\nvalid yes\n")
    dest = tmp_path / "pd.json"
    code, _ = run("decompose", col("petersen"), "--out", dest)
    doc = json.loads(dest.read_text())
    assert code == 0 and doc["valid"] and doc["width"] >= 4
    assert run("decompose", col("complete", 4), "--method", "low-degree")[0] == 2


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.col", tmp_path / "b.col"
    for p in (a, b):
        assert run("gen", "--kind", "gnp", "--n", 10, "--p", 0.5, "--seed", 1, "--out", p)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out = run("gen", "--kind", "cycle", "--n", 2)
    assert code == 2 and out == ""


def test_bench(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for i in range(4):
        (corpus / f"g{i}.col").write_text(write_dimacs(generate("gnp", 7, p=0.5, seed=i)))
    code, out = run("bench", "--corpus", corpus, "--colors", 3, "--oracle")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 5 and lines[0].startswith("instance,n,m")
    assert all(line.endswith(",yes") for line in lines[1:])
    assert run("bench", "--corpus", corpus, "--colors", 3, "--threads", 3) == run(
        "bench", "--corpus", corpus, "--colors", 3
    )
    code, timed = run("bench", "--corpus", corpus, "--colors", 3, "--mode", "count", "--timing")
    assert code == 0 and timed.splitlines()[0].endswith(",seconds")
    assert run("bench", "--corpus", tmp_path / "none", "--colors", 3)[0] == 2
