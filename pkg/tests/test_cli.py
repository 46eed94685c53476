import json

import jsonschema
import pytest

from pmdm.cli import main

from support import T1_ENTRIES


def load_schema(name):
    import importlib.resources as resources

    with resources.files("pmdm.schemas").joinpath(name).open("r") as fh:
        return json.load(fh)


@pytest.fixture()
def t1_file(tmp_path):
    path = tmp_path / "t1.txt"
    path.write_text("\n".join(T1_ENTRIES) + "\n", encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out) if out else None


def test_solve_success(capsys, t1_file):
    code, data = run_json(capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4")
    assert code == 0
    assert data == {"k": 3, "positions": [1, 2, 4], "matches": 4, "masked": "??a?"}
    jsonschema.validate(data, load_schema("solve-result.schema.json"))


def test_solve_infeasible_exit_code(capsys, t1_file):
    code, out = run_cli(capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "9")
    assert code == 1 and out == ""


def test_solve_mixed_length_dictionary_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("ab\nabc\n", encoding="utf-8")
    code, _ = run_cli(capsys, "solve", "--dict", str(bad), "--query", "ab", "--z", "1")
    assert code == 2


def test_capacity_guard_exit_code(capsys, t1_file, tmp_path, monkeypatch):
    monkeypatch.setenv("PMDM_TABLE_LIMIT", "2")
    out = tmp_path / "idx.bin"
    code, _ = run_cli(
        capsys, "index", "build", "--dict", t1_file, "--kind", "small", "--out", str(out)
    )
    assert code == 3


def test_usage_error_exit_code(capsys, t1_file):
    assert main(["solve", "--dict", t1_file, "--query", "abab"]) == 2


def test_mask_count_round_trip(capsys, t1_file):
    code, solved = run_json(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4"
    )
    assert code == 0
    code, masked = run_json(
        capsys, "mask", "--query", "abab", "--positions", json.dumps(solved["positions"])
    )
    assert code == 0 and masked["masked"] == solved["masked"]
    code, counted = run_json(
        capsys, "count", "--dict", t1_file, "--masked", masked["masked"]
    )
    assert code == 0 and counted["matches"] == solved["matches"]


def test_greedy_and_baseline_outputs(capsys, t1_file):
    schema = load_schema("solve-result.schema.json")
    code, data = run_json(
        capsys, "greedy", "--dict", t1_file, "--query", "abab", "--z", "4", "--tau", "3"
    )
    assert code == 0 and data["k"] == 3 and data["iterations"] == 1
    jsonschema.validate(data, schema)
    code, data = run_json(
        capsys, "baseline", "--dict", t1_file, "--query", "abab", "--z", "2"
    )
    assert code == 0 and data["k"] == 1 and data["matches"] >= 2
    jsonschema.validate(data, schema)


def test_solve_multi_query(capsys, tmp_path):
    d = tmp_path / "d.txt"
    d.write_text("aa\nab\nba\n", encoding="utf-8")
    queries = tmp_path / "q.txt"
    queries.write_text("aa\nbb\n", encoding="utf-8")
    code, data = run_json(
        capsys, "solve", "--dict", str(d), "--multi", str(queries), "--z", "2"
    )
    assert code == 0
    assert data["k"] == 2 and data["positions"] == [1, 2]
    assert data["matches"] == [3, 3]
    assert data["masked"] == ["??", "??"]


def test_dump_hypergraph(capsys, t1_file):
    code, data = run_json(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4",
        "--dump-hypergraph",
    )
    assert code == 0
    assert data["l"] == 4 and data["base"] == 1
    assert [e["nodes"] for e in data["edges"]] == [[1], [2, 4], [3], [4]]


def test_output_formats(capsys, t1_file):
    code, out = run_cli(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4",
        "--format", "plain",
    )
    assert code == 0 and out == "k=3 positions=[1,2,4] matches=4 masked=??a?"
    code, out = run_cli(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "k,positions,matches,masked"


def test_custom_wildcard_glyph(capsys, t1_file):
    code, data = run_json(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "4",
        "--wildcard", "*",
    )
    assert code == 0 and data["masked"] == "**a*"


@pytest.mark.parametrize(
    "kind,extra",
    [("small", []), ("simple", ["--k", "1"]), ("split", ["--tau", "2"])],
)
def test_index_build_and_query(capsys, t1_file, tmp_path, kind, extra):
    out = tmp_path / f"{kind}.bin"
    code, _ = run_json(
        capsys, "index", "build", "--dict", t1_file, "--kind", kind, *extra,
        "--out", str(out),
    )
    assert code == 0
    code, data = run_json(
        capsys, "index", "query", "--index", str(out), "--query", "abab", "--z", "2"
    )
    assert code == 0
    assert data["found"] and data["k"] == 1 and data["matches"] == 2


def test_index_query_not_found(capsys, t1_file, tmp_path):
    out = tmp_path / "simple.bin"
    run_json(
        capsys, "index", "build", "--dict", t1_file, "--kind", "simple",
        "--k", "1", "--z0", "2", "--out", str(out),
    )
    code, data = run_json(
        capsys, "index", "query", "--index", str(out), "--query", "abab", "--z", "3"
    )
    assert code == 0 and data == {"found": False}


def test_reduce_clique_round_trip(capsys, tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text("3\n1 2\n1 3\n2 3\n", encoding="utf-8")
    out = tmp_path / "cl.txt"
    code, data = run_json(
        capsys, "reduce", "clique", "--graph", str(graph), "--k", "3",
        "--out-dict", str(out),
    )
    assert code == 0
    assert data["query"] == "aaa" and data["z"] == 3 and data["d"] == 3
    assert out.read_text().split() == ["bba", "bab", "abb"]
    code, solved = run_json(
        capsys, "solve", "--dict", str(out), "--query", "aaa", "--z", "3"
    )
    assert code == 0 and solved["k"] == 3


def test_reduce_mu_round_trip(capsys, t1_file, tmp_path):
    mu_path = tmp_path / "mu.json"
    code, _ = run_json(
        capsys, "reduce", "to-mu", "--dict", t1_file, "--query", "abab",
        "--z", "2", "--out", str(mu_path),
    )
    assert code == 0
    payload = json.loads(mu_path.read_text())
    jsonschema.validate(payload, load_schema("mu-instance.schema.json"))
    assert payload == {"universe": 4, "sets": [[], [3], [2, 4], [1], [4]], "z": 2}
    back = tmp_path / "back.txt"
    code, data = run_json(
        capsys, "reduce", "from-mu", "--mu", str(mu_path), "--out-dict", str(back)
    )
    assert code == 0 and data["z"] == 2 and data["d"] == 5
    # optimal mask size is preserved through the translation
    code, solved = run_json(
        capsys, "solve", "--dict", str(back), "--query", data["query"], "--z", "2"
    )
    code2, original = run_json(
        capsys, "solve", "--dict", t1_file, "--query", "abab", "--z", "2"
    )
    assert code == 0 and code2 == 0 and solved["k"] == original["k"]


def test_bench_gen_and_run(capsys, tmp_path):
    dict_path = tmp_path / "syn.txt"
    code, _ = run_json(
        capsys, "bench", "gen", "--d", "80", "--l", "7", "--sigma", "4",
        "--seed", "5", "--mode", "clustered", "--centers", "6", "--rho", "0.1",
        "--out", str(dict_path),
    )
    assert code == 0
    report_path = tmp_path / "report.json"
    csv_path = tmp_path / "report.csv"
    code, summary = run_json(
        capsys, "bench", "run", "--dict", str(dict_path), "--z", "6",
        "--algos", "bf,ba,gr3", "--queries", "4", "--seed", "1",
        "--out", str(report_path), "--csv", str(csv_path),
    )
    assert code == 0 and set(summary["aggregates"]) == {"bf", "ba", "gr3"}
    payload = json.loads(report_path.read_text())
    jsonschema.validate(payload, load_schema("report.schema.json"))
    assert csv_path.read_text().startswith("query_index,algorithm,k,time_us,skipped")
