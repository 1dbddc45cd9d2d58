import json

import pytest

from c2lab.cli import (EXIT_BUDGET, EXIT_INPUT, EXIT_OK, load_corpus,
                       load_graph, main)
from c2lab.errors import InputError
from c2lab.graph import (circulant, complete_graph, emit_edge_list,
                         emit_graph6, octahedron)


@pytest.fixture
def k5_file(tmp_path):
    f = tmp_path / "k5.g6"
    f.write_text(emit_graph6(complete_graph(5)) + "\n")
    return str(f)


@pytest.fixture
def small_corpus(tmp_path):
    f = tmp_path / "corpus.g6"
    f.write_text("\n".join([
        emit_graph6(complete_graph(5)),
        emit_graph6(octahedron()),
        "!!! not graph6 !!!",
    ]) + "\n")
    return str(f)


class TestLoading:
    def test_load_graph6_file(self, k5_file):
        assert load_graph(k5_file).n == 5

    def test_load_json_file(self, tmp_path):
        f = tmp_path / "g.json"
        f.write_text(json.dumps(emit_edge_list(octahedron())))
        assert load_graph(str(f)).num_edges == 12

    def test_missing_file(self):
        with pytest.raises(InputError):
            load_graph("/nonexistent/graph")

    def test_corpus_skips_malformed(self, small_corpus):
        entries, warnings = load_corpus(small_corpus)
        assert len(entries) == 2
        assert len(warnings) == 1 and "skipped" in warnings[0]

    def test_corpus_directory_of_json(self, tmp_path):
        d = tmp_path / "corpus"
        d.mkdir()
        (d / "a.json").write_text(json.dumps(emit_edge_list(octahedron())))
        (d / "broken.json").write_text("{]")
        entries, warnings = load_corpus(str(d))
        assert len(entries) == 1 and len(warnings) == 1

    def test_bundled_corpus(self):
        entries, warnings = load_corpus("bundled")
        assert len(entries) == 10 and not warnings
        assert all(g.is_regular(4) and g.is_connected()
                   for _, g in entries)


class TestComputeCommand:
    def test_all_routes_agree(self, k5_file, capsys):
        code = main(["compute", "--graph", k5_file, "--prime", "2",
                     "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert report["agreement"] is True
        assert len(report["vertices"]) == 5
        for entry in report["vertices"]:
            assert set(entry["residues"].values()) == {1}

    def test_direct_only_on_plain_graph(self, tmp_path, capsys):
        f = tmp_path / "c3.json"
        f.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
        code = main(["compute", "--graph", str(f), "--prime", "5",
                     "--route", "direct", "--json"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["direct_c2"] == 1

    def test_non_4_regular_needs_direct(self, tmp_path, capsys):
        f = tmp_path / "c3.json"
        f.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
        assert main(["compute", "--graph", str(f), "--prime", "2"]) \
            == EXIT_INPUT

    def test_non_prime(self, k5_file):
        assert main(["compute", "--graph", k5_file, "--prime", "6"]) \
            == EXIT_INPUT


class TestVerifyCompletion:
    def test_small_corpus_ok(self, small_corpus, capsys):
        code = main(["verify-completion", "--corpus", small_corpus,
                     "--primes", "2", "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK and report["ok"] is True
        for g in report["graphs"]:
            assert g["verdicts"]["2"]["all_equal"] is True
            assert g["verdicts"]["2"]["tag"] == "theorem-backed"

    def test_p3_tags(self, tmp_path, capsys):
        f = tmp_path / "c.g6"
        f.write_text(emit_graph6(octahedron()) + "\n"
                     + emit_graph6(circulant(7, (1, 2))) + "\n")
        code = main(["verify-completion", "--corpus", str(f),
                     "--primes", "3", "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        tags = [g["verdicts"]["3"]["tag"] for g in report["graphs"]]
        assert tags == ["theorem-backed", "empirical"]

    def test_budget_refusal_exit(self, small_corpus, capsys):
        code = main(["verify-completion", "--corpus", small_corpus,
                     "--primes", "3", "--budget", "10"])
        capsys.readouterr()
        assert code == EXIT_BUDGET

    def test_missing_corpus(self, capsys):
        assert main(["verify-completion", "--corpus", "/nonexistent"]) \
            == EXIT_INPUT


class TestSweepInvolutions:
    def test_one_graph(self, tmp_path, capsys):
        f = tmp_path / "c.g6"
        f.write_text(emit_graph6(circulant(7, (1, 2))) + "\n")
        code = main(["sweep-involutions", "--corpus", str(f),
                     "--prime", "2", "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK and report["ok"] is True
        cases = {p["case"] for g in report["graphs"] for p in g["pairs"]}
        assert "SCase" in cases

    def test_p3_orbits(self, tmp_path, capsys):
        f = tmp_path / "c.g6"
        f.write_text(emit_graph6(octahedron()) + "\n")
        code = main(["sweep-involutions", "--corpus", str(f),
                     "--prime", "3", "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK and report["ok"] is True


class TestCheckIdentities:
    def test_passes(self, capsys):
        code = main(["check-identities", "--seed", "11", "--num-cw", "5",
                     "--json"])
        report = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK and report["ok"] is True


class TestDeterminism:
    def test_byte_stable_reports(self, small_corpus, capsys):
        args = ["verify-completion", "--corpus", small_corpus,
                "--primes", "2", "--json"]
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first
