"""Command-line interface: exit codes, output formats, pipelines."""

import json
import subprocess
import sys

import pytest

from adplanner import (
    network_content_hash,
    parse_matrix_file,
    parse_network_file,
    prune,
    result_from_doc,
)
from adplanner.cli import main

from .helpers import ABC_PATH

ABC = str(ABC_PATH)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_clean_file(self, capsys):
        code, out, err = run(capsys, "validate", ABC)
        assert code == 0
        assert out == "ok: 3 nodes, 6 edges\n"
        assert err == ""

    def test_violations_go_to_stderr(self, capsys, tmp_path):
        doc = json.loads(ABC_PATH.read_text())
        doc["nodes"][0]["reach_pct"] = None
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code, out, err = run(capsys, "validate", str(bad))
        assert code == 1
        assert out == ""
        assert "missing reach" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent.json")
        assert code == 1
        assert err.startswith("error: ")

    def test_unparseable_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 1
        assert "malformed JSON" in err


class TestOverlap:
    def test_pair_output(self, capsys):
        code, out, _ = run(capsys, "overlap", ABC, "--pair", "A", "B")
        assert code == 0
        assert out == "0.800000\nA -> B\n"

    def test_pair_prefers_direct_route_here(self, capsys):
        code, out, _ = run(capsys, "overlap", ABC, "--pair", "A", "C")
        assert code == 0
        assert out == "0.100000\nA -> C\n"

    def test_summary_lists_strongest_pairs(self, capsys):
        code, out, _ = run(capsys, "overlap", ABC)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "nodes: 3, edges: 6"
        assert lines[1] == "strongest overlaps:"
        assert lines[2] == "  A ~ B  0.800000"

    def test_matrix_cache_round_trips(self, capsys, tmp_path):
        cache = tmp_path / "matrix.json"
        code, _, err = run(capsys, "overlap", ABC, "--matrix-out", str(cache))
        assert code == 0
        assert f"matrix -> {cache}" in err
        net = prune(parse_network_file(ABC_PATH.read_bytes()))
        matrix = parse_matrix_file(cache.read_bytes(), network_content_hash(net))
        assert matrix.value("A", "B") == 0.8

    def test_unknown_pair_member(self, capsys):
        code, _, err = run(capsys, "overlap", ABC, "--pair", "A", "Z")
        assert code == 1
        assert "unknown node" in err


class TestOptimize:
    ARGS = ("optimize", ABC, "--budget", "100", "--sites", "2",
            "--mode", "reach", "--seed", "42")

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == 0
        assert "seed: 42" in out
        assert "selected sites:" in out
        assert "  A  alpha-news.example" in out
        assert "  C  gamma-finance.example" in out
        assert "net score:         58.000000" in out
        assert "naive baseline (A, B): net score 46.000000" in out
        assert "overlap avoided vs baseline: 22.000000" in out

    def test_json_output_parses_and_round_trips(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--json")
        assert code == 0
        doc = json.loads(out)
        result = result_from_doc(doc)
        assert result.selection == ("A", "C")
        assert result.fitness == 58.0
        assert result.seed == 42

    def test_json_output_is_byte_identical_across_runs(self, capsys):
        outputs = [run(capsys, *self.ARGS, "--json")[1] for _ in range(2)]
        assert outputs[0] == outputs[1]

    def test_default_mode_buys_impressions(self, capsys):
        code, out, _ = run(capsys, "optimize", ABC, "--budget", "100",
                           "--sites", "2", "--seed", "1", "--json")
        assert code == 0
        assert json.loads(out)["selection"] == ["B", "C"]

    def test_ga_flag_overrides(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--json",
                           "--ga-max-generations", "3",
                           "--ga-stall-generations", "2",
                           "--ga-population-size", "10")
        assert code == 0
        doc = json.loads(out)
        assert doc["params"]["max_generations"] == 3
        assert doc["params"]["population_size"] == 10
        assert len(doc["history"]) <= 3

    def test_infeasible(self, capsys):
        code, _, err = run(capsys, "optimize", ABC, "--budget", "100",
                           "--sites", "5", "--seed", "1")
        assert code == 1
        assert err == "error: infeasible: 3 feasible sites, requested 5\n"

    def test_unknown_bucket(self, capsys):
        code, _, err = run(capsys, *self.ARGS, "--age", "13-17")
        assert code == 1
        assert "unknown age bucket" in err

    def test_targeting_narrows_selection(self, capsys):
        code, out, _ = run(capsys, *self.ARGS, "--income", "60-100k", "--json")
        assert code == 0
        assert json.loads(out)["selection"] == ["B", "C"]


class TestOracle:
    def test_optimize_json(self, capsys):
        code, out, _ = run(capsys, "oracle", "optimize", ABC, "--budget", "100",
                           "--sites", "2", "--mode", "reach", "--json")
        assert code == 0
        assert json.loads(out) == {"selection": ["A", "C"], "fitness": 58.0}

    def test_optimize_human(self, capsys):
        code, out, _ = run(capsys, "oracle", "optimize", ABC, "--budget", "100",
                           "--sites", "2", "--mode", "reach")
        assert code == 0
        assert out == "selection: A, C\nfitness: 58.000000\n"

    def test_path(self, capsys):
        code, out, _ = run(capsys, "oracle", "path", ABC, "A", "C")
        assert code == 0
        assert out == "0.100000\n"


class TestPipeline:
    def test_generate_build_optimize(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"node_count": 25, "community_count": 3}))
        net_path = tmp_path / "net.json"
        crawl_path = tmp_path / "crawl.json"

        code, out, _ = run(capsys, "generate", "--config", str(config), "--seed", "5",
                           "--out", str(net_path), "--crawl-out", str(crawl_path))
        assert code == 0
        assert "generated 25 nodes" in out
        assert net_path.exists() and crawl_path.exists()

        assert run(capsys, "validate", str(net_path))[0] == 0

        rebuilt_path = tmp_path / "rebuilt.json"
        code, out, _ = run(capsys, "build", "--records", str(crawl_path),
                           "--seed-domain", "site000.example",
                           "--max-nodes", "25", "--out", str(rebuilt_path))
        assert code == 0
        assert "kept after pruning" in out

        code, out, _ = run(capsys, "optimize", str(rebuilt_path), "--budget", "2000",
                           "--sites", "3", "--seed", "7", "--json")
        assert code == 0
        assert len(json.loads(out)["selection"]) == 3

    def test_generate_is_deterministic(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"node_count": 12}))
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            assert run(capsys, "generate", "--config", str(config),
                       "--seed", "9", "--out", str(path))[0] == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_generate_rejects_unknown_config_keys(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"node_count": 12, "bogus": 1}))
        code, _, err = run(capsys, "generate", "--config", str(config),
                           "--seed", "9", "--out", str(tmp_path / "x.json"))
        assert code == 1
        assert err.startswith("error: ")
        assert "bogus" in err

    def test_build_unknown_seed_domain(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"node_count": 5}))
        crawl_path = tmp_path / "crawl.json"
        run(capsys, "generate", "--config", str(config), "--seed", "1",
            "--out", str(tmp_path / "n.json"), "--crawl-out", str(crawl_path))
        code, _, err = run(capsys, "build", "--records", str(crawl_path),
                           "--seed-domain", "missing.example",
                           "--max-nodes", "5", "--out", str(tmp_path / "r.json"))
        assert code == 1
        assert "seed" in err


class TestUsage:
    def test_no_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["validate", ABC, "--frobnicate"])
        assert exc.value.code == 2

    def test_bad_listen_address(self, capsys):
        code, _, err = run(capsys, "serve", "--listen", "nocolon")
        assert code == 1
        assert "--listen must look like host:port" in err

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "adplanner", "validate", ABC],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "ok: 3 nodes, 6 edges\n"
