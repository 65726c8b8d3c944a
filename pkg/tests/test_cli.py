"""
End-to-end tests for the labp_solver command line
"""

import io
import json
import math
import sys

import pytest

import labp_solver
from src.engines import ZeroTempSolver
from src.graphs import Graph, named

from .conftest import random_graphs


def test_nu_star_on_c3(run_cli, c3):
    code, out, _ = run_cli(c3, "nu-star")
    assert code == 0
    assert "nu_star = 3/2" in out
    assert "cover y = (1/2, 1/2, 1/2)" in out
    assert out.rstrip().endswith("status: certified")


def test_nu_star_json(run_cli):
    code, out, _ = run_cli(named.petersen(), "nu-star", "--json")
    data = json.loads(out)
    assert code == 0
    assert data['results']['nu_star'] == "5"
    assert data['status'] == "certified"
    assert data['certificates']['duality']['passed'] is True
    assert 'timing' not in data


def test_timing_only_on_request(run_cli, c3):
    _, out, _ = run_cli(c3, "nu-star", "--json", "--timing")
    assert 'zero_temperature' in json.loads(out)['timing']


def test_uncertified_nu_star_names_the_failure(run_cli, c3, monkeypatch):
    solve = ZeroTempSolver.smallest_fixed_point
    monkeypatch.setattr(ZeroTempSolver, 'smallest_fixed_point',
                        lambda self: solve(self, max_rounds=1, retries=0))
    code, out, _ = run_cli(c3, "nu-star")
    assert code == 2
    assert "nu_star = uncertified (not stationary after 1 rounds)" in out
    assert "None" not in out
    assert out.rstrip().endswith("status: uncertified")


def test_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, 'stdin', io.TextIOWrapper(io.BytesIO(b"0 1\n1 2\n")))
    code = labp_solver.main(["nu-star"])
    assert code == 0
    assert "nu_star = 1" in capsys.readouterr().out


def test_bipartite_cover(run_cli, c4):
    code, out, _ = run_cli(c4, "cover", "--bipartite", "--json")
    data = json.loads(out)
    assert code == 0
    assert data['results']['cover_size'] == 2
    assert data['certificates']['konig']['passed'] is True


def test_bipartite_cover_on_odd_cycle_is_an_error(run_cli, c3):
    code, out, err = run_cli(c3, "cover", "--bipartite")
    assert code == 1
    assert out == ""
    assert "not bipartite" in err


def test_general_cover(run_cli, c3):
    code, out, _ = run_cli(c3, "cover", "--json")
    data = json.loads(out)
    assert code == 0
    assert data['results']['tau_star'] == "3/2"
    assert data['results']['rounded_cover_size'] == 3


def test_match_at_one_temperature(run_cli, c3):
    code, out, _ = run_cli(c3, "match", "--z", "2", "--json")
    data = json.loads(out)
    assert code == 0
    [step] = data['results']['ladder']
    assert step['x'] == pytest.approx([1 / 3] * 3, abs=1e-11)
    assert step['sum_x'] == pytest.approx(1.0, abs=1e-11)


def test_match_anneal_on_a_tree_reports_gibbs_deviation(run_cli):
    code, out, _ = run_cli(named.path(4), "match", "--anneal", "--json")
    ladder = json.loads(out)['results']['ladder']
    assert code == 0
    assert [step['z'] for step in ladder] == [10.0 ** k for k in range(9)]
    assert all(step['gibbs_deviation'] <= 1e-9 for step in ladder)


def test_unconverged_match_exits_two(run_cli, c3):
    code, out, _ = run_cli(c3, "match", "--z", "100", "--max-rounds", "3")
    assert code == 2
    assert "converged = no" in out
    assert "status: uncertified" in out


def test_bethe_with_loops(run_cli, c3):
    code, out, _ = run_cli(c3, "bethe", "--z", "2", "--loops", "--json")
    results = json.loads(out)['results']
    assert code == 0
    assert results['Phi_B'] == pytest.approx(math.log(8))
    assert results['Z'] == pytest.approx(7 / 8, abs=1e-10)
    assert results['residual'] <= 1e-8


def test_oracle(run_cli, c3):
    code, out, _ = run_cli(c3, "oracle")
    assert code == 0
    assert "nu_star = 3/2" in out
    assert "tau = 2" in out


def test_parse_error_exits_one(tmp_path, capsys):
    edge_file = tmp_path / "bad.txt"
    edge_file.write_text("0 1\n1 1\n")
    assert labp_solver.main(["nu-star", str(edge_file)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exits_one(tmp_path, capsys):
    assert labp_solver.main(["nu-star", str(tmp_path / "missing.txt")]) == 1
    assert capsys.readouterr().err.startswith("Error:")


def test_bad_z_exits_one(run_cli, c3):
    code, _, err = run_cli(c3, "match", "--z", "-1")
    assert code == 1
    assert "z must be" in err


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as excinfo:
        labp_solver.main(["no-such-command"])
    assert excinfo.value.code == 1


def test_save_dir_writes_json_and_csv(run_cli, c3, tmp_path):
    save_dir = tmp_path / "reports"
    code, _, _ = run_cli(c3, "nu-star", "--save-dir", str(save_dir))
    assert code == 0
    saved = json.loads(next(save_dir.glob("nu-star_*.json")).read_text())
    assert saved['results']['nu_star'] == "3/2"
    assert 'timing' in saved
    assert list(save_dir.glob("nu-star_*_vertices.csv"))


@pytest.mark.parametrize("g", random_graphs(count=20), ids=repr)
def test_output_does_not_depend_on_threads(run_cli, g):
    outputs = set()
    for threads in ("1", "2", "8"):
        code, out, _ = run_cli(g, "nu-star", "--threads", threads)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_single_edge_graph(run_cli):
    code, out, _ = run_cli(Graph(2, [(0, 1)]), "nu-star")
    assert code == 0
    assert "nu_star = 1" in out
