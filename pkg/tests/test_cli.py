import json

import pytest
from click.testing import CliRunner

from crystalqp.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_rho_example(runner):
    r = runner.invoke(main, ["rho", "--seed", "unipotent:A2", "--delta=-1,0,0"])
    assert r.exit_code == 0, r.output
    body = json.loads(r.output)
    assert body["rho"] == {"1": 1, "2": 0}


def test_cartan_example(runner):
    r = runner.invoke(main, ["cartan", "--seed", "unipotent:A2"])
    assert r.exit_code == 0
    assert json.loads(r.output)["C"] == [[2, -1], [-1, 2]]


def test_verify_exit_codes(runner):
    r = runner.invoke(main, ["verify", "axioms", "--seed", "base-affine:A2",
                             "--box", "2"])
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["ok"]


def test_usage_errors(runner):
    r = runner.invoke(main, ["rho", "--seed", "unipotent:Z7", "--delta=0"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["rho", "--delta=0,0,0"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["rho", "--seed", "unipotent:A2", "--delta=a,b"])
    assert r.exit_code == 2


def test_mutate_and_seed_json(runner, tmp_path):
    r = runner.invoke(main, ["seed", "--seed", "unipotent:A2"])
    seed_file = tmp_path / "seed.json"
    seed_file.write_text(r.output)
    r = runner.invoke(main, ["mutate", "--seed-json", str(seed_file), "--steps", "0"])
    assert json.loads(r.output)["B"] == [[0, 1, -1], [-1, 0, 0], [1, 0, 0]]


def test_dot_output(runner):
    r = runner.invoke(main, ["--format", "dot", "crystal-graph",
                             "--seed", "unipotent:A2", "--box", "1"])
    assert r.exit_code == 0 and r.output.startswith("digraph")


def test_character_pretty_and_out(runner, tmp_path):
    out = tmp_path / "char.txt"
    r = runner.invoke(main, ["--format", "pretty", "--out", str(out),
                             "character", "--seed", "unipotent:A2",
                             "--delta", "1,0,-1"])
    assert r.exit_code == 0
    assert out.read_text().strip() == "x0^-1*x1 + x0^-1*x2"


def test_deterministic_output(runner):
    a = runner.invoke(main, ["invariants", "--seed", "grassmannian:2x2"]).output
    b = runner.invoke(main, ["invariants", "--seed", "grassmannian:2x2"]).output
    assert a == b


def test_derivation_cli(runner):
    r = runner.invoke(main, ["derivation", "--seed", "unipotent:A2", "-i", "2"])
    assert r.exit_code == 0
    assert json.loads(r.output)["images"]["2"] == [{"exp": [1, 0, 0], "coef": "1"}]
