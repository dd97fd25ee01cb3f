import json

import pytest

from dqalg.cli import parse_order, run_command
from dqalg.pbw import DqAlgebra
from dqalg.textio import element_from_json, parse_element


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, code",
    [
        (["verify-gsb", "--n", "2"], 0),
        (["nf", "--n", "2", "--expr", "d[2,1]*d[1,2]"], 0),
        (["mul", "--n", "2", "--lhs", "d[2,2]", "--rhs", "d[1,1]"], 0),
        (["gb", "--n", "2", "--gens", "d[1,1],d[2,2]"], 0),
        (["gb", "--n", "2", "--gens", "d[1,1]", "--order", "paper-lex"], 1),
        (["gkdim", "--n", "2", "--gens", "d[1,1]"], 0),
        (["hilbert", "--n", "3", "--upto", "3"], 0),
        (["eliminate", "--n", "2", "--gens", "d[1,2],d[2,1]", "--keep", "d[1,1],d[2,2]"], 0),
        (["eliminate", "--n", "2", "--gens", "d[1,1],d[2,2]", "--certificate"], 0),
        (["check-order", "--n", "2", "--order", "deg-paper-lex", "--max-degree", "3"], 0),
        (["check-order", "--n", "2", "--order", "natural-lex", "--max-degree", "2"], 1),
        (["check-order", "--n", "2", "--order", "paper-lex", "--max-degree", "2"], 1),
        (["relations", "--n", "2"], 0),
        (["nf", "--n", "2", "--expr", "d[3,1]"], 2),
        (["nf", "--n", "2", "--expr", "d[1,1]+"], 2),
        (["--q", "0", "nf", "--n", "2", "--expr", "d[1,1]"], 2),
        (["--q", "abc", "nf", "--n", "2", "--expr", "d[1,1]"], 2),
        (["nf", "--n", "1", "--expr", "1"], 2),
        (["nf", "--n", "2"], 2),
        (["bogus"], 2),
        (["gb", "--n", "2", "--gens", "d[1,1]", "--order", "sideways"], 2),
        (["eliminate", "--n", "2", "--gens", "d[1,1]"], 2),
        (["eliminate", "--n", "2", "--gens", "d[1,1]", "--keep", "d[1,1],x"], 2),
    ],
)
def test_exit_status_matrix(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_documented_outputs(capsys):
    code, out, _ = run(capsys, "verify-gsb", "--n", "3")
    assert code == 0 and "ambiguities: 84, all compositions reduce to 0" in out
    assert run(capsys, "nf", "--n", "2", "--expr", "d[2,1]*d[1,2]")[1].strip() == "q*d[1,2]*d[2,1]"
    assert run(capsys, "gkdim", "--n", "2", "--gens", "d[1,1]")[1].splitlines()[0] == "gk_dim: 3"


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "nf", "--n", "2", "--q", "1", "--expr", "d[2,1]*d[1,2]")
    assert code == 0 and out.strip() == "d[1,2]*d[2,1]"
    code, out, _ = run(capsys, "nf", "--n", "2", "--json", "--expr", "d[1,1]")
    assert json.loads(out)["terms"][0]["exp"] == [[1, 0], [0, 0]]


def test_gb_text_and_json_agree(capsys):
    args = ["gb", "--n", "2", "--gens", "d[2,2],d[1,1]", "--trace"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, "--json", *args)
    doc = json.loads(js)
    alg = DqAlgebra(2)
    listed = [line.split("] ", 1)[1] for line in text.splitlines() if line.startswith("  [")]
    assert [parse_element(s, alg) for s in listed] == [element_from_json(t, alg) for t in doc["basis_terms"]]
    assert doc["trace"][0] == {"pair": [0, 1], "result": "adjoined", "index": 2}


def test_nf_text_and_json_agree(capsys):
    alg = DqAlgebra(2)
    expr = "d[2,2]^2*d[1,1] - q*d[2,1]"
    _, text, _ = run(capsys, "nf", "--n", "2", "--expr", expr)
    _, js, _ = run(capsys, "--json", "nf", "--n", "2", "--expr", expr)
    assert parse_element(text.strip(), alg) == element_from_json(json.loads(js), alg)


def test_check_order_names_the_natural_lex_witness(capsys):
    _, out, _ = run(capsys, "check-order", "--n", "2", "--order", "natural-lex", "--max-degree", "2")
    assert "fails: d[2,2]*d[1,1]" in out
    assert out.strip().endswith("verdict: not solvable")


def test_verify_gsb_json(capsys):
    code, out, _ = run(capsys, "--json", "verify-gsb", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc == {"n": 2, "relations": 6, "ambiguities": 4, "passed": True, "failures": []}


def test_eliminate_reports_unverified_keep_sets(capsys):
    _, out, _ = run(capsys, "eliminate", "--n", "2", "--gens", "d[1,1],d[2,2]", "--certificate")
    assert "{d[1,1],d[2,2]} unverified" in out
    assert "holds: True" in out


def test_parse_order():
    assert parse_order("deg-paper-lex", 2).name() == "deg-paper-lex"
    assert parse_order("elim:d[1,2],d[2,1]", 2).kind == "block_elimination"


@pytest.mark.parametrize("cmd", [["hilbert", "--n", "2", "--gens", "d[1,1]"], ["gkdim", "--n", "2", "--gens", "d[1,1]"]])
def test_plot_writes_file(capsys, tmp_path, cmd):
    path = tmp_path / "growth.png"
    code, _, _ = run(capsys, *cmd, "--plot", str(path))
    assert code == 0
    assert path.stat().st_size > 0
    assert path.read_bytes()[:4] == b"\x89PNG"
