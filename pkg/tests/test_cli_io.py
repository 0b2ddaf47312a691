import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from causal_teams import FormalTerm, complete_partial, intervene, load_team
from causal_teams.cli import main
from causal_teams.core import ValidationError
from causal_teams.io import dump_team, team_from_dict, team_to_dict

from generators import random_team


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_check_with_explain(data_dir):
    code, text = run("check", data_dir / "selection.json", "Z=3 => Y=2", "--explain")
    assert code == 0
    assert text == "-- restriction to Z=3\nX  Y  Z\n1  2  3\n2  2  3\ntrue\n"


def test_check_false_and_relations(data_dir):
    assert run("check", data_dir / "selection.json", "Y=2")[0] == 1
    unknown = data_dir / "unknown_values.json"
    assert run("check", unknown, "X=1", "--relation", "falsifiable") == (0, "true\n")
    assert run("check", unknown, "Y=1 => X=2", "--relation", "falsifiable") == (1, "false\n")
    assert run("check", unknown, "Y=1", "--relation", "admissible") == (0, "true\n")
    assert run("check", unknown, "X=3", "--relation", "admissible") == (1, "false\n")


def test_intervene_golden(data_dir, tmp_path):
    target = tmp_path / "out.json"
    code, text = run("intervene", data_dir / "partial.json", "X=1", "--out", target)
    assert code == 0
    assert "1  1  2  f_Z(1,1,2)" in text.splitlines()
    again = load_team(target)
    assert again == intervene(complete_partial(load_team(data_dir / "partial.json")), {"X": 1})
    assert run("intervene", target, "X=1")[1] == text


def test_intervene_errors(data_dir, capsys):
    assert run("intervene", data_dir / "partial.json", "X=1 & X=2")[0] == 2
    assert "true by convention" in capsys.readouterr().err
    assert run("intervene", data_dir / "partial.json", "X=1", "--no-complete")[0] == 2
    assert run("intervene", data_dir / "partial.json", "X=9")[0] == 2
    assert run("intervene", data_dir / "partial.json", "X!=1")[0] == 2


def test_prob(data_dir):
    assert run("prob", data_dir / "selection.json", "Z=3 & Y=2") == (0, "1/2\n")
    assert run("prob", data_dir / "selection.json", "dep(X; Y)")[0] == 2


def test_causes(data_dir):
    code, text = run("causes", data_dir / "additive.json", "direct", "X", "Y")
    assert code == 0
    assert text == "holds\nfixed: Z=1; X=1 -> Y=2, X=2 -> Y=3\n"
    assert run("causes", data_dir / "additive.json", "direct", "Y", "X") == (1, "does not hold\n")
    code, text = run("causes", data_dir / "additive_multiteam.json", "pdirect", "X", "Y")
    assert text.splitlines()[1] == "fixed: Z=1; X=1 -> Pr(Y=3)=0, X=2 -> Pr(Y=3)=1"
    code, text = run("causes", data_dir / "additive.json", "total", "--all")
    assert code == 0 and text.startswith("X -> Y")
    assert run("causes", data_dir / "additive.json", "direct", "X", "Y", "--max-search", 3)[0] == 2
    assert run("causes", data_dir / "additive.json", "direct", "X")[0] == 2


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("check", bad, "X=1")[0] == 2
    assert run("check", tmp_path / "missing.json", "X=1")[0] == 2


def test_document_errors():
    with pytest.raises(ValidationError):
        team_from_dict({"rows": []})
    with pytest.raises(ValidationError):
        team_from_dict({"variables": [{"name": "X", "range": [1]}], "mode": "bag"})
    with pytest.raises(ValidationError):
        team_from_dict({"variables": [{"name": "X", "range": [1]}], "rows": [{"X": {"term": "g", "args": []}}]})


def test_formal_terms_roundtrip(data_dir, tmp_path):
    t = load_team(data_dir / "unknown_values.json")
    assert t.rows[1][1] == FormalTerm("Y", (1,))
    dump_team(t, tmp_path / "t.json")
    assert load_team(tmp_path / "t.json") == t
    assert json.loads((tmp_path / "t.json").read_text())["rows"][1]["Y"] == {"term": "f_Y", "args": [1]}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_document_roundtrip(seed, multiteam):
    t = random_team(random.Random(seed), multiteam=multiteam, partial=True)
    doc = json.loads(json.dumps(team_to_dict(t)))
    assert team_from_dict(doc) == t
