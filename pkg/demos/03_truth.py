"""Deciding formulas: selection, counterfactuals, disjunctions, dependence."""
from pathlib import Path

from causal_teams import CausalTeam, load_team, satisfies
from causal_teams.semantics import Evaluator
from causal_teams.formula import parse

DATA = Path(__file__).resolve().parent.parent / "data"
team = load_team(DATA / "selection.json")

for text in ["Z=3 => Y=2", "Y=2", "dep(Z; Y)", "Z=1 | Z=2 | Z=3", "X=1 ~> Y=2"]:
    print(f"{text:18} {satisfies(team, text)}")

# watch the selected subteam
Evaluator(trace=lambda kind, phi, t: print(f"-- {kind}\n{t}")).holds(team, parse("Z=3 => Y=2"))

# neither X=1 nor its negation holds on a mixed team, but the
# disjunction with dual negation does
two = CausalTeam.from_records([{"X": 1}, {"X": 2}], ranges={"X": [1, 2]})
print(satisfies(two, "X=1"), satisfies(two, "X!=1"), satisfies(two, "X=1 | -X=1"))
