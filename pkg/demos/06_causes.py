"""Direct, total and probabilistic direct causes with witnesses."""
from pathlib import Path

from causal_teams import direct_cause, load_team, probabilistic_direct_cause, satisfies, total_cause
from causal_teams.causes import cause_relation, witness_formulas
from causal_teams.formula import to_text

DATA = Path(__file__).resolve().parent.parent / "data"
team = load_team(DATA / "additive.json")

dc = direct_cause(team, "X", "Y")
print(dc.holds, dc.witness)
for f in witness_formulas(dc):
    print("  ", to_text(f), satisfies(team, f))
print("total X -> Y:", bool(total_cause(team, "X", "Y")))
print("direct Y -> X:", bool(direct_cause(team, "Y", "X")))
print("all direct causes:", [(v.cause, v.effect) for v in cause_relation(team) if v])

multi = load_team(DATA / "additive_multiteam.json")
print(probabilistic_direct_cause(multi, "X", "Y").witness)
