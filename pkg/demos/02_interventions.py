"""do(X=x) on a partially defined team.

Only some entries of F_Z are known, so after the intervention one row gets
a formal term standing for the unknown value.
"""
from pathlib import Path

from causal_teams import complete_partial, evaluation_distance, intervene, load_team

DATA = Path(__file__).resolve().parent.parent / "data"

team = load_team(DATA / "partial.json")
print(team, end="\n\n")

done = complete_partial(team)
after = intervene(done, {"X": 1})
print(after, end="\n\n")
print("arrows left:", sorted(after.graph.edges))
for v in ("Y", "Z"):
    print(f"distance from X to {v}:", evaluation_distance(team.graph, ["X"], v))

# batch and sequential interventions agree
assert intervene(done, {"X": 1, "U": 2}) == intervene(intervene(done, {"U": 2}), {"X": 1})
