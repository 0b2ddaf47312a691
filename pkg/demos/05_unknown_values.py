"""Falsifiability and admissibility when some values are formal terms."""
from pathlib import Path

from causal_teams import admits, falsifies, load_team, satisfies
from causal_teams.formula import FormalEntryEncountered

DATA = Path(__file__).resolve().parent.parent / "data"
team = load_team(DATA / "unknown_values.json")
print(team, end="\n\n")

try:
    satisfies(team, "Y=1")
except FormalEntryEncountered as exc:
    print("truth is undecided:", exc)

for text in ["X=1", "Y=1 => X=2", "Y!=1"]:
    print(f"falsifiable {text:12} {falsifies(team, text)}")
for text in ["Y=1", "X=3", "X=2 & Y=1 | X=1"]:
    print(f"admissible  {text:16} {admits(team, text)}")
