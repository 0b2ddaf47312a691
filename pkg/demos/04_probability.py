"""Exact probabilities on multiteams."""
from causal_teams import CausalTeam, probability, satisfies

m = CausalTeam.from_records(
    [{"X": 1}, {"X": 1}, {"X": 2}, {"X": 3}], ranges={"X": [1, 2, 3]}, multiteam=True,
)
print(m, end="\n\n")
print("Pr(X=1) =", probability(m, "X=1"))
print("Pr(X=1) <= 1/2:", satisfies(m, "Pr(X=1) <= 1/2"))
print("Pr(X=1) > Pr(X=2):", satisfies(m, "Pr(X=1) > Pr(X=2)"))

# the atom is not preserved by subteams
print("on rows X=1 only:", satisfies(m, "X=1 => Pr(X=1) <= 1/2"))
