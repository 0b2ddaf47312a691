"""Build a causal team, validate it, and look at it.

A causal team is a table of rows plus a graph and one function per
endogenous variable. Construction checks that every row respects the
graph and the functions.
"""
from causal_teams import CausalTeam, ValidationError, restrict

team = CausalTeam.from_records(
    [{"X": 1, "Z": 1, "Y": 2}, {"X": 2, "Z": 2, "Y": 4}, {"X": 3, "Z": 3, "Y": 6}],
    ranges={"X": [1, 2, 3], "Z": [1, 2, 3], "Y": [2, 3, 4, 5, 6]},
    edges=[("X", "Z"), ("X", "Y"), ("Z", "Y")],
    functions={
        "Z": {(x,): x for x in (1, 2, 3)},
        "Y": {(x, z): x + z for x in (1, 2, 3) for z in (1, 2, 3)},
    },
)
print(team)
print("endogenous:", sorted(team.endogenous), "exogenous:", sorted(team.exogenous))
print("parents of Y:", team.graph.parents("Y"))

# a row that disagrees with F_Y is rejected
try:
    CausalTeam.from_records(
        [{"X": 1, "Z": 1, "Y": 5}],
        ranges=team.ranges, edges=team.graph.edges, functions=team.functions,
    )
except ValidationError as exc:
    print("rejected:", exc)

print()
print(restrict(team, "X=1 | X=3"))
