import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from causal_teams import CausalTeam, FormalTerm, admits, falsifies, probability, satisfies
from causal_teams.formula import FormalEntryEncountered, parse
from causal_teams.intervention import NotFullyDefined
from causal_teams.semantics import (
    EmptySupport, Evaluator, NotCO, NotDNF, NotSupported, Relation, judge,
)

from generators import random_formula, random_team


def two_rows():
    return CausalTeam.from_records([{"X": 1}, {"X": 2}], ranges={"X": [1, 2]})


def test_selective_implication(selection_team):
    assert satisfies(selection_team, "Z=3 => Y=2")
    assert not satisfies(selection_team, "Z=1 | Z=2 => Y=2")


def test_counterfactual_on_partial_team(partial_team):
    assert satisfies(partial_team, "X=1 ~> Y=2")
    with pytest.raises(FormalEntryEncountered):
        satisfies(partial_team, "X=1 ~> Z=4")
    with pytest.raises(NotFullyDefined):
        satisfies(partial_team, "X=1 ~> Y=2", complete=False)


def test_excluded_middle_fails_without_negation():
    t = two_rows()
    assert not satisfies(t, "X=1")
    assert not satisfies(t, "X!=1")
    assert satisfies(t, "X=1 | -X=1")
    assert satisfies(t, "X=1 | X!=1")


def test_empty_team_property(partial_team):
    empty = partial_team.subteam([])
    for text in ["X=1", "X!=1 & X=1", "dep(U; Z)", "X=2 ~> Z=4", "Y=1 => X=3", "X=1 | Y=3"]:
        assert satisfies(empty, text)


def test_dependence_atom(partial_team):
    assert satisfies(partial_team, "dep(X; Y)")
    assert satisfies(partial_team, "dep(U; Z)")
    assert not satisfies(partial_team, "dep(; Z)")
    assert not satisfies(partial_team, "dep(Y; U)")


def test_tensor_vs_boolean_disjunction():
    t = two_rows()
    assert satisfies(t, "X=1 | X=2")
    assert not satisfies(t, "X=1 || X=2")
    m = CausalTeam.from_records([{"X": 1}, {"X": 1}, {"X": 2}], ranges={"X": [1, 2]}, multiteam=True)
    # each half of a split can meet its bound even though the whole cannot
    assert satisfies(m, "Pr(X=1) >= 1 | Pr(X=2) >= 1")
    assert not satisfies(m, "Pr(X=1) >= 1 || Pr(X=2) >= 1")


def test_inconsistent_counterfactual_is_true(additive):
    assert satisfies(additive, "X=1 & X=2 ~> Y=5")


def test_selector_with_counterfactual_antecedent(additive):
    # rows whose Y would be 3 under do(Z=1): only X=2
    assert satisfies(additive, "(Z=1 ~> Y=3) => X=2")
    assert not satisfies(additive, "(Z=1 ~> Y=3) => X=1")


def test_explain_trace(selection_team):
    seen = []
    Evaluator(trace=lambda kind, sub, t: seen.append((kind, len(t)))).holds(selection_team, parse("Z=3 => Y=2"))
    assert seen == [("restrict", 2)]


def test_probability_examples(selection_team):
    m = CausalTeam.from_records([{"X": v} for v in (1, 1, 2, 3)], ranges={"X": [1, 2, 3]}, multiteam=True)
    assert probability(m, "X=1") == Fraction(1, 2)
    assert probability(selection_team, "Z=3 & Y=2") == Fraction(1, 2)
    assert probability(selection_team, "X=1 | X!=1") == 1
    with pytest.raises(EmptySupport):
        probability(selection_team.subteam([]), "X=1")
    with pytest.raises(NotCO):
        probability(selection_team, "dep(X; Y)")


def test_probabilistic_atoms_on_empty_support(selection_team):
    empty = selection_team.subteam([])
    for text in ["Pr(X=1) <= 1", "Pr(X=1) >= 0", "Pr(X=1) <= Pr(X=1)", "Pr(X=1) >= Pr(Y=1)"]:
        assert not satisfies(empty, text)
    assert satisfies(empty, "!Pr(X=1) <= 1")


def test_pcd_is_not_downward_closed():
    t = CausalTeam.from_records([{"X": 1}, {"X": 2}, {"X": 3}], ranges={"X": [1, 2, 3]})
    assert satisfies(t, "Pr(X=1) <= 1/2")
    assert not satisfies(t, "X=1 => Pr(X=1) <= 1/2")


def test_falsifiability_with_unknown_values(unknown_team):
    assert not falsifies(unknown_team, "Y=1 => X=2")
    assert falsifies(unknown_team, "X=1")
    assert falsifies(unknown_team, "Y=2")
    assert not falsifies(unknown_team.subteam([1]), "Y=2")
    assert falsifies(unknown_team, "Y!=1")
    assert not falsifies(unknown_team.subteam([]), "X=1")


def test_admissibility_with_unknown_values(unknown_team):
    assert admits(unknown_team, "Y=1")
    assert not admits(unknown_team, "X=3")
    assert admits(unknown_team, "dep(X; Y)")
    assert admits(unknown_team, "X=2 & Y=1 | X=1")
    assert not admits(unknown_team, "X=2 & Y=1")


def test_admissibility_compares_formal_entries_syntactically():
    term = FormalTerm("W", (3,))
    t = CausalTeam.from_records([{"X": term, "Y": term}], ranges={"X": [1, 2], "Y": [1, 2]})
    assert not admits(t, "X=1 & Y=2")
    assert not admits(t, "X=1 & Y!=1")
    assert admits(t, "X=1 & Y=1")
    other = CausalTeam.from_records([{"X": term, "Y": FormalTerm("V", (3,))}], ranges={"X": [1, 2], "Y": [1, 2]})
    assert admits(other, "X=1 & Y=2")


def test_admissibility_shape_errors(unknown_team):
    with pytest.raises(NotDNF):
        admits(unknown_team, "X=1 => Y=1")
    with pytest.raises(NotDNF):
        admits(unknown_team, "X=1 & dep(X; Y)")


def test_falsifiability_dependence_and_connectives():
    t = CausalTeam.from_records(
        [{"A": 0, "B": 0}, {"A": 0, "B": 1}, {"A": 1, "B": FormalTerm("B", (1,))}],
        ranges={"A": [0, 1], "B": [0, 1]},
    )
    assert falsifies(t, "dep(A; B)")
    assert not falsifies(t.subteam([0, 2]), "dep(A; B)")
    assert falsifies(t, "B=0 & A=0")
    assert not falsifies(t, "B=0 | B=1")
    assert falsifies(t, "A=0 | A=5")
    with pytest.raises(NotSupported):
        falsifies(t, "Pr(A=0) <= 1")
    with pytest.raises(NotSupported):
        falsifies(t, "-A=0")


def test_falsifiability_through_counterfactual(partial_team):
    assert falsifies(partial_team, "X=1 ~> Y=3")
    assert not falsifies(partial_team, "X=1 ~> Y=2")
    assert falsifies(partial_team, "X=1 ~> Z=4")   # row U=4 gives Z=3
    assert not falsifies(partial_team, "X=1 & X=2 ~> Y=3")


def test_judge(selection_team):
    assert judge(selection_team, "Z=3 => Y=2").verdict
    assert judge(selection_team, "X=3", Relation.FALSIFIABILITY).verdict
    assert judge(selection_team, "X=3", "admissible").verdict is False


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_split_search_strategies_agree(seed):
    rng = random.Random(seed)
    t = random_team(rng)
    phi = random_formula(rng, t, lang=rng.choice(["CO", "CO_NEG"]))
    assert satisfies(t, phi) == satisfies(t, phi, flat_shortcut=False)
