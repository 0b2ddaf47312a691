"""Causal team semantics: interventions, conditioning, probabilities and causes."""
from .core import (
    CausalGraph,
    CausalTeam,
    CausalTeamError,
    DependenceViolation,
    FormalTerm,
    FunctionClash,
    RangeViolation,
    UnknownVariable,
    ValidationError,
    is_recursive,
    is_value,
    render_table,
    restrict,
    revalidate,
    satisfies_dependence,
    validate,
)
from .formula import Language, classify, parse, to_text
from .intervention import (
    SolutionPolicy,
    complete_partial,
    evaluation_distance,
    intervene,
    nondescendants,
)
from .semantics import admits, falsifies, probability, satisfies
from .causes import CauseVerdict, CauseWitness, direct_cause, probabilistic_direct_cause, total_cause
from .io import dump_team, load_team, team_from_dict, team_to_dict

__version__ = "0.1.0"
