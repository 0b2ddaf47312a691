"""Direct, probabilistic direct and total causes by exhaustive search.

Each test searches the boolean disjunction that defines the notion:
context values are fixed by intervention, the candidate cause is set to
two distinct values, and the effect is compared. Contexts are enumerated
over the full product of ranges, so the cost grows exponentially with the
number of context variables; ``max_search`` bounds that product.

On completed partial teams an intervention may leave a formal term in the
effect column. Such a value is unknown, so it never serves as a witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import CausalTeam, CausalTeamError
from .formula import And, Cf, Eq, FormalEntryEncountered, Formula, PrGeqConst, PrLeqConst
from .intervention import NotFullyDefined, NonRecursive, intervene, nondescendants
from .semantics import EmptySupport, Evaluator

__all__ = [
    "CauseWitness", "CauseVerdict", "direct_cause", "probabilistic_direct_cause",
    "total_cause", "cause_relation", "SameVariable", "SearchTooLarge",
]


class SameVariable(CausalTeamError, ValueError):
    pass


class SearchTooLarge(CausalTeamError, ValueError):
    pass


@dataclass(frozen=True)
class CauseWitness:
    """Values certifying a cause verdict.

    ``fixed`` holds the context held fixed by intervention (all variables
    but the two for direct causes, the nondescendants of the cause for
    total causes). For probabilistic direct causes ``y`` has probability 0
    under ``x`` and 1 under ``x_prime``, and ``y_prime`` is ``None``.
    """

    fixed: Mapping[str, object]
    x: object
    x_prime: object
    y: object
    y_prime: object | None


@dataclass(frozen=True)
class CauseVerdict:
    kind: str
    cause: str
    effect: str
    holds: bool
    witness: CauseWitness | None = field(default=None)

    def __bool__(self) -> bool:
        return self.holds


def _check(team: CausalTeam, x: str, y: str, max_search: int | None, context) -> None:
    team.index(x)
    team.index(y)
    if x == y:
        raise SameVariable(f"cause and effect are both {x}")
    if not team.is_recursive:
        raise NonRecursive("cause tests need a recursive team")
    if not team.fully_defined:
        raise NotFullyDefined("cause tests need fully defined functions (complete the team first)")
    size = 1
    for v in context:
        size *= len(team.ranges[v])
    size *= len(team.ranges[x]) ** 2
    if max_search is not None and size > max_search:
        raise SearchTooLarge(f"search space of {size} interventions exceeds {max_search}")


def _contexts(team: CausalTeam, names):
    names = sorted(names)
    for combo in itertools.product(*(team.ranges[v] for v in names)):
        yield dict(zip(names, combo))


def _outcomes(team: CausalTeam, y: str, ev: Evaluator) -> list:
    # a formal entry is an unknown value, so it certifies no outcome
    try:
        return [v for v in team.ranges[y] if ev.holds(team, Eq(y, v))]
    except FormalEntryEncountered:
        return []


def _first_change(team, x, y, after_fix, ev):
    """First ``(x, x', y, y')`` with distinct causes and distinct outcomes."""
    outs = {xv: _outcomes(after_fix(xv), y, ev) for xv in team.ranges[x]}
    for xv, xw in itertools.permutations(team.ranges[x], 2):
        for yv in outs[xv]:
            for yw in outs[xw]:
                if yv != yw:
                    return xv, xw, yv, yw
    return None


def _fix_formula(fixed: Mapping, x: str, xv) -> tuple:
    return tuple(Eq(k, v) for k, v in fixed.items()) + (Eq(x, xv),)


def direct_cause(team: CausalTeam, x: str, y: str, *, max_search: int | None = None) -> CauseVerdict:
    """Is some change of ``x``, all other variables held fixed, a change of ``y``?"""
    context = [v for v in team.variables if v not in (x, y)]
    _check(team, x, y, max_search, context)
    ev = Evaluator()
    for fixed in _contexts(team, context):
        hit = _first_change(
            team, x, y,
            lambda xv: intervene(team, _fix_formula(fixed, x, xv)),
            ev,
        )
        if hit:
            return CauseVerdict("direct", x, y, True, CauseWitness(fixed, *hit))
    return CauseVerdict("direct", x, y, False)


def probabilistic_direct_cause(team: CausalTeam, x: str, y: str, *, max_search: int | None = None) -> CauseVerdict:
    """Is some value of ``y`` impossible under one setting of ``x`` and
    certain under another, all other variables held fixed?"""
    context = [v for v in team.variables if v not in (x, y)]
    _check(team, x, y, max_search, context)
    if not team.rows:
        raise EmptySupport("probabilistic direct cause on an empty support")
    ev = Evaluator()
    for fixed in _contexts(team, context):
        dist = {}
        for xv in team.ranges[x]:
            t = intervene(team, _fix_formula(fixed, x, xv))
            try:
                dist[xv] = {yv: ev.probability(t, Eq(y, yv)) for yv in team.ranges[y]}
            except FormalEntryEncountered:
                dist[xv] = None
        for xv, xw in itertools.permutations(team.ranges[x], 2):
            if dist[xv] is None or dist[xw] is None:
                continue
            for yv in team.ranges[y]:
                if dist[xv][yv] == 0 and dist[xw][yv] == 1:
                    return CauseVerdict("pdirect", x, y, True, CauseWitness(fixed, xv, xw, yv, None))
    return CauseVerdict("pdirect", x, y, False)


def total_cause(team: CausalTeam, x: str, y: str, *, max_search: int | None = None) -> CauseVerdict:
    """Does some change of ``x`` change ``y`` once the nondescendants of
    ``x`` are fixed?"""
    team.index(x)
    context = sorted(nondescendants(team.graph, x))
    _check(team, x, y, max_search, context)
    ev = Evaluator()
    for fixed in _contexts(team, context):
        base = intervene(team, list(fixed.items())) if fixed else team
        hit = _first_change(team, x, y, lambda xv: intervene(base, [(x, xv)]), ev)
        if hit:
            return CauseVerdict("total", x, y, True, CauseWitness(fixed, *hit))
    return CauseVerdict("total", x, y, False)


def witness_formulas(verdict: CauseVerdict) -> list[Formula]:
    """The counterfactuals a witness claims; each must hold in the team."""
    w = verdict.witness
    if w is None:
        return []
    x, y = verdict.cause, verdict.effect
    fix = tuple(Eq(k, v) for k, v in w.fixed.items())
    if verdict.kind == "direct":
        return [Cf(fix + (Eq(x, w.x),), Eq(y, w.y)), Cf(fix + (Eq(x, w.x_prime),), Eq(y, w.y_prime))]
    if verdict.kind == "pdirect":
        zero = And(PrLeqConst(Eq(y, w.y), Fraction(0)), PrGeqConst(Eq(y, w.y), Fraction(0)))
        one = And(PrLeqConst(Eq(y, w.y), Fraction(1)), PrGeqConst(Eq(y, w.y), Fraction(1)))
        return [Cf(fix + (Eq(x, w.x),), zero), Cf(fix + (Eq(x, w.x_prime),), one)]
    inner = And(Cf((Eq(x, w.x),), Eq(y, w.y)), Cf((Eq(x, w.x_prime),), Eq(y, w.y_prime)))
    return [Cf(fix, inner)] if fix else [inner]


_KINDS = {"direct": direct_cause, "pdirect": probabilistic_direct_cause, "total": total_cause}


def cause_relation(team: CausalTeam, kind: str = "direct", *, max_search: int | None = None) -> list[CauseVerdict]:
    """Verdicts for every ordered pair of distinct variables."""
    try:
        test = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown cause kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    return [
        test(team, a, b, max_search=max_search)
        for a, b in itertools.permutations(team.variables, 2)
    ]
