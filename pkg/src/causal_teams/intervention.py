"""Interventions ``do(X=x)`` on causal teams.

Three regimes are supported:

* recursive, fully defined teams: the staged algorithm that updates
  variables in order of their evaluation distance from the intervened set;
* recursive, partially defined teams: first :func:`complete_partial`,
  which fills missing table entries from the support or with formal terms;
* fully defined teams with (at most) unique solutions, cyclic graphs
  included: brute-force solving over the finite ranges.
"""
from __future__ import annotations

import enum
import itertools
from typing import Iterable, Mapping, Sequence

from .core import (
    CausalGraph,
    CausalTeam,
    CausalTeamError,
    FormalTerm,
    RangeViolation,
    UnknownVariable,
    format_row,
)


class InterventionError(CausalTeamError, ValueError):
    pass


class InconsistentIntervention(InterventionError):
    """Two conjuncts assign different values to one variable.

    A counterfactual with such an antecedent is true by convention; callers
    evaluating formulas handle that case before intervening.
    """


class CyclicGraph(InterventionError):
    pass


class NonRecursive(CyclicGraph):
    pass


class NotFullyDefined(InterventionError):
    pass


class MultipleSolutions(InterventionError):
    def __init__(self, row: Mapping):
        self.row = dict(row)
        super().__init__(f"row {format_row(row)} has several solutions")


class NoSolution(InterventionError):
    def __init__(self, row: Mapping):
        self.row = dict(row)
        super().__init__(f"row {format_row(row)} has no solution")


class SolutionPolicy(enum.Enum):
    RECURSIVE = "recursive"
    UNIQUE_SOLUTIONS = "unique"
    AT_MOST_UNIQUE = "at-most-unique"


Intervention = Sequence[tuple[str, object]]


def as_intervention(iv) -> list[tuple[str, object]]:
    """Accept ``{"X": 1}``, ``[("X", 1), ...]`` or a sequence of ``Eq`` atoms."""
    if isinstance(iv, Mapping):
        return list(iv.items())
    out = []
    for item in iv:
        if hasattr(item, "var") and hasattr(item, "value"):
            out.append((item.var, item.value))
        else:
            var, val = item
            out.append((var, val))
    return out


def is_consistent(iv) -> bool:
    seen: dict[str, object] = {}
    return all(seen.setdefault(v, x) == x for v, x in as_intervention(iv))


def evaluation_distance(graph: CausalGraph, xs: Iterable[str], y: str) -> int:
    """Length of the longest directed path from ``xs`` to ``y`` once arrows
    into ``xs`` are deleted; ``0`` for members of ``xs``, ``-1`` when no path.
    """
    return distances(graph, xs)[_known(graph, y)]


def _known(graph: CausalGraph, v: str) -> str:
    if v not in graph.vertices:
        raise UnknownVariable(v)
    return v


def distances(graph: CausalGraph, xs: Iterable[str]) -> dict[str, int]:
    xs = {_known(graph, x) for x in xs}
    cut = graph.without_arrows_into(xs)
    if not graph.is_acyclic():
        raise CyclicGraph("evaluation distance needs an acyclic graph")
    d = {v: (0 if v in xs else -1) for v in graph.vertices}
    for v in cut.topological_order():
        for p in cut.parents(v):
            if d[p] >= 0:
                d[v] = max(d[v], d[p] + 1)
    return d


def nondescendants(graph: CausalGraph, x: str) -> set[str]:
    """Vertices other than ``x`` not reachable from ``x``."""
    return set(graph.vertices) - graph.descendants(x) - {x}


# -- completion of partially defined teams --------------------------------------


def complete_partial(team: CausalTeam) -> CausalTeam:
    """Extend every table to all parent tuples.

    For a parent tuple ``pa`` of ``V``: keep ``f_V(pa)`` when defined; else
    copy ``s(V)`` from the first row ``s`` with parents ``pa``; else insert
    the formal term ``f_V(pa)``. Parent tuples containing formal terms that
    occur in the support are filled the same way, so the completed team
    stays consistent with its rows.
    """
    if not team.is_recursive:
        raise NonRecursive("only recursive teams can be completed")
    tables: dict[str, dict[tuple, object]] = {}
    for v, table in team.functions.items():
        pi = [team.index(p) for p in team.parents(v)]
        vi = team.index(v)
        observed: dict[tuple, object] = {}
        for r in team.rows:
            observed.setdefault(tuple(r[i] for i in pi), r[vi])
        new = dict(table)
        for pa in team.parent_tuples(v):
            if pa not in new:
                new[pa] = observed.get(pa, FormalTerm(v, pa))
        for pa, val in observed.items():
            new.setdefault(pa, val)
        tables[v] = new
    out = CausalTeam(team.variables, team.rows, team.graph, team.ranges, tables, team.keys)
    return out


def apply_function(team: CausalTeam, v: str, args: tuple):
    """``f_V(args)``; arguments outside the table yield the formal term."""
    table = team.functions[v]
    try:
        return table[args]
    except KeyError:
        if not any(isinstance(a, FormalTerm) for a in args):
            raise NotFullyDefined(f"f_{v} is undefined at {args}") from None
        return FormalTerm(v, args)


# -- intervention ----------------------------------------------------------------


def _prepare(team: CausalTeam, iv) -> dict[str, object]:
    pairs = as_intervention(iv)
    if not pairs:
        raise InterventionError("empty intervention")
    if not is_consistent(pairs):
        raise InconsistentIntervention(
            "inconsistent intervention " + " & ".join(f"{v}={x}" for v, x in pairs)
        )
    target = dict(pairs)
    for v, x in target.items():
        team.index(v)
        if x not in team.ranges[v]:
            raise RangeViolation(v, x)
    return target


def _result(team: CausalTeam, target: Mapping, rows, keys) -> CausalTeam:
    graph = team.graph.without_arrows_into(target)
    functions = {v: t for v, t in team.functions.items() if v not in target}
    proto = CausalTeam(team.variables, (), graph, team.ranges, functions, team.keys)
    return proto.with_rows(rows, keys)


def intervene(team: CausalTeam, iv, policy: SolutionPolicy = SolutionPolicy.RECURSIVE) -> CausalTeam:
    """Apply ``do(iv)`` and return the intervened team ``T_{X=x}``.

    The output graph lacks arrows into the intervened variables, which
    become exogenous. In set mode rows that coincide after the intervention
    merge; in multiteam mode every row keeps its key.
    """
    policy = SolutionPolicy(policy)
    target = _prepare(team, iv)
    if policy is SolutionPolicy.RECURSIVE:
        return _staged(team, target)
    return _solve(team, target, policy)


def _staged(team: CausalTeam, target: Mapping) -> CausalTeam:
    if not team.is_recursive:
        raise NonRecursive("the staged algorithm needs an acyclic graph; use a solution policy")
    if not team.fully_defined:
        raise NotFullyDefined("complete the team first (complete_partial)")
    dist = distances(team.graph, target)
    stages: dict[int, list[str]] = {}
    for v, d in dist.items():
        if d > 0:
            stages.setdefault(d, []).append(v)
    plan = []
    for n in sorted(stages):
        plan.append([
            (team.index(z), z, [team.index(p) for p in team.parents(z)])
            for z in sorted(stages[n])
        ])
    fixed = [(team.index(v), x) for v, x in target.items()]

    rows = []
    for r in team.rows:
        s = list(r)
        for i, x in fixed:
            s[i] = x
        for stage in plan:
            # every variable in a stage reads only values settled earlier
            update = [(i, apply_function(team, z, tuple(s[j] for j in pi))) for i, z, pi in stage]
            for i, val in update:
                s[i] = val
        rows.append(tuple(s))
    return _result(team, target, rows, team.keys)


def _solve(team: CausalTeam, target: Mapping, policy: SolutionPolicy) -> CausalTeam:
    if not team.fully_defined:
        raise NotFullyDefined("solution policies need fully defined functions")
    if team.has_formal_entries:
        raise NotFullyDefined("solution policies need formal-term-free supports")
    unknown = sorted(v for v in team.endogenous if v not in target)
    ui = [team.index(v) for v in unknown]
    eqs = [(team.index(v), [team.index(p) for p in team.parents(v)], team.functions[v]) for v in unknown]
    candidates = list(itertools.product(*(team.ranges[v] for v in unknown)))

    rows, keys = [], []
    for n, r in enumerate(team.rows):
        base = list(r)
        for v, x in target.items():
            base[team.index(v)] = x
        found = None
        count = 0
        for cand in candidates:
            s = list(base)
            for i, val in zip(ui, cand):
                s[i] = val
            if all(table[tuple(s[j] for j in pi)] == s[i] for i, pi, table in eqs):
                count += 1
                if count > 1:
                    raise MultipleSolutions(dict(zip(team.variables, r)))
                found = tuple(s)
        if found is None:
            if policy is SolutionPolicy.UNIQUE_SOLUTIONS:
                raise NoSolution(dict(zip(team.variables, r)))
            continue
        rows.append(found)
        if team.keys is not None:
            keys.append(team.keys[n])
    return _result(team, target, rows, keys if team.keys is not None else None)
