"""Causal teams: supports, graphs, ranges and partial invariant functions.

A causal team bundles four things over one finite variable domain:

* the *support*, a set (or keyed multiset) of assignments;
* a directed graph whose arrows point from parents to children;
* a finite range of admissible values for every variable;
* a partial function table for every endogenous variable, keyed by
  parent tuples listed in alphabetical order of the parent names.

Rows are stored as tuples aligned with ``team.variables`` (alphabetical).
All objects are immutable; every operation returns a fresh team.
"""
from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

KEY = "Key"

Value = Any  # int | str | FormalTerm


class CausalTeamError(Exception):
    """Base class for all errors raised by this package."""


class UnknownVariable(CausalTeamError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown variable {self.name!r}"


class ValidationError(CausalTeamError, ValueError):
    """Raised when components do not form a causal team."""


class RangeViolation(ValidationError):
    def __init__(self, variable: str, value: Value, row: int | None = None):
        self.variable, self.value, self.row = variable, value, row
        where = "" if row is None else f" (row {row})"
        super().__init__(
            f"(a) range: value {format_value(value)} not in Ran({variable}){where}"
        )


class DependenceViolation(ValidationError):
    def __init__(self, variable: str, first: Mapping, second: Mapping):
        self.variable, self.first, self.second = variable, dict(first), dict(second)
        super().__init__(
            f"(b) dependence: rows {format_row(first)} and {format_row(second)} "
            f"agree on the parents of {variable} but not on {variable}"
        )


class FunctionClash(ValidationError):
    def __init__(self, variable: str, row: Mapping, expected: Value, found: Value):
        self.variable, self.row = variable, dict(row)
        self.expected, self.found = expected, found
        super().__init__(
            f"(c) function: row {format_row(row)} has {variable}={format_value(found)} "
            f"but f_{variable} gives {format_value(expected)}"
        )


@dataclass(frozen=True)
class FormalTerm:
    """A placeholder ``f_X(args)`` for an unknown value of ``f_X``.

    Equality is structural, so two terms denote the same entry only when
    they were built from the same symbol and the same arguments.
    """

    variable: str
    args: tuple = ()

    def __str__(self) -> str:
        return f"f_{self.variable}({','.join(format_value(a) for a in self.args)})"


def is_value(v: Value) -> bool:
    """The ``↓`` predicate: true for concrete values, false for formal terms."""
    return not isinstance(v, FormalTerm)


def has_formal(values: Iterable[Value]) -> bool:
    return any(isinstance(v, FormalTerm) for v in values)


def check_value(v: Value) -> Value:
    # bool is an int subclass; JSON true/false must not sneak in as 1/0
    if isinstance(v, bool) or not isinstance(v, (int, str, FormalTerm)):
        raise ValidationError(f"values must be integers, identifier strings or formal terms, got {v!r}")
    if isinstance(v, str) and not v.isidentifier():
        raise ValidationError(f"string values must be identifiers, got {v!r}")
    return v


def format_value(v: Value) -> str:
    return str(v)


def format_row(row: Mapping) -> str:
    return "(" + ", ".join(f"{k}={format_value(v)}" for k, v in row.items()) + ")"


@dataclass(frozen=True)
class CausalGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "CausalGraph":
        vs = tuple(sorted(set(vertices)))
        es = frozenset((a, b) for a, b in edges)
        known = set(vs)
        for a, b in es:
            for v in (a, b):
                if v not in known:
                    raise UnknownVariable(v)
        return cls(vs, es)

    def parents(self, x: str) -> tuple[str, ...]:
        """Parents of ``x`` in alphabetical order (the table key order)."""
        return tuple(sorted(a for a, b in self.edges if b == x))

    def children(self, x: str) -> tuple[str, ...]:
        return tuple(sorted(b for a, b in self.edges if a == x))

    def without_arrows_into(self, xs: Iterable[str]) -> "CausalGraph":
        xs = set(xs)
        return CausalGraph(self.vertices, frozenset(e for e in self.edges if e[1] not in xs))

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except graphlib.CycleError:
            return False
        return True

    def topological_order(self) -> tuple[str, ...]:
        ts = graphlib.TopologicalSorter({v: self.parents(v) for v in self.vertices})
        return tuple(ts.static_order())

    def descendants(self, x: str) -> set[str]:
        """Vertices reachable from ``x`` by a directed path of length >= 1."""
        if x not in self.vertices:
            raise UnknownVariable(x)
        seen: set[str] = set()
        stack = list(self.children(x))
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(self.children(v))
        return seen


@dataclass(frozen=True, eq=False)
class CausalTeam:
    """An immutable causal team.

    Build instances through :func:`validate` (or :meth:`from_records`),
    which checks range containment, the parent dependencies and agreement
    with the function tables. ``keys`` is ``None`` in set mode; in multiteam
    mode it holds one distinct hidden ``Key`` per row.
    """

    variables: tuple[str, ...]
    rows: tuple[tuple, ...]
    graph: CausalGraph
    ranges: Mapping[str, tuple]
    functions: Mapping[str, Mapping[tuple, Value]]
    keys: tuple | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_records(
        cls,
        records: Iterable[Mapping[str, Value]],
        *,
        ranges: Mapping[str, Iterable[Value]],
        edges: Iterable[tuple[str, str]] = (),
        functions: Mapping[str, Mapping[tuple, Value]] | None = None,
        multiteam: bool = False,
        keys: Sequence | None = None,
    ) -> "CausalTeam":
        """Validate components given as plain Python data.

        Every variable with incoming arrows is endogenous; if no table is
        supplied for it, an empty (nowhere defined) table is assumed.
        """
        graph = CausalGraph.build(ranges, edges)
        return validate(list(records), graph, ranges, functions or {}, multiteam=multiteam, keys=keys)

    # -- basic accessors --------------------------------------------------

    @property
    def multiteam(self) -> bool:
        return self.keys is not None

    @property
    def endogenous(self) -> frozenset[str]:
        return frozenset(self.functions)

    @property
    def exogenous(self) -> frozenset[str]:
        return frozenset(self.variables) - self.endogenous

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    @property
    def _index(self) -> dict[str, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.variables)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def parents(self, x: str) -> tuple[str, ...]:
        return self.graph.parents(x)

    def column(self, name: str) -> list:
        i = self.index(name)
        return [r[i] for r in self.rows]

    def records(self) -> list[dict[str, Value]]:
        return [dict(zip(self.variables, r)) for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def is_recursive(self) -> bool:
        return self.graph.is_acyclic()

    @property
    def fully_defined(self) -> bool:
        """True iff every table is total on the product of parent ranges."""
        cached = self.__dict__.get("_full")
        if cached is None:
            cached = all(
                all(pa in table for pa in self.parent_tuples(v))
                for v, table in self.functions.items()
            )
            object.__setattr__(self, "_full", cached)
        return cached

    def parent_tuples(self, v: str) -> Iterable[tuple]:
        return itertools.product(*(self.ranges[p] for p in self.parents(v)))

    @property
    def has_formal_entries(self) -> bool:
        return any(has_formal(r) for r in self.rows)

    # -- derived teams ----------------------------------------------------

    def with_rows(self, rows: Sequence[tuple], keys: Sequence | None = None) -> "CausalTeam":
        """Same graph, ranges and functions over a new support (no checks)."""
        if self.keys is None:
            rows = _dedupe(rows)
            keys = None
        else:
            keys = tuple(keys) if keys is not None else tuple(range(len(rows)))
        return CausalTeam(self.variables, tuple(rows), self.graph, self.ranges, self.functions, keys)

    def subteam(self, indices: Iterable[int]) -> "CausalTeam":
        """The causal subteam whose support is the rows at ``indices``."""
        indices = sorted(indices)
        rows = tuple(self.rows[i] for i in indices)
        keys = None if self.keys is None else tuple(self.keys[i] for i in indices)
        return CausalTeam(self.variables, rows, self.graph, self.ranges, self.functions, keys)

    def singletons(self) -> list["CausalTeam"]:
        return [self.subteam([i]) for i in range(len(self.rows))]

    # -- equality ---------------------------------------------------------

    def _support_key(self):
        if self.keys is None:
            return frozenset(self.rows)
        return frozenset(zip(self.keys, self.rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CausalTeam):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.graph == other.graph
            and dict(self.ranges) == dict(other.ranges)
            and {k: dict(t) for k, t in self.functions.items()}
            == {k: dict(t) for k, t in other.functions.items()}
            and self.multiteam == other.multiteam
            and self._support_key() == other._support_key()
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        mode = "multiteam" if self.multiteam else "team"
        return f"<CausalTeam {mode} vars={list(self.variables)} rows={len(self.rows)}>"

    def __str__(self) -> str:
        return render_table(self)


def _dedupe(rows: Iterable[tuple]) -> tuple[tuple, ...]:
    return tuple(dict.fromkeys(rows))


def validate(
    records: Sequence[Mapping[str, Value]],
    graph: CausalGraph,
    ranges: Mapping[str, Iterable[Value]],
    functions: Mapping[str, Mapping[Sequence, Value]],
    *,
    multiteam: bool = False,
    keys: Sequence | None = None,
) -> CausalTeam:
    """Check the causal-team restrictions and build the team.

    Raises the first violation found, scanning variables alphabetically and
    rows in input order: :class:`RangeViolation` for (a),
    :class:`DependenceViolation` for (b), :class:`FunctionClash` for (c).
    """
    variables = tuple(sorted(ranges))
    if KEY in ranges:
        raise ValidationError(f"{KEY!r} is reserved for multiteam row identities")
    if not variables:
        raise ValidationError("a causal team needs at least one variable")
    if tuple(graph.vertices) != variables:
        raise ValidationError("graph vertices and range domain differ")
    rng: dict[str, tuple] = {}
    for v in variables:
        vals = tuple(dict.fromkeys(check_value(x) for x in ranges[v]))
        if not vals:
            raise ValidationError(f"Ran({v}) is empty")
        if has_formal(vals):
            raise ValidationError(f"declared Ran({v}) may only hold concrete values")
        rng[v] = vals

    # every variable with parents is endogenous
    funcs: dict[str, dict[tuple, Value]] = {}
    for v in variables:
        if v in functions or graph.parents(v):
            funcs[v] = {}
    for v, table in functions.items():
        if v not in rng:
            raise UnknownVariable(v)
        pa = graph.parents(v)
        for args, val in table.items():
            args = tuple(args)
            if len(args) != len(pa):
                raise ValidationError(f"f_{v} expects {len(pa)} arguments {pa}, got {args!r}")
            for p, a in zip(pa, args):
                check_value(a)
                if is_value(a) and a not in rng[p]:
                    raise RangeViolation(p, a)
            check_value(val)
            if is_value(val) and val not in rng[v]:
                raise RangeViolation(v, val)
            funcs[v][args] = val

    rows = []
    for n, rec in enumerate(records):
        missing = [v for v in variables if v not in rec]
        extra = [k for k in rec if k not in rng and k != KEY]
        if missing:
            raise ValidationError(f"row {n} does not assign {missing}")
        if extra:
            raise UnknownVariable(extra[0])
        rows.append(tuple(check_value(rec[v]) for v in variables))

    if multiteam:
        keys = tuple(keys) if keys is not None else tuple(range(len(rows)))
        if len(keys) != len(rows) or len(set(keys)) != len(keys):
            raise ValidationError("multiteam keys must be distinct, one per row")
    else:
        keys = None
        rows = list(_dedupe(rows))

    index = {v: i for i, v in enumerate(variables)}
    # (a)
    for v in variables:
        i = index[v]
        for n, r in enumerate(rows):
            if is_value(r[i]) and r[i] not in rng[v]:
                raise RangeViolation(v, r[i], n)
    # (b) then (c), per endogenous variable
    for v in sorted(funcs):
        pa = graph.parents(v)
        pi = [index[p] for p in pa]
        i = index[v]
        seen: dict[tuple, tuple] = {}
        for r in rows:
            key = tuple(r[j] for j in pi)
            prev = seen.setdefault(key, r)
            if prev[i] != r[i]:
                raise DependenceViolation(v, dict(zip(variables, prev)), dict(zip(variables, r)))
        table = funcs[v]
        for r in rows:
            key = tuple(r[j] for j in pi)
            if key in table and table[key] != r[i]:
                raise FunctionClash(v, dict(zip(variables, r)), table[key], r[i])

    return CausalTeam(variables, tuple(rows), graph, rng, funcs, keys)


def revalidate(team: CausalTeam) -> CausalTeam:
    """Run :func:`validate` on the components of an existing team."""
    return validate(
        team.records(), team.graph, team.ranges, team.functions,
        multiteam=team.multiteam, keys=team.keys,
    )


def satisfies_dependence(team: CausalTeam, xs: Iterable[str], y: str) -> bool:
    """``=(xs; y)``: rows that agree on ``xs`` agree on ``y``."""
    xi = [team.index(x) for x in xs]
    yi = team.index(y)
    seen: dict[tuple, Value] = {}
    for r in team.rows:
        k = tuple(r[i] for i in xi)
        if seen.setdefault(k, r[yi]) != r[yi]:
            return False
    return True


def is_recursive(team: CausalTeam) -> bool:
    return team.is_recursive


def restrict(team: CausalTeam, selector) -> CausalTeam:
    """The causal subteam of rows that classically satisfy ``selector``.

    ``selector`` is a formula (or its text) built from ``=``, ``!=``, ``&``,
    ``|``, ``=>`` and dual negation; dependence atoms, probabilities and
    counterfactuals are rejected with :class:`IllFormedSelector`.
    """
    from .formula import classical_holds, ensure_classical, parse

    if isinstance(selector, str):
        selector = parse(selector)
    ensure_classical(selector)
    return team.subteam(
        i for i, r in enumerate(team.rows)
        if classical_holds(selector, dict(zip(team.variables, r)))
    )


def render_table(team: CausalTeam) -> str:
    """Aligned text table: variables alphabetical, rows in support order."""
    cols = list(team.variables)
    body = [[format_value(v) for v in r] for r in team.rows]
    widths = [max([len(c)] + [len(b[i]) for b in body]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for b in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(b, widths)).rstrip())
    return "\n".join(lines)
