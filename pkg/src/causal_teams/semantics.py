"""Truth, falsifiability, admissibility and probabilities on causal teams."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .core import CausalTeam, CausalTeamError, FormalTerm, is_value
from .formula import (
    PROB_ATOMS,
    And,
    BOr,
    Cf,
    ContraNeg,
    Dep,
    DualNeg,
    Eq,
    FormalEntryEncountered,
    Formula,
    Language,
    Neq,
    Or,
    PrGeqConst,
    PrGeqPr,
    PrLeqConst,
    PrLeqPr,
    Sel,
    classical_holds,
    classify,
    is_downward_closed,
    is_flat,
    parse,
    subformulas,
    variables_of,
)
from .intervention import (
    NotFullyDefined,
    SolutionPolicy,
    complete_partial,
    intervene,
)

__all__ = [
    "Evaluator", "satisfies", "probability", "falsifies", "admits",
    "Relation", "Judgment", "judge", "EmptySupport", "NotCO", "NotDNF",
    "NotSupported", "UnsupportedPolicy",
]


class EmptySupport(CausalTeamError, ValueError):
    pass


class NotCO(CausalTeamError, ValueError):
    pass


class NotDNF(CausalTeamError, ValueError):
    pass


class NotSupported(CausalTeamError, ValueError):
    pass


class UnsupportedPolicy(CausalTeamError, ValueError):
    pass


def _formula(phi) -> Formula:
    return parse(phi) if isinstance(phi, str) else phi


def _is_classical(phi: Formula) -> bool:
    return all(isinstance(f, (Eq, Neq, And, Or, Sel, DualNeg)) for f in subformulas(phi))


def _cell(team: CausalTeam, row: tuple, i: int, var: str):
    v = row[i]
    if isinstance(v, FormalTerm):
        raise FormalEntryEncountered(f"{var} holds the formal term {v}; use falsifies/admits")
    return v


Trace = Callable[[str, Formula, CausalTeam], None]


class Evaluator:
    """Evaluates the truth relation ``T |= phi``.

    ``policy`` selects how counterfactual antecedents are applied. With
    ``complete`` set, partially defined recursive teams are completed before
    an intervention; otherwise a counterfactual on them is an error.
    ``flat_shortcut`` lets tensor disjunctions of flat formulas be decided
    row by row instead of by split search. ``trace`` receives every
    restricted or intervened team met during evaluation.

    Split search for ``|`` is exponential in the support size: ``2**n``
    partitions for downward-closed disjuncts and up to ``3**n`` covers
    otherwise.
    """

    def __init__(
        self,
        policy: SolutionPolicy = SolutionPolicy.RECURSIVE,
        *,
        complete: bool = True,
        flat_shortcut: bool = True,
        trace: Trace | None = None,
    ):
        self.policy = SolutionPolicy(policy)
        self.complete = complete
        self.flat_shortcut = flat_shortcut
        self.trace = trace

    # -- helpers ----------------------------------------------------------

    def intervene(self, team: CausalTeam, cf: Cf) -> CausalTeam:
        if self.policy is SolutionPolicy.RECURSIVE:
            if not team.is_recursive:
                raise UnsupportedPolicy("cyclic team: choose a unique-solutions policy")
            if not team.fully_defined:
                if not self.complete:
                    raise NotFullyDefined("counterfactual on a partially defined team (completion disabled)")
                team = complete_partial(team)
        out = intervene(team, cf.antecedent, self.policy)
        if self.trace:
            self.trace("intervene", cf, out)
        return out

    def select(self, team: CausalTeam, theta: Formula) -> CausalTeam:
        if _is_classical(theta):
            keep = [i for i, r in enumerate(team.rows)
                    if classical_holds(theta, dict(zip(team.variables, r)))]
        else:
            keep = [i for i, s in enumerate(team.singletons()) if self.holds(s, theta)]
        return team.subteam(keep)

    def probability(self, team: CausalTeam, chi: Formula) -> Fraction:
        if not team.rows:
            raise EmptySupport("probability on an empty support")
        if _is_classical(chi):
            hits = sum(classical_holds(chi, dict(zip(team.variables, r))) for r in team.rows)
        else:
            hits = sum(self.holds(s, chi) for s in team.singletons())
        return Fraction(hits, len(team.rows))

    # -- the truth relation -------------------------------------------------

    def holds(self, team: CausalTeam, phi: Formula) -> bool:
        if isinstance(phi, Eq):
            i = team.index(phi.var)
            return all(_cell(team, r, i, phi.var) == phi.value for r in team.rows)
        if isinstance(phi, Neq):
            i = team.index(phi.var)
            return all(_cell(team, r, i, phi.var) != phi.value for r in team.rows)
        if isinstance(phi, Dep):
            xi = [(team.index(x), x) for x in phi.xs]
            yi = team.index(phi.y)
            seen: dict[tuple, object] = {}
            for r in team.rows:
                k = tuple(_cell(team, r, i, x) for i, x in xi)
                y = _cell(team, r, yi, phi.y)
                if seen.setdefault(k, y) != y:
                    return False
            return True
        if isinstance(phi, And):
            return self.holds(team, phi.left) and self.holds(team, phi.right)
        if isinstance(phi, BOr):
            return self.holds(team, phi.left) or self.holds(team, phi.right)
        if isinstance(phi, Or):
            return self._split(team, phi)
        if isinstance(phi, Sel):
            sub = self.select(team, phi.antecedent)
            if self.trace:
                self.trace("restrict", phi.antecedent, sub)
            return self.holds(sub, phi.consequent)
        if isinstance(phi, Cf):
            if not phi.consistent:
                return True
            return self.holds(self.intervene(team, phi), phi.consequent)
        if isinstance(phi, DualNeg):
            return not any(self.holds(s, phi.arg) for s in team.singletons())
        if isinstance(phi, ContraNeg):
            return not self.holds(team, phi.arg)
        if isinstance(phi, PROB_ATOMS):
            if not team.rows:
                return False
            p = self.probability(team, phi.chi)
            if isinstance(phi, PrLeqConst):
                return p <= phi.eps
            if isinstance(phi, PrGeqConst):
                return p >= phi.eps
            q = self.probability(team, phi.theta)
            return p <= q if isinstance(phi, PrLeqPr) else p >= q
        raise TypeError(f"not a formula: {phi!r}")

    def _split(self, team: CausalTeam, phi: Or) -> bool:
        left, right = phi.left, phi.right
        n = len(team.rows)
        if self.flat_shortcut and is_flat(left) and is_flat(right):
            return all(self.holds(s, left) or self.holds(s, right) for s in team.singletons())

        full = (1 << n) - 1
        memo_l: dict[int, bool] = {}
        memo_r: dict[int, bool] = {}

        def sub(mask: int) -> CausalTeam:
            return team.subteam(i for i in range(n) if mask >> i & 1)

        def left_ok(mask: int) -> bool:
            if mask not in memo_l:
                memo_l[mask] = self.holds(sub(mask), left)
            return memo_l[mask]

        def right_ok(mask: int) -> bool:
            if mask not in memo_r:
                memo_r[mask] = self.holds(sub(mask), right)
            return memo_r[mask]

        if is_downward_closed(left) and is_downward_closed(right):
            # any cover shrinks to a partition without losing truth
            return any(left_ok(m) and right_ok(full ^ m) for m in range(full + 1))
        for m in range(full + 1):
            if not left_ok(m):
                continue
            free = m  # rows of m may or may not also go to the right side
            extra = free
            while True:
                if right_ok((full ^ m) | extra):
                    return True
                if extra == 0:
                    break
                extra = (extra - 1) & free
        return False


def satisfies(team: CausalTeam, phi, policy: SolutionPolicy = SolutionPolicy.RECURSIVE, **options) -> bool:
    """``team |= phi`` under the truth relation.

    ``phi`` may be a formula object or its text. Reading an entry that
    holds a formal term raises :class:`FormalEntryEncountered`.
    """
    phi = _formula(phi)
    classify(phi)
    return Evaluator(policy, **options).holds(team, phi)


def probability(team: CausalTeam, chi, policy: SolutionPolicy = SolutionPolicy.RECURSIVE) -> Fraction:
    """Fraction of rows whose singleton subteam satisfies the CO formula ``chi``.

    Multiteam rows count with multiplicity.
    """
    chi = _formula(chi)
    if classify(chi) is not Language.CO:
        raise NotCO("probabilities are defined for CO formulas only")
    return Evaluator(policy).probability(team, chi)


# -- falsifiability ---------------------------------------------------------------


class _Falsifier:
    def __init__(self, evaluator: Evaluator):
        self.ev = evaluator

    def holds(self, team: CausalTeam, phi: Formula) -> bool:
        if isinstance(phi, (Eq, Neq)):
            i = team.index(phi.var)
            for r in team.rows:
                v = r[i]
                if is_value(v) and ((v != phi.value) if isinstance(phi, Eq) else (v == phi.value)):
                    return True
            return False
        if isinstance(phi, Dep):
            xi = [team.index(x) for x in phi.xs]
            yi = team.index(phi.y)
            groups: dict[tuple, set] = {}
            for r in team.rows:
                if is_value(r[yi]):
                    groups.setdefault(tuple(r[i] for i in xi), set()).add(r[yi])
            return any(len(ys) > 1 for ys in groups.values())
        if isinstance(phi, And):
            return self.holds(team, phi.left) or self.holds(team, phi.right)
        if isinstance(phi, Or):
            # falsifiability is upward closed on this fragment, so checking
            # partitions covers every split
            n = len(team.rows)
            full = (1 << n) - 1
            for m in range(full + 1):
                a = team.subteam(i for i in range(n) if m >> i & 1)
                b = team.subteam(i for i in range(n) if not m >> i & 1)
                if not (self.holds(a, phi.left) or self.holds(b, phi.right)):
                    return False
            return True
        if isinstance(phi, Cf):
            if not phi.consistent:
                return False
            return self.holds(self.ev.intervene(team, phi), phi.consequent)
        if isinstance(phi, Sel):
            return self.holds(self._cautious(team, phi.antecedent), phi.consequent)
        raise NotSupported(f"no falsifiability clause for {type(phi).__name__}")

    def _cautious(self, team: CausalTeam, psi: Formula) -> CausalTeam:
        """Rows that certainly satisfy ``psi``.

        A row with a formal entry on a variable of ``psi`` might or might
        not be selected; leaving it out keeps a falsification claim safe.
        """
        idx = [team.index(v) for v in variables_of(psi)]
        keep = []
        for n, r in enumerate(team.rows):
            if any(not is_value(r[i]) for i in idx):
                continue
            try:
                if self.ev.holds(team.subteam([n]), psi):
                    keep.append(n)
            except FormalEntryEncountered:
                pass
        return team.subteam(keep)


def falsifies(team: CausalTeam, phi, policy: SolutionPolicy = SolutionPolicy.RECURSIVE, **options) -> bool:
    """``team |=^f phi``: the data refute ``phi`` despite formal entries."""
    phi = _formula(phi)
    lang = classify(phi)
    if lang is Language.PCD:
        raise NotSupported("falsifiability is not defined for probabilistic constructs")
    if lang is Language.CO_NEG:
        raise NotSupported("falsifiability is not defined for dual negation")
    return _Falsifier(Evaluator(policy, **options)).holds(team, phi)


# -- admissibility -----------------------------------------------------------------


def _disjuncts(phi: Formula) -> list:
    if isinstance(phi, Or):
        return _disjuncts(phi.left) + _disjuncts(phi.right)
    return [phi]


def _conjuncts(phi: Formula) -> list:
    if isinstance(phi, And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    if isinstance(phi, (Eq, Neq)):
        return [phi]
    raise NotDNF(f"{type(phi).__name__} inside a DNF term")


def _row_admits(team: CausalTeam, r: tuple, literals: list) -> bool:
    cells = [(lit, r[team.index(lit.var)]) for lit in literals]
    for lit, v in cells:
        if is_value(v) and ((v != lit.value) if isinstance(lit, Eq) else (v == lit.value)):
            return False
    for j, (p, vp) in enumerate(cells):
        if not isinstance(p, Eq):
            continue
        for k, (q, vq) in enumerate(cells):
            if j == k:
                continue
            clash = (isinstance(q, Eq) and q.value != p.value) or (
                isinstance(q, Neq) and q.value == p.value
            )
            # entries compared as syntax: equal terms cannot carry different values
            if clash and vp == vq:
                return False
    return True


def admits(team: CausalTeam, phi) -> bool:
    """``team |=^a phi``: ``phi`` is consistent with the concrete data.

    Defined for ``=``, ``!=`` and dependence atoms and for tensor
    disjunctions of conjunctions of ``=``/``!=`` literals. The subteams
    witnessing a disjunction must cover the support; since every DNF
    condition is checked row by row, this amounts to each row admitting
    some disjunct.
    """
    phi = _formula(phi)
    if isinstance(phi, Dep):
        xi = [team.index(x) for x in phi.xs]
        yi = team.index(phi.y)
        groups: dict[tuple, set] = {}
        for r in team.rows:
            if is_value(r[yi]):
                groups.setdefault(tuple(r[i] for i in xi), set()).add(r[yi])
        return all(len(ys) <= 1 for ys in groups.values())
    terms = [_conjuncts(d) for d in _disjuncts(phi)]
    return all(any(_row_admits(team, r, t) for t in terms) for r in team.rows)


# -- judgments -----------------------------------------------------------------------


class Relation(enum.Enum):
    TRUTH = "truth"
    FALSIFIABILITY = "falsifiable"
    ADMISSIBILITY = "admissible"


@dataclass(frozen=True)
class Judgment:
    relation: Relation
    verdict: bool


def judge(team: CausalTeam, phi, relation: Relation = Relation.TRUTH, **options) -> Judgment:
    relation = Relation(relation)
    if relation is Relation.TRUTH:
        verdict = satisfies(team, phi, **options)
    elif relation is Relation.FALSIFIABILITY:
        verdict = falsifies(team, phi, **options)
    else:
        verdict = admits(team, phi)
    return Judgment(relation, verdict)
