"""Formula syntax for the languages CO, CO^neg, CD and PCD.

Concrete grammar (loosest binding first)::

    formula  := sel
    sel      := bor ( ("=>" | "~>") sel )?       right associative
    bor      := tor ( "||" tor )*                 boolean disjunction
    tor      := conj ( "|" conj )*                tensor disjunction
    conj     := unary ( "&" unary )*
    unary    := "-" unary | "!" unary | atom | "(" formula ")"
    atom     := VAR "=" VAL | VAR "!=" VAL | "dep(" VAR ("," VAR)* ";" VAR ")"
              | "Pr(" formula ")" CMP ( RATIONAL | "Pr(" formula ")" )
    CMP      := "<=" | ">=" | "=" | "<" | ">"

``-`` is dual negation, ``!`` contradictory negation (probabilistic
literals only). ``=``, ``<`` and ``>`` between probabilities are
abbreviations and expand into ``<=``/``>=`` literals on parsing.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .core import CausalTeamError, FormalTerm, UnknownVariable, check_value

__all__ = [
    "Eq", "Neq", "Dep", "And", "Or", "BOr", "Sel", "Cf", "DualNeg", "ContraNeg",
    "PrLeqConst", "PrGeqConst", "PrLeqPr", "PrGeqPr", "Formula", "Language",
    "ParseError", "IllFormed", "IllFormedSelector", "FormalEntryEncountered",
    "parse", "to_text", "classify", "variables_of",
]


class ParseError(CausalTeamError, ValueError):
    def __init__(self, text: str, position: int, expected: set[str]):
        self.text, self.position, self.expected = text, position, set(expected)
        got = text[position:position + 10] or "end of input"
        super().__init__(
            f"at position {position}: expected one of {', '.join(sorted(self.expected))}; got {got!r}"
        )


class IllFormed(CausalTeamError, ValueError):
    def __init__(self, path: tuple, reason: str):
        self.path, self.reason = path, reason
        super().__init__(f"{reason} (at {'/'.join(map(str, path)) or 'root'})")


class IllFormedSelector(IllFormed):
    pass


class FormalEntryEncountered(CausalTeamError, ValueError):
    """Truth was asked of an entry holding a formal term."""


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    var: str
    value: object


@dataclass(frozen=True)
class Neq:
    var: str
    value: object


@dataclass(frozen=True)
class Dep:
    xs: tuple
    y: str

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(sorted(set(self.xs))))


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    """Tensor disjunction: the support splits between the disjuncts."""

    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class BOr:
    """Boolean disjunction of team-level verdicts."""

    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Sel:
    """Selective implication: evaluate ``consequent`` on the selected rows."""

    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class Cf:
    """Interventionist counterfactual ``X1=x1 & ... ~> consequent``."""

    antecedent: tuple
    consequent: "Formula"

    def __post_init__(self):
        ante = tuple(self.antecedent)
        if not ante or not all(isinstance(a, Eq) for a in ante):
            raise IllFormed((), "counterfactual antecedent must be a non-empty conjunction of X=x atoms")
        object.__setattr__(self, "antecedent", ante)

    @property
    def consistent(self) -> bool:
        seen: dict[str, object] = {}
        return all(seen.setdefault(a.var, a.value) == a.value for a in self.antecedent)


@dataclass(frozen=True)
class DualNeg:
    arg: "Formula"


@dataclass(frozen=True)
class ContraNeg:
    arg: "Formula"


def _bound(eps) -> Fraction:
    if isinstance(eps, float):
        raise TypeError("probability bounds are exact; pass a Fraction, int or string")
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"probability bound {eps} outside [0, 1]")
    return eps


@dataclass(frozen=True)
class PrLeqConst:
    chi: "Formula"
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", _bound(self.eps))


@dataclass(frozen=True)
class PrGeqConst:
    chi: "Formula"
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", _bound(self.eps))


@dataclass(frozen=True)
class PrLeqPr:
    chi: "Formula"
    theta: "Formula"


@dataclass(frozen=True)
class PrGeqPr:
    chi: "Formula"
    theta: "Formula"


Formula = Union[
    Eq, Neq, Dep, And, Or, BOr, Sel, Cf, DualNeg, ContraNeg,
    PrLeqConst, PrGeqConst, PrLeqPr, PrGeqPr,
]

PROB_ATOMS = (PrLeqConst, PrGeqConst, PrLeqPr, PrGeqPr)


def conjunction(parts) -> Formula:
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def children(phi: Formula) -> tuple:
    if isinstance(phi, (And, Or, BOr)):
        return (phi.left, phi.right)
    if isinstance(phi, Sel):
        return (phi.antecedent, phi.consequent)
    if isinstance(phi, Cf):
        return (*phi.antecedent, phi.consequent)
    if isinstance(phi, (DualNeg, ContraNeg)):
        return (phi.arg,)
    if isinstance(phi, (PrLeqConst, PrGeqConst)):
        return (phi.chi,)
    if isinstance(phi, (PrLeqPr, PrGeqPr)):
        return (phi.chi, phi.theta)
    return ()


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    for c in children(phi):
        yield from subformulas(c)


def variables_of(phi: Formula) -> set[str]:
    out: set[str] = set()
    for f in subformulas(phi):
        if isinstance(f, (Eq, Neq)):
            out.add(f.var)
        elif isinstance(f, Dep):
            out.update(f.xs)
            out.add(f.y)
    return out


# -- languages ---------------------------------------------------------------


class Language(enum.Enum):
    CO = "CO"
    CO_NEG = "CO_NEG"
    CD = "CD"
    PCD = "PCD"

    def includes(self, other: "Language") -> bool:
        return other is self or other is Language.CO or (
            self is Language.PCD and other is Language.CD
        )


@dataclass(frozen=True)
class _Features:
    dep: bool = False
    neg: bool = False
    prob: bool = False

    def __or__(self, other: "_Features") -> "_Features":
        return _Features(self.dep or other.dep, self.neg or other.neg, self.prob or other.prob)


def _features(phi: Formula, path: tuple) -> _Features:
    if isinstance(phi, (Eq, Neq)):
        check_value(phi.value)
        if isinstance(phi.value, FormalTerm):
            raise IllFormed(path, "formal terms cannot appear in formulas")
        return _Features()
    if isinstance(phi, Dep):
        return _Features(dep=True)
    if isinstance(phi, (And, Or)):
        return _features(phi.left, path + (0,)) | _features(phi.right, path + (1,))
    if isinstance(phi, BOr):
        return _features(phi.left, path + (0,)) | _features(phi.right, path + (1,)) | _Features(prob=True)
    if isinstance(phi, Sel):
        a = _features(phi.antecedent, path + (0,))
        if a.dep or a.prob:
            raise IllFormed(path + (0,), "selective antecedent must be free of dependence atoms and probabilities")
        return a | _features(phi.consequent, path + (1,))
    if isinstance(phi, Cf):
        for n, a in enumerate(phi.antecedent):
            _features(a, path + (n,))
        return _features(phi.consequent, path + (len(phi.antecedent),))
    if isinstance(phi, DualNeg):
        return _features(phi.arg, path + (0,)) | _Features(neg=True)
    if isinstance(phi, ContraNeg):
        if not isinstance(phi.arg, PROB_ATOMS + (ContraNeg,)):
            raise IllFormed(path, "'!' applies to probabilistic literals only")
        return _features(phi.arg, path + (0,))
    if isinstance(phi, PROB_ATOMS):
        inner = [phi.chi] + ([phi.theta] if isinstance(phi, (PrLeqPr, PrGeqPr)) else [])
        for n, chi in enumerate(inner):
            f = _features(chi, path + (n,))
            if f.dep or f.neg or f.prob:
                raise IllFormed(path + (n,), "probabilities are taken of CO formulas only")
        return _Features(prob=True)
    raise TypeError(f"not a formula: {phi!r}")


def classify(phi: Formula) -> Language:
    """The least of CO, CO^neg, CD, PCD containing ``phi``.

    CO sits below every language and CD below PCD; dual negation does not
    combine with dependence atoms or probabilistic constructs.
    """
    f = _features(phi, ())
    if f.neg and (f.dep or f.prob):
        raise IllFormed((), "dual negation cannot be mixed with dependence atoms or probabilities")
    if f.prob:
        return Language.PCD
    if f.dep:
        return Language.CD
    if f.neg:
        return Language.CO_NEG
    return Language.CO


def is_flat(phi: Formula) -> bool:
    try:
        return classify(phi) in (Language.CO, Language.CO_NEG)
    except IllFormed:
        return False


def is_downward_closed(phi: Formula) -> bool:
    """No probabilistic construct occurs (CO, CO^neg and CD are downward closed)."""
    return not any(isinstance(f, PROB_ATOMS + (ContraNeg, BOr)) for f in subformulas(phi))


# -- classical evaluation on one assignment ------------------------------------


def ensure_classical(phi: Formula) -> None:
    for f in subformulas(phi):
        if not isinstance(f, (Eq, Neq, And, Or, Sel, DualNeg)):
            raise IllFormedSelector((), f"selector may not contain {type(f).__name__}")


def _entry(s: Mapping, var: str):
    try:
        v = s[var]
    except KeyError:
        raise UnknownVariable(var) from None
    if isinstance(v, FormalTerm):
        raise FormalEntryEncountered(f"{var} holds the formal term {v}")
    return v


def classical_holds(phi: Formula, s: Mapping) -> bool:
    """``s |= phi`` for a single assignment ``s`` (classical connectives)."""
    if isinstance(phi, Eq):
        return _entry(s, phi.var) == phi.value
    if isinstance(phi, Neq):
        return _entry(s, phi.var) != phi.value
    if isinstance(phi, And):
        return classical_holds(phi.left, s) and classical_holds(phi.right, s)
    if isinstance(phi, Or):
        return classical_holds(phi.left, s) or classical_holds(phi.right, s)
    if isinstance(phi, Sel):
        return not classical_holds(phi.antecedent, s) or classical_holds(phi.consequent, s)
    if isinstance(phi, DualNeg):
        return not classical_holds(phi.arg, s)
    raise IllFormedSelector((), f"{type(phi).__name__} is not classical")


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>=>|~>|\|\||!=|<=|>=|[|&=<>!\-(),;]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(text, pos, {"token"})
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, expected) -> ParseError:
        return ParseError(self.text, self.peek()[2], set(expected))

    def accept(self, *ops: str) -> str | None:
        kind, val, _ = self.peek()
        if kind == "op" and val in ops:
            self.i += 1
            return val
        return None

    def expect(self, op: str) -> None:
        if not self.accept(op):
            raise self.fail({repr(op)})

    def ident(self) -> str:
        kind, val, _ = self.peek()
        if kind != "id":
            raise self.fail({"variable"})
        self.i += 1
        return val

    def formula(self) -> Formula:
        phi = self.sel()
        if self.peek()[0] != "end":
            raise self.fail({"'=>'", "'~>'", "'||'", "'|'", "'&'", "end of input"})
        return phi

    def sel(self) -> Formula:
        start = self.peek()[2]
        left = self.bor()
        op = self.accept("=>", "~>")
        if op is None:
            return left
        right = self.sel()
        if op == "=>":
            return Sel(left, right)
        atoms = conjuncts(left)
        if not all(isinstance(a, Eq) for a in atoms):
            raise ParseError(self.text, start, {"conjunction of VAR=VAL before '~>'"})
        return Cf(tuple(atoms), right)

    def bor(self) -> Formula:
        phi = self.tor()
        while self.accept("||"):
            phi = BOr(phi, self.tor())
        return phi

    def tor(self) -> Formula:
        phi = self.conj()
        while self.accept("|"):
            phi = Or(phi, self.conj())
        return phi

    def conj(self) -> Formula:
        phi = self.unary()
        while self.accept("&"):
            phi = And(phi, self.unary())
        return phi

    def unary(self) -> Formula:
        if self.accept("-"):
            return DualNeg(self.unary())
        if self.accept("!"):
            return ContraNeg(self.unary())
        if self.accept("("):
            phi = self.sel()
            self.expect(")")
            return phi
        return self.atom()

    def atom(self) -> Formula:
        kind, val, _ = self.peek()
        nxt = self.peek(1)
        if kind == "id" and nxt[:2] == ("op", "("):
            if val == "dep":
                return self.dep()
            if val == "Pr":
                return self.prob()
        if kind != "id":
            raise self.fail({"variable", "'('", "'-'", "'!'", "'dep('", "'Pr('"})
        var = self.ident()
        op = self.accept("=", "!=")
        if op is None:
            raise self.fail({"'='", "'!='"})
        value = self.value()
        return Eq(var, value) if op == "=" else Neq(var, value)

    def value(self):
        neg = self.accept("-")
        kind, val, _ = self.peek()
        if kind == "num" and val.isdigit():
            self.i += 1
            return -int(val) if neg else int(val)
        if kind == "id" and not neg:
            self.i += 1
            return val
        raise self.fail({"integer", "identifier"})

    def dep(self) -> Formula:
        self.i += 1
        self.expect("(")
        xs = []
        if not self.accept(";"):
            xs.append(self.ident())
            while self.accept(","):
                xs.append(self.ident())
            self.expect(";")
        y = self.ident()
        self.expect(")")
        return Dep(tuple(xs), y)

    def pr_term(self) -> Formula:
        self.i += 1
        self.expect("(")
        chi = self.sel()
        self.expect(")")
        return chi

    def prob(self) -> Formula:
        chi = self.pr_term()
        cmp = self.accept("<=", ">=", "=", "<", ">")
        if cmp is None:
            raise self.fail({"'<='", "'>='", "'='", "'<'", "'>'"})
        kind, val, pos = self.peek()
        if kind == "id" and val == "Pr" and self.peek(1)[:2] == ("op", "("):
            other = self.pr_term()
            leq, geq = PrLeqPr(chi, other), PrGeqPr(chi, other)
        elif kind == "num":
            self.i += 1
            eps = Fraction(val)
            if not 0 <= eps <= 1:
                raise ParseError(self.text, pos, {"bound in [0, 1]"})
            leq, geq = PrLeqConst(chi, eps), PrGeqConst(chi, eps)
        else:
            raise self.fail({"rational", "'Pr('"})
        return {
            "<=": leq,
            ">=": geq,
            "=": And(leq, geq),
            "<": And(leq, ContraNeg(geq)),
            ">": And(geq, ContraNeg(leq)),
        }[cmp]


def conjuncts(phi: Formula) -> list:
    if isinstance(phi, And):
        return conjuncts(phi.left) + conjuncts(phi.right)
    return [phi]


def parse(text: str) -> Formula:
    """Parse formula text; raises :class:`ParseError` with a position."""
    return _Parser(text).formula()


# -- printer -------------------------------------------------------------------

_SEL, _BOR, _TOR, _CONJ, _UNARY, _ATOM = range(6)


def _level(phi: Formula) -> int:
    if isinstance(phi, (Sel, Cf)):
        return _SEL
    if isinstance(phi, BOr):
        return _BOR
    if isinstance(phi, Or):
        return _TOR
    if isinstance(phi, And):
        return _CONJ
    if isinstance(phi, (DualNeg, ContraNeg)):
        return _UNARY
    return _ATOM


def _val(v) -> str:
    return str(v)


def _pr(chi: Formula) -> str:
    return f"Pr({to_text(chi)})"


def to_text(phi: Formula, level: int = _SEL) -> str:
    """Render ``phi`` in the concrete grammar; ``parse(to_text(phi)) == phi``."""
    own = _level(phi)
    if isinstance(phi, Eq):
        s = f"{phi.var}={_val(phi.value)}"
    elif isinstance(phi, Neq):
        s = f"{phi.var}!={_val(phi.value)}"
    elif isinstance(phi, Dep):
        s = f"dep({','.join(phi.xs)}; {phi.y})"
    elif isinstance(phi, And):
        s = f"{to_text(phi.left, _CONJ)} & {to_text(phi.right, _UNARY)}"
    elif isinstance(phi, Or):
        s = f"{to_text(phi.left, _TOR)} | {to_text(phi.right, _CONJ)}"
    elif isinstance(phi, BOr):
        s = f"{to_text(phi.left, _BOR)} || {to_text(phi.right, _TOR)}"
    elif isinstance(phi, Sel):
        s = f"{to_text(phi.antecedent, _BOR)} => {to_text(phi.consequent, _SEL)}"
    elif isinstance(phi, Cf):
        ante = " & ".join(to_text(a) for a in phi.antecedent)
        s = f"{ante} ~> {to_text(phi.consequent, _SEL)}"
    elif isinstance(phi, DualNeg):
        s = "-" + to_text(phi.arg, _UNARY)
    elif isinstance(phi, ContraNeg):
        s = "!" + to_text(phi.arg, _UNARY)
    elif isinstance(phi, PrLeqConst):
        s = f"{_pr(phi.chi)} <= {phi.eps}"
    elif isinstance(phi, PrGeqConst):
        s = f"{_pr(phi.chi)} >= {phi.eps}"
    elif isinstance(phi, PrLeqPr):
        s = f"{_pr(phi.chi)} <= {_pr(phi.theta)}"
    elif isinstance(phi, PrGeqPr):
        s = f"{_pr(phi.chi)} >= {_pr(phi.theta)}"
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return f"({s})" if own < level else s
