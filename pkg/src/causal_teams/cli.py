"""``causal-teams`` command line.

Exit status: 0 when the verdict is true (or the command succeeded), 1 when
it is false, 2 on any input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .causes import cause_relation, direct_cause, probabilistic_direct_cause, total_cause
from .core import CausalTeamError, render_table
from .formula import Cf, Eq, classify, conjuncts, parse, to_text
from .intervention import InconsistentIntervention, SolutionPolicy, complete_partial, intervene
from .io import dump_team, load_team
from .semantics import Evaluator, Relation, falsifies, admits, probability

CAUSE_TESTS = {"direct": direct_cause, "pdirect": probabilistic_direct_cause, "total": total_cause}


def _intervention_atoms(text: str) -> list:
    atoms = conjuncts(parse(text))
    if not all(isinstance(a, Eq) for a in atoms):
        raise ValueError(f"not a conjunction of VAR=VAL atoms: {text!r}")
    return atoms


def cmd_check(args, out) -> int:
    team = load_team(args.team)
    phi = parse(args.formula)
    classify(phi)
    relation = Relation(args.relation)
    if relation is Relation.TRUTH:
        def trace(kind, sub, t):
            if args.explain:
                label = "restriction to" if kind == "restrict" else "intervention"
                print(f"-- {label} {to_text(sub) if kind == 'restrict' else _ante(sub)}", file=out)
                print(render_table(t), file=out)
        ev = Evaluator(args.policy, complete=not args.no_complete, trace=trace)
        verdict = ev.holds(team, phi)
    elif relation is Relation.FALSIFIABILITY:
        verdict = falsifies(team, phi, args.policy, complete=not args.no_complete)
    else:
        verdict = admits(team, phi)
    print("true" if verdict else "false", file=out)
    return 0 if verdict else 1


def _ante(cf: Cf) -> str:
    return "do(" + " & ".join(to_text(a) for a in cf.antecedent) + ")"


def cmd_intervene(args, out) -> int:
    team = load_team(args.team)
    atoms = _intervention_atoms(args.intervention)
    policy = SolutionPolicy(args.policy)
    if policy is SolutionPolicy.RECURSIVE and not team.fully_defined and not args.no_complete:
        team = complete_partial(team)
    try:
        result = intervene(team, atoms, policy)
    except InconsistentIntervention as exc:
        raise InconsistentIntervention(f"{exc} (a counterfactual with this antecedent is true by convention)") from None
    print(render_table(result), file=out)
    if args.out:
        dump_team(result, args.out)
    return 0


def cmd_prob(args, out) -> int:
    team = load_team(args.team)
    p = probability(team, args.formula)
    print(str(p), file=out)
    return 0


def cmd_causes(args, out) -> int:
    team = load_team(args.team)
    if not team.fully_defined and not args.no_complete:
        team = complete_partial(team)
    if args.all:
        for v in cause_relation(team, args.kind, max_search=args.max_search):
            if v.holds:
                print(f"{v.cause} -> {v.effect}  {_witness(v)}", file=out)
        return 0
    if not (args.cause and args.effect):
        raise ValueError("give a cause and an effect variable, or --all")
    v = CAUSE_TESTS[args.kind](team, args.cause, args.effect, max_search=args.max_search)
    print("holds" if v.holds else "does not hold", file=out)
    if v.holds:
        print(_witness(v), file=out)
    return 0 if v.holds else 1


def _witness(v) -> str:
    w = v.witness
    fixed = ", ".join(f"{k}={val}" for k, val in w.fixed.items()) or "-"
    if w.y_prime is None:
        return (f"fixed: {fixed}; {v.cause}={w.x} -> Pr({v.effect}={w.y})=0, "
                f"{v.cause}={w.x_prime} -> Pr({v.effect}={w.y})=1")
    return (f"fixed: {fixed}; {v.cause}={w.x} -> {v.effect}={w.y}, "
            f"{v.cause}={w.x_prime} -> {v.effect}={w.y_prime}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="causal-teams", description="Causal team semantics toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, policy=True):
        sp.add_argument("team", help="team document (JSON)")
        if policy:
            sp.add_argument("--policy", default="recursive", choices=[s.value for s in SolutionPolicy])
        sp.add_argument("--no-complete", action="store_true",
                        help="do not complete partially defined teams before interventions")

    c = sub.add_parser("check", help="decide a formula")
    common(c)
    c.add_argument("formula")
    c.add_argument("--relation", default="truth", choices=[r.value for r in Relation])
    c.add_argument("--explain", action="store_true", help="print restricted and intervened teams")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("intervene", help="apply do(X=x) and print the team")
    common(i)
    i.add_argument("intervention")
    i.add_argument("--out", help="write the intervened team document here")
    i.set_defaults(func=cmd_intervene)

    r = sub.add_parser("prob", help="exact probability of a CO formula")
    r.add_argument("team")
    r.add_argument("formula")
    r.set_defaults(func=cmd_prob)

    k = sub.add_parser("causes", help="direct, probabilistic direct or total cause")
    common(k, policy=False)
    k.add_argument("kind", choices=sorted(CAUSE_TESTS))
    k.add_argument("cause", nargs="?")
    k.add_argument("effect", nargs="?")
    k.add_argument("--all", action="store_true", help="scan every ordered pair")
    k.add_argument("--max-search", type=int, default=100_000,
                   help="refuse context products larger than this")
    k.set_defaults(func=cmd_causes)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (CausalTeamError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
