"""``osl`` command-line tool.

Exit codes: 0 affirmative (valid, proved, checks pass), 1 negative with a
witness, 2 usage or input error, 3 a resource cap or search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .derived import DERIVED_RULES, expand_derived
from .errors import EvaluationError, OSLError, ParseError, ResourceError, StructureError
from .kernel import check_script, format_script, load_script
from .laws import check_laws
from .ospace import FiniteOSpace, check_axioms
from .search import Exhausted, Proved, Refuted, SearchConfig, decide, prove
from .semantics import (DEFAULT_ASSIGNMENT_CAP, eval_lhs, eval_prop, eval_rhs, eval_sequent_holds,
                        find_countermodel, format_assignment, load_assignment, valid_in_model)
from .syntax import Sequent, format_prop, format_sequent, normalize_sequent, parse_prop, parse_sequent, to_nnf
from .zoo import SEARCH_ZOO, ModelSpec, format_model, load_model

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _emit(args, report: dict, text: str):
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=False))
    elif text:
        print(text)


def _write_out(args, content: str):
    if args.out:
        Path(args.out).write_text(content)


def _model(args):
    if not args.model:
        raise _Usage("--model is required")
    spec = ModelSpec.parse(args.model)
    if spec.kind == "file":
        space, report = load_model(spec.params[0])
        if not report.ok and args.command != "model-check":
            print(f"warning: {args.model} fails axiom(s) "
                  f"{', '.join(r.name for r in report.failures())}", file=sys.stderr)
        return str(spec), space
    return str(spec), spec.build()


def _sequent(args) -> Sequent:
    if not args.sequent:
        raise _Usage("--sequent is required")
    return parse_sequent(args.sequent)


def _config(args) -> SearchConfig:
    return SearchConfig(max_depth=args.depth, cut_pool=args.cut_pool, node_budget=args.budget)


def _witness_report(w) -> dict:
    return w.to_dict()


def _witness_text(w) -> str:
    sp = w.space
    lines = [f"# countermodel in {w.model}" if w.model else "# countermodel",
             f"# lhs = {sp.format_flat(w.lhs)}", f"# rhs = {sp.format_flat(w.rhs)}"]
    return "\n".join(lines) + "\n" + format_assignment(sp, w.assignment)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_parse(args):
    if args.prop:
        p = parse_prop(args.prop)
        _emit(args, {"prop": format_prop(p)}, format_prop(p))
    else:
        s = _sequent(args)
        _emit(args, {"sequent": format_sequent(s)}, format_sequent(s))
    return EXIT_OK


def cmd_nnf(args):
    if args.prop:
        p = to_nnf(parse_prop(args.prop))
        _emit(args, {"nnf": format_prop(p)}, format_prop(p))
    else:
        s = normalize_sequent(_sequent(args))
        _emit(args, {"normalized": format_sequent(s)}, format_sequent(s))
    return EXIT_OK


def cmd_model_gen(args):
    name, space = _model(args)
    if not isinstance(space, FiniteOSpace):
        raise _Usage(f"{name} is not a finite model; only finite models have a file form")
    text = format_model(space)
    _write_out(args, text)
    _emit(args, {"model": name, "size": space.size, "flats": len(space.flats()),
                 "out": args.out}, "" if args.out else text.rstrip("\n"))
    return EXIT_OK


def cmd_model_check(args):
    name, space = _model(args)
    report = check_axioms(space)
    results = report.to_dict()
    ok = report.ok
    text = [f"model {name}", str(report)]
    if args.laws:
        laws = check_laws(space)
        results.update(laws.to_dict())
        ok = ok and laws.ok
        text.append(str(laws))
    text.append("OK" if ok else "FAILED")
    _emit(args, {"model": name, "ok": ok, "checks": results}, "\n".join(text))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_eval(args):
    name, space = _model(args)
    if not args.assign:
        raise _Usage("--assign is required")
    v = load_assignment(space, args.assign)
    if args.prop:
        f = eval_prop(space, v, parse_prop(args.prop))
        _emit(args, {"model": name, "prop": args.prop, "value": space.format_flat(f)},
              space.format_flat(f))
        return EXIT_OK
    s = _sequent(args)
    holds = eval_sequent_holds(space, v, s)
    lhs, rhs = eval_lhs(space, v, s.lhs), eval_rhs(space, v, s.rhs)
    _emit(args, {"model": name, "sequent": format_sequent(s), "holds": holds,
                 "lhs": space.format_flat(lhs), "rhs": space.format_flat(rhs)},
          f"{'holds' if holds else 'fails'}: lhs = {space.format_flat(lhs)}, rhs = {space.format_flat(rhs)}")
    return EXIT_OK if holds else EXIT_NEGATIVE


def cmd_valid(args):
    name, space = _model(args)
    s = _sequent(args)
    if args.assign:
        v = load_assignment(space, args.assign)
        holds = eval_sequent_holds(space, v, s)
        report = {"model": name, "sequent": format_sequent(s), "mode": "single assignment",
                  "status": "holds" if holds else "countermodel",
                  "assignment": {k: space.format_flat(f) for k, f in v.items()}}
        _emit(args, report, "holds under the given assignment" if holds
              else "countermodel (given assignment)\n" + format_assignment(space, v).rstrip("\n"))
        return EXIT_OK if holds else EXIT_NEGATIVE
    verdict = valid_in_model(space, s, args.cap, model=name)
    if verdict.valid:
        _emit(args, {"model": name, "sequent": format_sequent(s), "status": "valid",
                     "assignments": verdict.checked}, f"valid in {name} ({verdict.checked} assignments)")
        return EXIT_OK
    w = verdict.witness
    _write_out(args, format_assignment(space, w.assignment))
    _emit(args, {"model": name, "sequent": format_sequent(s), "status": "countermodel",
                 "witness": _witness_report(w)}, _witness_text(w).rstrip("\n"))
    return EXIT_NEGATIVE


def cmd_countermodel(args):
    s = _sequent(args)
    models = [str(ModelSpec.parse(m)) for m in args.model] if args.model else list(SEARCH_ZOO)
    skipped = []
    w = find_countermodel(s, models, args.cap, skipped)
    if w is None:
        _emit(args, {"sequent": format_sequent(s), "status": "none", "models": models,
                     "skipped": skipped},
              f"no countermodel in {', '.join(models)}" + (f" (skipped {', '.join(skipped)})" if skipped else ""))
        return EXIT_RESOURCE if skipped and len(skipped) == len(models) else EXIT_OK
    _write_out(args, format_assignment(w.space, w.assignment))
    _emit(args, {"sequent": format_sequent(s), "status": "countermodel", "witness": _witness_report(w)},
          _witness_text(w).rstrip("\n"))
    return EXIT_NEGATIVE


def _outcome(args, goal, outcome):
    if isinstance(outcome, Proved):
        text = format_script(outcome.script)
        _write_out(args, text)
        _emit(args, {"goal": format_sequent(goal), "status": "proved", "depth": outcome.depth,
                     "nodes": outcome.nodes, "script": text}, text.rstrip("\n"))
        return EXIT_OK
    if isinstance(outcome, Refuted):
        w = outcome.witness
        _write_out(args, format_assignment(w.space, w.assignment))
        _emit(args, {"goal": format_sequent(goal), "status": "refuted", "witness": _witness_report(w)},
              _witness_text(w).rstrip("\n"))
        return EXIT_NEGATIVE
    _emit(args, {"goal": format_sequent(goal), "status": "exhausted", "stats": outcome.stats},
          "exhausted: " + ", ".join(f"{k}={v}" for k, v in outcome.stats.items()))
    return EXIT_RESOURCE


def cmd_prove(args):
    goal = normalize_sequent(_sequent(args))
    return _outcome(args, goal, prove(goal, _config(args)))


def cmd_decide(args):
    goal = normalize_sequent(_sequent(args))
    models = [str(ModelSpec.parse(m)) for m in args.model] if args.model else SEARCH_ZOO
    return _outcome(args, goal, decide(goal, _config(args), models))


def cmd_check_proof(args):
    if not args.proof:
        raise _Usage("--proof is required")
    script = load_script(args.proof)
    v = check_script(script)
    if v is None:
        _emit(args, {"proof": args.proof, "status": "ok", "goal": format_sequent(script.goal),
                     "steps": len(script.steps)}, f"ok: {format_sequent(script.goal)} ({len(script.steps)} steps)")
        return EXIT_OK
    _emit(args, {"proof": args.proof, "status": "violation", "step": v.step,
                 "rule": v.rule.label if v.rule else None, "position": v.position,
                 "message": v.message}, str(v))
    return EXIT_NEGATIVE


def cmd_expand(args):
    if not args.rule:
        raise _Usage("--rule is required")
    bindings = {}
    for item in args.bind or ():
        key, eq, value = item.partition("=")
        if not eq:
            raise _Usage(f"--bind expects key=value, got {item!r}")
        bindings[key.strip()] = value
    try:
        script = expand_derived(args.rule, bindings)
    except KeyError as e:
        raise _Usage(str(e.args[0])) from None
    text = format_script(script)
    _write_out(args, text)
    _emit(args, {"rule": args.rule, "script": text}, text.rstrip("\n"))
    return EXIT_OK


COMMANDS = {
    "parse": (cmd_parse, "print a proposition or sequent in canonical form"),
    "nnf": (cmd_nnf, "negation normal form of a proposition, or normalize a sequent"),
    "model-gen": (cmd_model_gen, "write a finite model in the model file format"),
    "model-check": (cmd_model_check, "check the O-space axioms (and with --laws, the derived laws)"),
    "eval": (cmd_eval, "evaluate a proposition or sequent under an assignment"),
    "valid": (cmd_valid, "decide validity of a sequent in one model"),
    "countermodel": (cmd_countermodel, "search the model zoo for a countermodel"),
    "prove": (cmd_prove, "backward proof search"),
    "check-proof": (cmd_check_proof, "check a proof script"),
    "decide": (cmd_decide, "proof search and countermodel search together"),
    "expand": (cmd_expand, "expand a derived rule into primitive steps"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--assign", help="assignment file (atom = flat lines) or a --json report")
    common.add_argument("--sequent", help='sequent text, e.g. "p, q |- q, p"')
    common.add_argument("--prop", help="proposition text")
    common.add_argument("--proof", help="proof script file")
    common.add_argument("--depth", type=int, default=6, help="maximum proof height (default 6)")
    common.add_argument("--budget", type=int, default=200_000, help="search node budget")
    common.add_argument("--cut-pool", choices=("none", "subformulas"), default="subformulas")
    common.add_argument("--cap", type=int, default=DEFAULT_ASSIGNMENT_CAP,
                        help="maximum assignments per validity query")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--out", help="also write the witness, script or model here")
    common.add_argument("--laws", action="store_true", help="model-check: also check the derived laws")
    common.add_argument("--rule", help="expand: derived rule name (" + ", ".join(DERIVED_RULES) + ")")
    common.add_argument("--bind", action="append", help="expand: key=value binding, repeatable")

    parser = argparse.ArgumentParser(prog="osl", description="O-space semantics and the ten-rule calculus")
    parser.add_argument("--version", action="version", version=f"osl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("countermodel", "decide"):
            p.add_argument("--model", action="append",
                           help="model to search, repeatable (default: the search zoo)")
        else:
            p.add_argument("--model", help="zoo:sets:N, zoo:powerset:M, zoo:q2, union(a,b) or a model file")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command][0](args)
    except _Usage as e:
        print(f"osl {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as e:
        print(f"osl {args.command}: resource cap: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, StructureError, EvaluationError, OSError, ValueError) as e:
        print(f"osl {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSLError as e:
        print(f"osl {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
