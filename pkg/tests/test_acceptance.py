"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line."""

import itertools
import random

import pytest

from osl.derived import CORE_DERIVED, DERIVED_RULES, expand_derived
from osl.derived import and_implies, circ, logical_axiom, ortho_disj_commute, repetition, vee_left_elim, vee_right_elim
from osl.hilbert import check_axioms_sampled
from osl.kernel import ScriptBuilder, check_script, format_script, load_script
from osl.laws import check_laws
from osl.ospace import check_axioms
from osl.search import Proved, Refuted, SearchConfig, decide, prove
from osl.semantics import (FlatTable, eval_prop, find_countermodel, format_assignment, load_assignment,
                           valid_in_model, zoo_space)
from osl.syntax import And, Atom, Neg, Or, Sequent, negate, normalize_sequent, parse_prop, parse_sequent, to_nnf
from osl.zoo import FINITE_ZOO, STANDARD_ZOO, format_model, load_model

from gen import rand_prop, rand_sequent
from oracles import RULES, classically_valid, rule_instance

P, S = parse_prop, parse_sequent


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail
    return emit


def test_criterion_01_axioms(report):
    bad = []
    for name in FINITE_ZOO:
        r = check_axioms(zoo_space(name))
        if not (r.ok and all(x.mode == "exhaustive" for x in r.results.values())):
            bad.append(name)
    q2 = check_axioms_sampled(zoo_space("q2"), sample_budget=200)
    if not q2.ok:
        bad.append("q2")
    report(1, not bad, f"S, Z, F, O, A on {len(FINITE_ZOO)} finite models (exhaustive) and q2 "
                       f"({len(zoo_space('q2').flats())} flats, 200 samples); failures: {bad or 'none'}")


def test_criterion_02_laws(report):
    bad, total = [], 0
    for name in STANDARD_ZOO:
        r = check_laws(zoo_space(name))
        total += sum(x.checked for x in r.results.values())
        bad += [f"{name}:{x.name}" for x in r.failures()]
    report(2, not bad, f"19 laws on {len(STANDARD_ZOO)} models, {total} instances; failures: {bad or 'none'}")


def test_criterion_03_rule_soundness(report):
    rng = random.Random(3)
    bad, live, total = [], 0, 0
    for name in STANDARD_ZOO:
        t = FlatTable(zoo_space(name))
        for rule in RULES:
            for _ in range(500):
                prem, conc = rule_instance(rng, rule)
                env = {n: rng.randrange(len(t.flats)) for n in "pqr"}
                total += 1
                if all(t.holds(env, Sequent(x)) for x in prem):
                    live += 1
                    if not t.holds(env, Sequent(conc)):
                        bad.append((name, rule, conc))
    report(3, not bad, f"{total} instances (500 per rule per model), premises held in {live}; "
                       f"violations: {len(bad)}")


def test_criterion_04_derived_rules(report):
    rng = random.Random(4)
    n_ok, n = 0, 0
    for name in CORE_DERIVED:
        keys, _ = DERIVED_RULES[name]
        for _ in range(15):
            b = {}
            for k in keys:
                if k in ("Gamma", "Delta"):
                    b[k] = tuple(rand_prop(rng, depth=rng.randint(0, 3), restricted=True)
                                 for _ in range(rng.randint(0, 2)))
                else:
                    b[k] = rand_prop(rng, depth=rng.randint(0, 3), restricted=True)
            n += 1
            n_ok += check_script(expand_derived(name, b)) is None
    report(4, n >= 100 and n_ok == n, f"{n_ok}/{n} binding sets across the 8 macros kernel-check")


def test_criterion_05_noncommutativity(report):
    r = decide(S("p, q, ~p |-"))
    refuted = isinstance(r, Refuted) and r.witness.model == "q2" and r.witness.recheck()
    p = prove(S("q, p, ~p |-"), SearchConfig(max_depth=6))
    proved = isinstance(p, Proved) and check_script(p.script) is None
    detail = (f"p, q, ~p |- {r.status}" + (f" in {r.witness.model}" if refuted else "")
              + f"; q, p, ~p |- {p.status}" + (f" at depth {p.depth}" if proved else ""))
    report(5, refuted and proved, detail)


def test_criterion_06_classical_collapse(report):
    p, q = Atom("p"), Atom("q")
    forms = [p, q, Neg(p), Neg(q), And(p, q), And(q, p), Or(p, q), Or(Neg(p), q), And(p, Neg(q)), Or(Neg(q), Neg(p))]
    t = FlatTable(zoo_space("sets:2"))
    envs = [dict(zip("pq", c)) for c in itertools.product(range(len(t.flats)), repeat=2)]
    n, disagree = 0, []
    for size in range(5):
        for k in range(size + 1):
            for lhs in itertools.product(forms, repeat=k):
                for rhs in itertools.product(forms, repeat=size - k):
                    s = Sequent(lhs, rhs)
                    n += 1
                    if all(t.holds(e, s) for e in envs) != classically_valid(s):
                        disagree.append(s)
    report(6, not disagree, f"{n} sequents over p, q with up to 4 formulas; disagreements: {len(disagree)}")


def test_criterion_07_excluded_middle(report):
    goal = normalize_sequent(S("|- a | ~a"))
    r = prove(S("|- a | ~a"), SearchConfig(max_depth=4))
    proved = isinstance(r, Proved) and check_script(r.script) is None and r.script.goal == goal
    valid = all(valid_in_model(zoo_space(m), S("|- a | ~a")).valid for m in STANDARD_ZOO)
    report(7, proved and valid and goal == S("a & ~a |-"),
           f"normalizes to '{goal}', {r.status}" + (f" at depth {r.depth}" if proved else "")
           + f", valid in all {len(STANDARD_ZOO)} models: {valid}")


def test_criterion_08_nnf_preservation(report):
    rng = random.Random(8)
    bad_eval, bad_valid, n_props, n_seq = 0, 0, 0, 0
    for name in STANDARD_ZOO:
        s = zoo_space(name)
        for _ in range(1000):
            f = rand_prop(rng, depth=rng.randint(1, 4))
            v = {x: rng.choice(s.flats()) for x in "pqr"}
            n_props += 1
            bad_eval += eval_prop(s, v, f) != eval_prop(s, v, to_nnf(f))
    for _ in range(500):
        seq = rand_sequent(rng, max_len=3)
        norm = normalize_sequent(seq)
        n_seq += 1
        for name in STANDARD_ZOO:
            sp = zoo_space(name)
            bad_valid += valid_in_model(sp, seq).valid != valid_in_model(sp, norm).valid
    report(8, bad_eval == 0 and bad_valid == 0,
           f"{n_props} propositions ({n_props // len(STANDARD_ZOO)} per model), {n_seq} sequents on every model; "
           f"mismatches: {bad_eval} eval, {bad_valid} validity")


# 25 sequents with closed derivations built from the rule templates
def derivable_corpus():
    out = []

    def closed(build):
        b = ScriptBuilder()
        script = b.script(build(b))
        assert check_script(script) is None and not script.hypotheses
        out.append(script.goal)

    for a in ("p", "~p", "p & q", "p | q", "p & ~q", "~p | q", "(p & q) & r", "p | q & r", "(p | q) & ~r",
              "~p & (q | r)"):
        closed(lambda b, a=a: logical_axiom(b, P(a)))
    for a, c in (("p", "q"), ("q", "p"), ("~p", "q"), ("p", "~q"), ("p & q", "r"), ("p", "q | r"), ("~q", "p & r")):
        closed(lambda b, a=a, c=c: and_implies(b, P(a), P(c)))
    p, q = P("p"), P("q")
    closed(lambda b: repetition(b, (), p, (Neg(p),), premise=logical_axiom(b, p)))
    closed(lambda b: b.r3(q, logical_axiom(b, p)))
    closed(lambda b: b.r4(logical_axiom(b, p), q))
    closed(lambda b: circ(b, p, Neg(p), q, premise=b.r4(logical_axiom(b, p), q)))
    closed(lambda b: vee_left_elim(b, p, q, (negate(Or(p, q)),), premise=logical_axiom(b, Or(p, q))))
    closed(lambda b: vee_right_elim(b, (negate(Or(q, p)),), q, p, premise=b.r2(logical_axiom(b, Or(q, p)))))
    closed(lambda b: ortho_disj_commute(b, p, Neg(p), premise=logical_axiom(b, p)))
    closed(lambda b: b.r7(logical_axiom(b, Atom("a"))))
    return out


REFUTABLE = [
    "p, q, ~p |-", "q, p, ~q |-", "p |- q", "p |-", "~p |-", "p & q |-", "p | q |-", "|- p", "p, q |-",
    "p, ~q |-", "p & q, ~p |-", "p | q, ~p |-", "p | q, ~q |-", "~p | q, p |-", "p & ~q, q & ~p |-",
    "p & q |- q & p", "p |- p & q", "p | q |- p", "q & p |- p & q", "p & (q | r), ~p |-",
    "p, q |- q & p", "p, q, ~p, r |-", "~p, q, p |-", "p, q | r, ~p |-", "p, q & r, ~p |-",
]


def test_criterion_09_coherence(report):
    derivable = derivable_corpus()
    refutable = [normalize_sequent(S(t)) for t in REFUTABLE]
    assert len(derivable) == 25 and len(refutable) == 25
    cfg = SearchConfig(max_depth=6, node_budget=20_000)
    clashes, unsound, proved, refuted, q2_only = [], [], 0, 0, 0
    for goal in derivable + refutable:
        r = prove(goal, cfg)
        w = find_countermodel(goal)
        if isinstance(r, Proved):
            proved += 1
            ok = check_script(r.script) is None and all(
                valid_in_model(zoo_space(m), r.script.goal).valid for m in STANDARD_ZOO)
            if not ok:
                unsound.append(goal)
        if w is not None:
            refuted += 1
            q2_only += w.model == "q2"
        if isinstance(r, Proved) and w is not None:
            clashes.append(goal)
    expected = proved == 25 and refuted == 25
    report(9, not clashes and not unsound and expected,
           f"50 goals: {proved} proved, {refuted} refuted ({q2_only} need q2), "
           f"both: {len(clashes)}, unsound proofs: {len(unsound)}")


def test_criterion_10_round_trips(report, samples, tmp_path):
    unstable = []
    files = 0
    for path in sorted((samples / "models").glob("*.model")):
        space, _ = load_model(path)
        files += 1
        if format_model(space) != path.read_text():
            unstable.append(path.name)
    for path in sorted((samples / "assignments").glob("*.assign")):
        space = zoo_space("q2" if path.name.startswith("q2") else "sets:2")
        files += 1
        if format_assignment(space, load_assignment(space, path)) != path.read_text():
            unstable.append(path.name)
    for path in sorted((samples / "proofs").glob("*.prf")):
        files += 1
        if format_script(load_script(path)) != path.read_text():
            unstable.append(path.name)
    report(10, files > 0 and not unstable, f"{files} shipped files load and save bit-stably; unstable: {unstable or 'none'}")
