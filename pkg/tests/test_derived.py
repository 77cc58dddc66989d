import random

import pytest

from osl.derived import CORE_DERIVED, DERIVED_RULES, expand_derived, normalize_bindings
from osl.errors import StructureError
from osl.kernel import RuleId, check_script
from osl.syntax import And, Or, Sequent, negate, parse_prop, parse_sequent

from gen import rand_prop, rand_seq

P = parse_prop


def expected_shape(name, x):
    """(hypotheses, conclusion) read off the rule statements."""
    G, D = x.get("Gamma", ()), x.get("Delta", ())
    a, b, c = x.get("alpha"), x.get("beta"), x.get("gamma")
    table = {
        "LogicalAxiom": lambda: ([], (a, negate(a))),
        "Repetition": lambda: ([G + (a,) + D], G + (a, a) + D),
        "Contraction": lambda: ([G + (a, a) + D], G + (a,) + D),
        "AndLeftElim": lambda: ([(And(a, b),) + D], (a, b) + D),
        "Circ": lambda: ([(a, b, c)], (c, b, a)),
        "AndRightElim": lambda: ([G + (And(a, b),)], G + (b, a)),
        "VeeLeftElim": lambda: ([(Or(a, b),) + D], (a,) + D),
        "VeeRightElim": lambda: ([G + (Or(a, b),)], G + (a,)),
        "Transitivity": lambda: ([(negate(b), a), (negate(c), b)], (negate(c), a)),
        "OrthoDisjCommute": lambda: ([(a, b)], (Or(a, b), negate(Or(b, a)))),
        "OrthoDisjCommuteConverse": lambda: ([(a, b)], (Or(b, a), negate(Or(a, b)))),
        "AndImplies": lambda: ([], (And(b, a), negate(a))),
    }
    return table[name]()


def binding_corpus(n, seed=7):
    rng = random.Random(seed)
    out = []
    for k in range(n):
        name = CORE_DERIVED[k % len(CORE_DERIVED)] if k < n - 40 else list(DERIVED_RULES)[k % len(DERIVED_RULES)]
        keys, _ = DERIVED_RULES[name]
        b = {}
        for key in keys:
            if key in ("Gamma", "Delta"):
                b[key] = rand_seq(rng, max_len=2, depth=2)
            else:
                b[key] = rand_prop(rng, depth=rng.randint(0, 3), restricted=True)
        out.append((name, b))
    return out


CORPUS = binding_corpus(160)


def test_corpus_size():
    assert len(CORPUS) >= 100
    assert {n for n, _ in CORPUS} == set(DERIVED_RULES)


@pytest.mark.parametrize("name,bindings", CORPUS, ids=[f"{n}-{i}" for i, (n, _) in enumerate(CORPUS)])
def test_expansion_checks(name, bindings):
    script = expand_derived(name, bindings)
    assert check_script(script) is None, str(script)
    hyps, concl = expected_shape(name, normalize_bindings(name, bindings))
    assert script.goal == Sequent(concl)
    assert {h.lhs for h in script.hypotheses} <= set(hyps)
    assert all(st.rule is not RuleId.HYP or st.conclusion in script.hypotheses for st in script.steps)


def test_logical_axiom_cases():
    rules = lambda f: [s.rule for s in expand_derived("LogicalAxiom", {"alpha": f}).steps]  # noqa: E731
    assert rules("s") == [RuleId.R6]
    assert rules("~s") == [RuleId.R6, RuleId.R2]
    assert rules("b & g") == [RuleId.R9, RuleId.R7]
    assert rules("b | g") == [RuleId.R9, RuleId.R7, RuleId.R2]


def test_circ_example():
    script = expand_derived("Circ", {"alpha": "a", "beta": "b", "gamma": "c"})
    assert script.goal == parse_sequent("c, b, a |-")
    assert script.hypotheses == [parse_sequent("a, b, c |-")]
    used = {s.rule for s in script.steps}
    assert {RuleId.R8, RuleId.R2, RuleId.R1} <= used


def test_contraction_example():
    script = expand_derived("Contraction", {"Gamma": "g", "alpha": "a", "Delta": "d"})
    assert script.goal == parse_sequent("g, a, d |-")
    assert script.steps[-1].rule is RuleId.R1


def test_string_and_sequent_bindings_agree():
    x = expand_derived("Repetition", {"Gamma": "p, q", "alpha": "r", "Delta": ""})
    y = expand_derived("Repetition", {"Gamma": parse_sequent("p, q |-"), "alpha": P("r")})
    assert x == y


def test_nonempty_rhs_binding_rejected():
    with pytest.raises(StructureError, match="right-hand side"):
        expand_derived("Repetition", {"Gamma": parse_sequent("p |- q"), "alpha": "r"})


@pytest.mark.parametrize("bindings", [{"alpha": "~~p"}, {"alpha": "~(p & q)"}, {}, {"alpha": "p", "zeta": "q"}])
def test_bad_bindings(bindings):
    with pytest.raises(StructureError):
        expand_derived("LogicalAxiom", bindings)


def test_unknown_rule():
    with pytest.raises(KeyError):
        expand_derived("Modus", {})
