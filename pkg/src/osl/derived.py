"""Derived rules as macros that expand into primitive kernel steps.

Bindings use ``alpha``, ``beta``, ``gamma`` for single formulas and
``Gamma``, ``Delta`` for formula sequences.  Premises of a derived rule
become ``hyp:`` leaves of the emitted script; ``neg`` is negation kept in
the restricted language.

    LogicalAxiom      -                        =>  a, neg a
    Repetition        Gamma, a, Delta          =>  Gamma, a, a, Delta
    Contraction       Gamma, a, a, Delta       =>  Gamma, a, Delta
    AndLeftElim       a & b, Delta             =>  a, b, Delta
    Circ              a, b, c                  =>  c, b, a
    AndRightElim      Gamma, a & b             =>  Gamma, b, a
    VeeLeftElim       a | b, Delta             =>  a, Delta
    VeeRightElim      Gamma, a | b             =>  Gamma, a
    Transitivity      neg b, a  and  neg c, b  =>  neg c, a
    OrthoDisjCommute  a, b                     =>  a | b, neg(b | a)
    OrthoDisjCommuteConverse  a, b             =>  b | a, neg(a | b)
    AndImplies        -                        =>  b & a, neg a
"""

from __future__ import annotations

from .errors import StructureError
from .kernel import ProofScript, ScriptBuilder
from .syntax import And, Atom, Neg, Or, Sequent, is_restricted, negate, parse_prop, parse_sequent

FORMULA_KEYS = ("alpha", "beta", "gamma")
SEQUENCE_KEYS = ("Gamma", "Delta")


def logical_axiom(b: ScriptBuilder, a) -> int:
    """a, neg a |- for any restricted a, by its outermost connective."""
    if isinstance(a, Atom):
        return b.r6(a)
    if isinstance(a, Neg):
        return b.r2(b.r6(a.arg))
    if isinstance(a, And):
        # neg(x & y) = neg y | neg x
        return b.r7(b.r9(negate(a.left), negate(a.right)))
    if isinstance(a, Or):
        return b.r2(b.r7(b.r9(a.right, a.left)))
    raise TypeError(f"not a proposition: {a!r}")


def repetition(b, Gamma, alpha, Delta, premise=None) -> int:
    h = b.hyp((*Gamma, alpha, *Delta)) if premise is None else premise
    la = b.r3_all(Gamma, logical_axiom(b, alpha))
    return b.r5(h, la)


def contraction(b, Gamma, alpha, Delta, premise=None) -> int:
    h = b.hyp((*Gamma, alpha, alpha, *Delta)) if premise is None else premise
    la = b.r4_all(b.r3_all(Gamma, logical_axiom(b, alpha)), Delta)
    return b.r1(h, la)


def and_left_elim(b, alpha, beta, Delta, premise=None) -> int:
    h = b.hyp((And(alpha, beta), *Delta)) if premise is None else premise
    left = b.r3(alpha, b.r3(beta, h))
    right = b.r4_all(b.r9(negate(alpha), negate(beta)), Delta)
    return b.r1(left, right)


def circ(b, alpha, beta, gamma, premise=None) -> int:
    h = b.hyp((alpha, beta, gamma)) if premise is None else premise
    swapped = b.r2(b.r8(h))
    return and_left_elim(b, gamma, beta, (alpha,), premise=swapped)


def and_right_elim(b, Gamma, alpha, beta, premise=None) -> int:
    h = b.hyp((*Gamma, And(alpha, beta))) if premise is None else premise
    left = b.r4(b.r4(h, beta), alpha)
    ax = b.r9(negate(alpha), negate(beta))
    right = b.r3_all(Gamma, circ(b, alpha, beta, b.lhs(ax)[2], premise=ax))
    return b.r1(left, right)


def vee_left_elim(b, alpha, beta, Delta, premise=None) -> int:
    h = b.hyp((Or(alpha, beta), *Delta)) if premise is None else premise
    right = b.r4_all(b.r8(b.r4(logical_axiom(b, alpha), negate(beta))), Delta)
    left = b.r3(alpha, h)
    return b.r1(left, right)


def vee_right_elim(b, Gamma, alpha, beta, premise=None) -> int:
    h = b.hyp((*Gamma, Or(alpha, beta))) if premise is None else premise
    right = b.r3_all(Gamma, b.r7(b.r3(negate(beta), b.r2(logical_axiom(b, alpha)))))
    left = b.r4(h, alpha)
    return b.r1(left, right)


def transitivity(b, alpha, beta, gamma, premises=None) -> int:
    if premises is None:
        h1 = b.hyp((negate(beta), alpha))
        h2 = b.hyp((negate(gamma), beta))
    else:
        h1, h2 = premises
    left = b.r4(h2, alpha)
    right = b.r3(negate(gamma), h1)
    return b.r1(left, right)


def ortho_disj_commute(b, alpha, beta, premise=None) -> int:
    h = b.hyp((alpha, beta)) if premise is None else premise
    d1 = b.r5(logical_axiom(b, alpha), h)
    d2 = b.r4(b.r3(negate(alpha), logical_axiom(b, beta)), negate(alpha))
    return b.r8(b.r10(d1, d2))


def ortho_disj_commute_converse(b, alpha, beta, premise=None) -> int:
    h = b.hyp((alpha, beta)) if premise is None else premise
    return ortho_disj_commute(b, beta, alpha, premise=b.r2(h))


def and_implies(b, alpha, beta) -> int:
    return b.r7(b.r3(beta, logical_axiom(b, alpha)))


DERIVED_RULES = {
    "LogicalAxiom": (("alpha",), lambda b, x: logical_axiom(b, x["alpha"])),
    "Repetition": (("Gamma", "alpha", "Delta"),
                   lambda b, x: repetition(b, x["Gamma"], x["alpha"], x["Delta"])),
    "Contraction": (("Gamma", "alpha", "Delta"),
                    lambda b, x: contraction(b, x["Gamma"], x["alpha"], x["Delta"])),
    "AndLeftElim": (("alpha", "beta", "Delta"),
                    lambda b, x: and_left_elim(b, x["alpha"], x["beta"], x["Delta"])),
    "Circ": (("alpha", "beta", "gamma"), lambda b, x: circ(b, x["alpha"], x["beta"], x["gamma"])),
    "AndRightElim": (("Gamma", "alpha", "beta"),
                     lambda b, x: and_right_elim(b, x["Gamma"], x["alpha"], x["beta"])),
    "VeeLeftElim": (("alpha", "beta", "Delta"),
                    lambda b, x: vee_left_elim(b, x["alpha"], x["beta"], x["Delta"])),
    "VeeRightElim": (("Gamma", "alpha", "beta"),
                     lambda b, x: vee_right_elim(b, x["Gamma"], x["alpha"], x["beta"])),
    "Transitivity": (("alpha", "beta", "gamma"),
                     lambda b, x: transitivity(b, x["alpha"], x["beta"], x["gamma"])),
    "OrthoDisjCommute": (("alpha", "beta"), lambda b, x: ortho_disj_commute(b, x["alpha"], x["beta"])),
    "OrthoDisjCommuteConverse": (("alpha", "beta"),
                                 lambda b, x: ortho_disj_commute_converse(b, x["alpha"], x["beta"])),
    "AndImplies": (("alpha", "beta"), lambda b, x: and_implies(b, x["alpha"], x["beta"])),
}

# the eight rules of the first batch; the others are lemma templates
CORE_DERIVED = ("LogicalAxiom", "Repetition", "Contraction", "AndLeftElim", "Circ",
                "AndRightElim", "VeeLeftElim", "VeeRightElim")


def _formula(key, value):
    p = parse_prop(value) if isinstance(value, str) else value
    if not is_restricted(p):
        raise StructureError(f"binding {key} is outside the restricted language")
    return p


def _sequence(key, value):
    if isinstance(value, str):
        value = parse_sequent(value if "|-" in value else value + " |-") if value.strip() else Sequent()
    if isinstance(value, Sequent):
        if value.rhs:
            raise StructureError(f"binding {key} must have an empty right-hand side")
        value = value.lhs
    return tuple(_formula(key, f) for f in value)


def normalize_bindings(name: str, bindings: dict) -> dict:
    if name not in DERIVED_RULES:
        raise KeyError(f"unknown derived rule {name!r}; known: {', '.join(DERIVED_RULES)}")
    keys, _ = DERIVED_RULES[name]
    unknown = set(bindings) - set(keys)
    if unknown:
        raise StructureError(f"{name} takes {', '.join(keys)}; got {', '.join(sorted(unknown))}")
    out = {}
    for k in keys:
        if k in SEQUENCE_KEYS:
            out[k] = _sequence(k, bindings.get(k, ()))
        elif k not in bindings:
            raise StructureError(f"{name} needs a binding for {k}")
        else:
            out[k] = _formula(k, bindings[k])
    return out


def expand_derived(name: str, bindings: dict) -> ProofScript:
    """Primitive-rule script for one instance of a derived rule.

    The rule's premises appear as ``hyp:`` lines; the goal is its conclusion.
    """
    b = normalize_bindings(name, bindings)
    builder = ScriptBuilder()
    # the conclusion may coincide with an earlier step, so name it explicitly
    return builder.script(DERIVED_RULES[name][1](builder, b))
