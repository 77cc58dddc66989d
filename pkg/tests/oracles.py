"""Independent reference implementations used as test oracles."""

import itertools

from osl.syntax import And, Atom, Neg, Or, Sequent, atoms, negate

from gen import rand_prop, rand_seq


def truth(p, row):
    if isinstance(p, Atom):
        return row[p.name]
    if isinstance(p, Neg):
        return not truth(p.arg, row)
    if isinstance(p, And):
        return truth(p.left, row) and truth(p.right, row)
    return truth(p.left, row) or truth(p.right, row)


def classically_valid(s: Sequent) -> bool:
    """Truth-table entailment: every row making all of lhs true makes some of rhs true."""
    names = sorted(atoms(s.lhs + s.rhs))
    for vals in itertools.product((False, True), repeat=len(names)):
        row = dict(zip(names, vals))
        if all(truth(f, row) for f in s.lhs) and not any(truth(f, row) for f in s.rhs):
            return False
    return True


RULES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10")


def rule_instance(rng, rule, names=("p", "q", "r"), depth=2):
    """(premises, conclusion) lhs tuples read straight off the rule schemas."""
    f = lambda: rand_prop(rng, names, depth, restricted=True)  # noqa: E731
    seq = lambda: rand_seq(rng, names, max_len=2, depth=depth)  # noqa: E731
    G, D, a, b = seq(), seq(), f(), f()
    if rule == "R1":
        return [G + (a,) + D, G + (negate(a),) + D], G + D
    if rule == "R2":
        return [(a, b)], (b, a)
    if rule == "R3":
        return [G + D], (a,) + G + D
    if rule == "R4":
        return [G + D], G + D + (a,)
    if rule == "R5":
        return [G + D, G + (a,)], G + (negate(a),) + D
    if rule == "R6":
        s = Atom(rng.choice(names))
        return [], (s, Neg(s))
    if rule == "R7":
        return [(a, b) + D], (And(a, b),) + D
    if rule == "R8":
        return [G + (a, b)], G + (And(b, a),)
    if rule == "R9":
        return [], (negate(a), negate(b), Or(b, a))
    if rule == "R10":
        return [G + (a,) + D, G + (negate(a), b) + D], G + (Or(a, b),) + D
    raise ValueError(rule)
