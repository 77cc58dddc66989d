"""Algebraic laws every O-space satisfies, as executable checks.

Each law is quantified over the space's flat family (and, where the law
speaks of arbitrary subsets or states, over subsets and states too).  On a
finite space every quantifier is exhaustive.  On a rational space flats
are the finite list, exact; states and non-flat subsets come from the
deterministic sample.

``check_laws(space)`` returns an :class:`AxiomReport` keyed by law name.
"""

from __future__ import annotations

import itertools

from .hilbert import RationalSpace, sum_subspaces
from .ospace import AxiomReport, AxiomResult, FiniteFlat, FiniteOSpace, OSpace, check_axioms, restrict

SUBSET_ENUM_LIMIT = 8   # enumerate all subsets of carriers up to this size
RATIONAL_STATE_SAMPLE = 24


class _Fail(Exception):
    pass


def _union(space, A, B):
    if isinstance(space, FiniteOSpace):
        return space.union(A, B)
    return sum_subspaces(A, B)


def subsets(space: OSpace) -> list:
    """Subsets the closure-level laws quantify over."""
    flats = space.flats()
    if isinstance(space, FiniteOSpace):
        states = space.states()
        if len(states) <= SUBSET_ENUM_LIMIT:
            out = []
            for r in range(len(states) + 1):
                for combo in itertools.combinations(states, r):
                    out.append(FiniteFlat.of(combo))
            return out
        extra = [space.singleton(x) for x in states]
        extra += [space.union(a, b) for a, b in itertools.combinations(flats, 2)]
        return list(dict.fromkeys(list(flats) + extra))
    rays = [space.singleton(x) for x in space.states()[:RATIONAL_STATE_SAMPLE]]
    return list(dict.fromkeys(list(flats) + rays))


def _states(space: OSpace) -> list:
    if isinstance(space, RationalSpace):
        return space.states()[:RATIONAL_STATE_SAMPLE]
    return space.states()


def _law(fn):
    fn.law_name = fn.__name__[4:].replace("_", "-")
    return fn


class _Ctx:
    def __init__(self, space):
        self.s = space
        self.F = space.flats()
        self.n = 0

    def fmt(self, *named):
        return ", ".join(f"{k}={self.s.format_flat(v)}" for k, v in named)

    def need(self, cond, *named):
        self.n += 1
        if not cond:
            raise _Fail(self.fmt(*named))


@_law
def law_complement_of_union(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        c.need(s.complement(_union(s, A, B)) == s.meet(s.complement(A), s.complement(B)), ("A", A), ("B", B))


@_law
def law_complement_antitone(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        if s.flat_subset(A, B):
            c.need(s.flat_subset(s.complement(B), s.complement(A)), ("A", A), ("B", B))


@_law
def law_closure_operator(c):
    s = c.s
    subs = subsets(s)
    for A in subs:
        cl = s.closure(A)
        c.need(s.flat_subset(A, cl) and s.closure(cl) == cl, ("A", A))
    for A, B in itertools.product(subs, repeat=2):
        if s.flat_subset(A, B):
            c.need(s.flat_subset(s.closure(A), s.closure(B)), ("A", A), ("B", B))


@_law
def law_closure_complement(c):
    s = c.s
    for A in subsets(s):
        c.need(s.complement(s.closure(A)) == s.complement(A), ("A", A))


@_law
def law_projection_ignores_closure(c):
    s = c.s
    for A, B in itertools.product(subsets(s), repeat=2):
        p = s.project(A, B)
        c.need(p == s.project(s.closure(A), B) == s.project(A, s.closure(B)) == s.closure(p),
               ("A", A), ("B", B))


@_law
def law_closure_meets_complement_in_zero(c):
    s = c.s
    X, Z = s.carrier(), s.zero()
    for A in subsets(s):
        Ac = s.complement(A)
        c.need(s.meet(s.closure(A), Ac) == Z and s.closure(_union(s, A, Ac)) == X, ("A", A))


@_law
def law_meet_below_projection(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        c.need(s.flat_subset(s.meet(A, B), s.project(A, B)), ("A", A), ("B", B))


@_law
def law_projection_onto_superflat(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        if s.flat_subset(A, B):
            c.need(s.project(B, A) == s.closure(A) and s.project(A, B) == A, ("A", A), ("B", B))


@_law
def law_orthomodularity(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        if s.flat_subset(A, B):
            c.need(B == s.closure(_union(s, A, s.meet(s.complement(A), B))), ("A", A), ("B", B))


@_law
def law_commutation(c):
    s = c.s
    Z = s.zero()
    for A, B in itertools.product(c.F, repeat=2):
        orth = s.flats_orthogonal(A, B)
        c.need(orth == (s.project(A, B) == Z), ("A", A), ("B", B))
        if orth:
            c.need(s.project(A, B) == s.project(B, A) and s.dual_sum(A, B) == s.dual_sum(B, A),
                   ("A", A), ("B", B))


@_law
def law_residual(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        target = s.meet(B, s.complement(A))
        c.need(s.meet(B, s.complement(s.project(A, B))) == target, ("A", A), ("B", B))
        c.need(s.meet(B, s.complement(s.project(B, A))) == target, ("A", A), ("B", B))


@_law
def law_projection_absorbs_dual(c):
    s = c.s
    for A, B in itertools.product(c.F, repeat=2):
        d = s.dual_sum(s.complement(A), B)
        m = s.meet(A, B)
        c.need(s.project(A, d) == m == s.project(d, A), ("A", A), ("B", B))


@_law
def law_projection_distributes_over_union(c):
    s = c.s
    for A1, A2, B in itertools.product(c.F, repeat=3):
        lhs = s.project(_union(s, A1, A2), B)
        rhs = s.closure(_union(s, s.project(A1, B), s.project(A2, B)))
        c.need(lhs == rhs, ("A1", A1), ("A2", A2), ("B", B))


@_law
def law_nested_projection(c):
    s = c.s
    for A, B, C in itertools.product(c.F, repeat=3):
        if s.flat_subset(A, B):
            ca = s.project(C, A)
            c.need(s.project(s.project(C, B), A) == ca == s.project(ca, B), ("A", A), ("B", B), ("C", C))


@_law
def law_commuting_measurements(c):
    s = c.s
    for A, B, C in itertools.product(c.F, repeat=3):
        if s.project(A, B) == s.project(B, A):
            c.need(s.project(s.project(C, A), B) == s.project(s.project(C, B), A),
                   ("A", A), ("B", B), ("C", C))


@_law
def law_right_and_soundness(c):
    s = c.s
    Z = s.zero()
    for A, B, C in itertools.product(c.F, repeat=3):
        c.need((s.project(s.project(A, B), C) == Z) == (s.project(A, s.project(C, B)) == Z),
               ("A", A), ("B", B), ("C", C))


@_law
def law_turnstile_move(c):
    s = c.s
    for A, B, C in itertools.product(c.F, repeat=3):
        c.need(s.flat_subset(s.project(A, s.complement(B)), C) == s.flat_subset(A, s.dual_sum(B, C)),
               ("A", A), ("B", B), ("C", C))


@_law
def law_state_orthogonality(c):
    s = c.s
    states = _states(s)
    for A in c.F:
        comp_cache = {x: s.complement(s.project(s.singleton(x), A)) for x in states}
        for y in states:
            if not s.member(y, A):
                continue
            for x in states:
                lhs = s.orthogonal(y, x)
                rhs = s.member(y, comp_cache[x])
                c.n += 1
                if lhs != rhs:
                    raise _Fail(f"A={s.format_flat(A)}, x={x}, y={y}")


@_law
def law_o_subspace(c):
    s = c.s
    Z = s.zero()
    for C in c.F:
        sub = restrict(s, C)
        rep = check_axioms(sub)
        c.n += 1
        if not rep.ok:
            raise _Fail(f"C={s.format_flat(C)}: restriction fails {rep.failures()[0]}")
        c.need(sub.zero() == s.meet(Z, C), ("C", C))
        inside = sub.flats()
        for A, B in itertools.product(inside, repeat=2):
            c.need(sub.project(A, B) == s.project(A, B), ("C", C), ("A", A), ("B", B))
            c.need(sub.dual_sum(A, B) == s.dual_sum(A, B), ("C", C), ("A", A), ("B", B))


LAWS = {fn.law_name: fn for fn in (
    law_complement_of_union, law_complement_antitone, law_closure_operator,
    law_closure_complement, law_projection_ignores_closure, law_closure_meets_complement_in_zero,
    law_meet_below_projection, law_projection_onto_superflat, law_orthomodularity,
    law_commutation, law_residual, law_projection_absorbs_dual,
    law_projection_distributes_over_union, law_nested_projection, law_commuting_measurements,
    law_right_and_soundness, law_turnstile_move, law_state_orthogonality, law_o_subspace,
)}


def check_laws(space: OSpace, names=None) -> AxiomReport:
    mode = "exhaustive" if space.exhaustive else "exact on flat list, sampled states"
    report = AxiomReport()
    for name in names or LAWS:
        c = _Ctx(space)
        try:
            LAWS[name](c)
            report.results[name] = AxiomResult(name, True, c.n, mode)
        except _Fail as e:
            report.results[name] = AxiomResult(name, False, c.n, mode, str(e))
    return report
