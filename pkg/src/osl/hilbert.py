"""Exact inner-product backend on Q^n.

Flats are linear subspaces kept in reduced row-echelon form, orthogonality is
the vanishing of the dot product.  All arithmetic uses :class:`fractions.Fraction`;
floating point never enters this module, so subspace equality is decidable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, StructureError
from .ospace import AxiomReport, AxiomResult, OSpace, _check_F, _check_O

DEFAULT_SAMPLE_BUDGET = 200
SAMPLE_COORDS = tuple(sorted({Fraction(p, q) for p in range(-2, 3) for q in (1, 2)}))


def vec(*coords) -> tuple:
    """Build a rational vector; accepts ints, Fractions and 'p/q' strings."""
    return tuple(Fraction(c) for c in coords)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise StructureError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Iterable[Sequence], n: int) -> tuple:
    """Reduced row-echelon form with zero rows dropped."""
    m = [list(map(Fraction, r)) for r in rows]
    for r in m:
        if len(r) != n:
            raise StructureError(f"vector of length {len(r)} in Q^{n}")
    out_row = 0
    for col in range(n):
        piv = next((i for i in range(out_row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[out_row], m[piv] = m[piv], m[out_row]
        p = m[out_row][col]
        m[out_row] = [x / p for x in m[out_row]]
        for i in range(len(m)):
            if i != out_row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[out_row])]
        out_row += 1
        if out_row == len(m):
            break
    return tuple(tuple(r) for r in m[:out_row])


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^dim given by its canonical (RREF) basis."""

    dim: int
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def __str__(self):
        return format_subspace(self)


def span(vectors: Iterable[Sequence], dim: int | None = None) -> Subspace:
    vectors = [tuple(Fraction(x) for x in v) for v in vectors]
    if dim is None:
        if not vectors:
            raise StructureError("span of no vectors needs an explicit dimension")
        dim = len(vectors[0])
    return Subspace(dim, rref(vectors, dim))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_subspace(n: int) -> Subspace:
    return span([tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)], n)


def _same_dim(*spaces: Subspace) -> int:
    dims = {s.dim for s in spaces}
    if len(dims) != 1:
        raise StructureError(f"ambient dimension mismatch: {sorted(dims)}")
    return dims.pop()


def orth_subspace(A: Subspace) -> Subspace:
    """All vectors whose dot product with every basis row of A vanishes."""
    n = A.dim
    pivots = A.pivots()
    free = [j for j in range(n) if j not in pivots]
    null = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(A.basis, pivots):
            v[p] = -row[f]
        null.append(v)
    return Subspace(n, rref(null, n))


def sum_subspaces(A: Subspace, B: Subspace) -> Subspace:
    n = _same_dim(A, B)
    return Subspace(n, rref(A.basis + B.basis, n))


def intersect(A: Subspace, B: Subspace) -> Subspace:
    n = _same_dim(A, B)
    cons = orth_subspace(A).basis + orth_subspace(B).basis
    return orth_subspace(Subspace(n, rref(cons, n)))


def includes(A: Subspace, B: Subspace) -> bool:
    """True iff A is contained in B (rank test)."""
    _same_dim(A, B)
    return sum_subspaces(A, B).rank == B.rank


def project_subspace(A: Subspace, B: Subspace) -> Subspace:
    """A (x) B = B & (B & A^perp)^perp, each step exact."""
    _same_dim(A, B)
    return intersect(B, orth_subspace(intersect(B, orth_subspace(A))))


def sum_dual(A: Subspace, B: Subspace) -> Subspace:
    """A (+) B = (B^perp (x) A^perp)^perp."""
    return orth_subspace(project_subspace(orth_subspace(B), orth_subspace(A)))


def _solve(G: list, rhs: list) -> list:
    """Solve the nonsingular square system G c = rhs exactly."""
    k = len(G)
    m = [list(G[i]) + [rhs[i]] for i in range(k)]
    red = rref(m, k + 1)
    if len(red) != k or any(red[i][i] != 1 for i in range(k)):
        raise StructureError("singular system")
    return [red[i][k] for i in range(k)]


def orthogonal_projection(v: Sequence, B: Subspace) -> tuple:
    """The image of v under orthogonal projection onto B (normal equations)."""
    v = tuple(Fraction(x) for x in v)
    if len(v) != B.dim:
        raise StructureError(f"vector of length {len(v)} in Q^{B.dim}")
    if not B.basis:
        return tuple(Fraction(0) for _ in v)
    G = [[dot(bi, bj) for bj in B.basis] for bi in B.basis]
    c = _solve(G, [dot(bi, v) for bi in B.basis])
    return tuple(sum((ci * bi[j] for ci, bi in zip(c, B.basis)), Fraction(0))
                 for j in range(B.dim))


def sample_combinations(basis: Sequence, budget: int) -> list:
    """Nonzero combinations of ``basis`` with coefficients from SAMPLE_COORDS,
    in lexicographic order of the coefficient tuple, at most ``budget``."""
    if not basis:
        return []
    n = len(basis[0])
    out = []
    for coeffs in itertools.product(SAMPLE_COORDS, repeat=len(basis)):
        if not any(coeffs):
            continue
        out.append(tuple(sum((c * b[j] for c, b in zip(coeffs, basis)), Fraction(0))
                         for j in range(n)))
        if len(out) >= budget:
            break
    return out


# ---------------------------------------------------------------------------
# literal syntax:  span[(1,0),(1/2,-3)]
# ---------------------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_VEC_RE = re.compile(r"\((%s(?:,%s)*)\)" % (_RAT, _RAT))


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v) -> str:
    return "(" + ",".join(format_rational(Fraction(x)) for x in v) + ")"


def format_subspace(A: Subspace) -> str:
    return "span[" + ",".join(format_vector(r) for r in A.basis) + "]"


def parse_vector(text: str) -> tuple:
    t = re.sub(r"\s+", "", text)
    m = _VEC_RE.fullmatch(t)
    if not m:
        raise ParseError(f"bad vector literal {text!r}", text)
    try:
        return tuple(Fraction(x) for x in m.group(1).split(","))
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", text) from None


def parse_subspace(text: str, dim: int | None = None) -> Subspace:
    """Parse ``span[(..),(..)]``; whitespace is ignored.  ``span[]`` needs ``dim``."""
    t = re.sub(r"\s+", "", text)
    if not (t.startswith("span[") and t.endswith("]")):
        raise ParseError(f"subspace literal must look like span[(1,0),(1,1)]: {text!r}", text)
    body = t[5:-1]
    vectors = []
    pos = 0
    while pos < len(body):
        m = _VEC_RE.match(body, pos)
        if not m:
            raise ParseError(f"bad vector in subspace literal {text!r}", text, pos + 5)
        vectors.append(parse_vector(m.group(0)))
        pos = m.end()
        if pos < len(body):
            if body[pos] != ",":
                raise ParseError(f"expected ',' in subspace literal {text!r}", text, pos + 5)
            pos += 1
            if pos == len(body):
                raise ParseError(f"trailing ',' in subspace literal {text!r}", text, pos + 5)
    if not vectors:
        if dim is None:
            raise ParseError("span[] needs a known ambient dimension", text)
        return zero_subspace(dim)
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise ParseError(f"vectors of different lengths in {text!r}", text)
    if dim is not None and d != dim:
        raise StructureError(f"literal {text!r} lives in Q^{d}, expected Q^{dim}")
    return span(vectors, d)


# ---------------------------------------------------------------------------
# the O-space facade
# ---------------------------------------------------------------------------

class RationalSpace(OSpace):
    """Q^n (or a subspace ``carrier`` of it) with dot-product orthogonality.

    The family of all subspaces is infinite, so ``flats`` is a finite list
    standing in for it wherever enumeration is needed.  The carrier itself is
    never materialised; every query is answered at the subspace level.
    """

    def __init__(self, n: int, flats=None, *, sample_budget: int = DEFAULT_SAMPLE_BUDGET,
                 carrier: Subspace | None = None):
        if n < 1:
            raise StructureError("ambient dimension must be >= 1")
        self.n = n
        self.sample_budget = sample_budget
        self._carrier = full_subspace(n) if carrier is None else carrier
        _same_dim(self._carrier, zero_subspace(n))
        if flats is None:
            flats = [self.zero(), self._carrier]
        self._flats = list(dict.fromkeys(self.as_subset(f) for f in flats))
        for f in self._flats:
            if not includes(f, self._carrier):
                raise StructureError(f"flat {f} is not inside the carrier")
        self._states = None

    @property
    def exhaustive(self) -> bool:
        return False

    def as_subset(self, A) -> Subspace:
        if isinstance(A, Subspace):
            _same_dim(A, self._carrier)
            return A
        if isinstance(A, str):
            return parse_subspace(A, self.n)
        return span(list(A), self.n)

    def orthogonal(self, x, y) -> bool:
        return dot(x, y) == 0

    def complement(self, A) -> Subspace:
        o = orth_subspace(self.as_subset(A))
        if self._carrier.rank == self.n:
            return o
        return intersect(o, self._carrier)

    def meet(self, A, B) -> Subspace:
        return intersect(self.as_subset(A), self.as_subset(B))

    def join(self, A, B) -> Subspace:
        return self.closure(sum_subspaces(self.as_subset(A), self.as_subset(B)))

    def carrier(self) -> Subspace:
        return self._carrier

    def flats(self) -> list:
        return list(self._flats)

    def flat_subset(self, A, B) -> bool:
        return includes(self.as_subset(A), self.as_subset(B))

    def member(self, x, A) -> bool:
        return includes(span([x], self.n), self.as_subset(A))

    def singleton(self, x) -> Subspace:
        return span([x], self.n)

    def states(self) -> list:
        if self._states is None:
            self._states = sample_combinations(self._carrier.basis, self.sample_budget)
        return self._states

    def format_flat(self, A) -> str:
        return format_subspace(self.as_subset(A))

    def parse_flat(self, text: str) -> Subspace:
        return parse_subspace(text, self.n)

    def restrict(self, C: Subspace) -> "RationalSpace":
        flats = [f for f in self._flats if includes(f, C)]
        return RationalSpace(self.n, flats, sample_budget=self.sample_budget, carrier=C)

    def __repr__(self):
        return f"RationalSpace(n={self.n}, flats={len(self._flats)})"


def check_axioms_sampled(space: RationalSpace, flats_under_test=None,
                         sample_budget: int | None = None) -> AxiomReport:
    """Axiom report for the rational backend.

    S and Z are structural facts of the dot product over Q, confirmed on the
    sample.  F is checked on the finite flat list (singleton closures are
    rays, which are subspaces).  O and A are checked for every listed flat
    against ``sample_budget`` deterministic sample vectors.
    """
    budget = space.sample_budget if sample_budget is None else sample_budget
    if flats_under_test is None:
        flats = space.flats()
    else:
        flats = [space.as_subset(f) for f in flats_under_test]
    if budget != space.sample_budget:
        space = RationalSpace(space.n, flats, sample_budget=budget, carrier=space.carrier())
    states = space.states()[:budget]
    report = AxiomReport()

    n = 0
    res = AxiomResult("S", True, mode="structural")
    for x in states[:50]:
        for y in states[:50]:
            n += 1
            if dot(x, y) != dot(y, x):
                res = AxiomResult("S", False, mode="structural",
                                  witness=f"{format_vector(x)} . {format_vector(y)} not symmetric")
    res.checked = n
    report.results["S"] = res

    res = AxiomResult("Z", True, len(states) + 1, mode="structural")
    z = space.zero()
    origin = tuple(Fraction(0) for _ in range(space.n))
    if not space.member(origin, z):
        res = AxiomResult("Z", False, 1, mode="structural", witness="0 is not in Z")
    for x in states:
        if dot(x, x) == 0 and not space.member(x, z):
            res = AxiomResult("Z", False, len(states), mode="structural",
                              witness=f"{format_vector(x)} is self-orthogonal but not in Z")
            break
    report.results["Z"] = res

    res = _check_F(space, flats)
    res.mode = "finite list"
    report.results["F"] = res

    res = _check_O(space, flats, states)
    res.mode = "sampled"
    report.results["O"] = res

    report.results["A"] = _check_A_sampled(space, flats, budget)
    return report


def _check_A_sampled(space: RationalSpace, flats: list, budget: int) -> AxiomResult:
    # A(x)B is covered by the rays {a}(x)B iff it is exactly the image of A under
    # orthogonal projection onto B and every such image P_B(a) lies in {a}(x)B.
    n = 0
    for A in flats:
        samples = sample_combinations(A.basis, budget)
        for B in flats:
            n += 1
            P = project_subspace(A, B)
            image = span([orthogonal_projection(a, B) for a in A.basis], space.n)
            if P != image:
                return AxiomResult("A", False, n, mode="sampled", witness=(
                    f"A={A}, B={B}: A(x)B = {P} but projection image is {image}"))
            for a in samples:
                n += 1
                w = orthogonal_projection(a, B)
                if not includes(span([w], space.n), project_subspace(span([a]), B)):
                    return AxiomResult("A", False, n, mode="sampled", witness=(
                        f"A={A}, B={B}: {format_vector(w)} is in A(x)B but not in "
                        f"{{{format_vector(a)}}}(x)B"))
    return AxiomResult("A", True, n, mode="sampled")
