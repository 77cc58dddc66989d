"""O-spaces: a carrier, a symmetric orthogonality relation and a family of flats.

Two backends share the :class:`OSpace` interface:

* :class:`FiniteOSpace` -- states are ``0..size-1`` and subsets are
  :class:`FiniteFlat` values (bitmask-backed, canonical sorted tuples).
* :class:`osl.hilbert.RationalSpace` -- states are vectors of Q^n and
  flats are subspaces.

Projection and its dual are always computed from the defining formula
``A (x) B = cl(B) & (cl(B) & A^perp)^perp``; the algebraic identities they
satisfy live in :mod:`osl.laws` as checks, never as shortcuts.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ResourceError, StructureError

DEFAULT_FAMILY_CAP = 4096


class OSpace(abc.ABC):
    """Uniform facade over both backends.

    Arguments named ``A``/``B`` accept anything :meth:`as_subset` accepts;
    every operation returns a flat of the backend's native type.
    """

    # --- backend hooks -------------------------------------------------
    @abc.abstractmethod
    def as_subset(self, A): ...

    @abc.abstractmethod
    def orthogonal(self, x, y) -> bool: ...

    @abc.abstractmethod
    def complement(self, A): ...

    @abc.abstractmethod
    def meet(self, A, B):
        """Set intersection of two flats."""

    @abc.abstractmethod
    def join(self, A, B):
        """closure(A | B)."""

    @abc.abstractmethod
    def carrier(self):
        """The whole carrier X, as a flat."""

    @abc.abstractmethod
    def flats(self) -> list: ...

    @abc.abstractmethod
    def flat_subset(self, A, B) -> bool: ...

    @abc.abstractmethod
    def member(self, x, A) -> bool: ...

    @abc.abstractmethod
    def singleton(self, x): ...

    @abc.abstractmethod
    def states(self) -> Sequence:
        """States to quantify over: all of them (finite) or a deterministic sample."""

    @abc.abstractmethod
    def format_flat(self, A) -> str: ...

    @abc.abstractmethod
    def parse_flat(self, text: str): ...

    # --- derived operations --------------------------------------------
    def closure(self, A):
        return self.complement(self.complement(A))

    def project(self, A, B):
        """A (x) B: the projection of A onto B."""
        b = self.closure(B)
        return self.meet(b, self.complement(self.meet(b, self.complement(A))))

    def dual_sum(self, A, B):
        """A (+) B = (B^perp (x) A^perp)^perp."""
        return self.complement(self.project(self.complement(B), self.complement(A)))

    def zero(self):
        return self.complement(self.carrier())

    def is_flat(self, A) -> bool:
        return self.flat_equal(self.closure(A), A)

    def flat_equal(self, A, B) -> bool:
        return self.as_subset(A) == self.as_subset(B)

    def equivalent_states(self, x, y) -> bool:
        """x ~ y iff {x}^perp == {y}^perp."""
        return self.flat_equal(self.complement(self.singleton(x)),
                               self.complement(self.singleton(y)))

    def flats_orthogonal(self, A, B) -> bool:
        return self.flat_subset(B, self.complement(A))

    @property
    def exhaustive(self) -> bool:
        return True


# ---------------------------------------------------------------------------
# finite backend
# ---------------------------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, order=True)
class FiniteFlat:
    """A subset of a finite carrier as a strictly increasing tuple of states.

    Equality is tuple equality, so two flats are equal iff they have the
    same elements.  ``mask`` is the same set as a bitmask.
    """

    elements: tuple
    mask: int = field(default=0, compare=False, repr=False, hash=False)

    def __post_init__(self):
        elems = tuple(self.elements)
        if any(b <= a for a, b in zip(elems, elems[1:])):
            elems = tuple(sorted(set(elems)))
        if elems and elems[0] < 0:
            raise StructureError(f"negative state index {elems[0]}")
        object.__setattr__(self, "elements", elems)
        m = 0
        for e in elems:
            m |= 1 << e
        object.__setattr__(self, "mask", m)

    @classmethod
    def of(cls, states: Iterable[int]) -> "FiniteFlat":
        return cls(tuple(sorted(set(int(s) for s in states))))

    @classmethod
    def from_mask(cls, mask: int) -> "FiniteFlat":
        return cls(tuple(_bits(mask)))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __str__(self):
        return "{" + ", ".join(map(str, self.elements)) + "}"


class FiniteOSpace(OSpace):
    """A finite structure <X, perp, F> with X = carrier subset of 0..size-1.

    ``orth`` is a size x size boolean matrix.  When ``flats`` is None the
    family is generated by :func:`generate_flat_family` with no seeds.
    With ``validate=True`` (the default) an asymmetric relation is rejected
    immediately; :func:`check_axioms` reports everything else.
    """

    def __init__(self, size: int, orth, flats=None, *, carrier=None,
                 validate: bool = True, family_cap: int = DEFAULT_FAMILY_CAP):
        if size < 1:
            raise StructureError("carrier size must be >= 1")
        self.size = size
        rows = [[bool(v) for v in row] for row in orth]
        if len(rows) != size or any(len(r) != size for r in rows):
            raise StructureError(f"orthogonality matrix must be {size}x{size}")
        self.orth = tuple(tuple(r) for r in rows)
        if validate:
            for i in range(size):
                for j in range(i + 1, size):
                    if rows[i][j] != rows[j][i]:
                        raise StructureError(
                            f"relation is not symmetric: {i} perp {j} is "
                            f"{rows[i][j]} but {j} perp {i} is {rows[j][i]}")
        full = (1 << size) - 1
        self._full = full if carrier is None else self._mask(carrier, full)
        # _cols[a] = {b | b perp a}
        self._cols = [sum(1 << b for b in range(size) if rows[b][a]) & self._full
                      for a in range(size)]
        self._comp_cache: dict[int, int] = {}
        if flats is None:
            self._flats = tuple(generate_flat_family(self, cap=family_cap))
        else:
            self._flats = tuple(dict.fromkeys(self.as_subset(f) for f in flats))

    # --- conversions -----------------------------------------------------
    def _mask(self, A, full=None) -> int:
        full = self._full if full is None else full
        if isinstance(A, FiniteFlat):
            m = A.mask
        else:
            m = 0
            for x in A:
                x = int(x)
                if x < 0 or x >= self.size:
                    raise StructureError(f"state {x} out of range 0..{self.size - 1}")
                m |= 1 << x
        if m & ~full:
            bad = next(_bits(m & ~full))
            raise StructureError(f"state {bad} is not in the carrier")
        return m

    def as_subset(self, A) -> FiniteFlat:
        if isinstance(A, FiniteFlat):
            self._mask(A)
            return A
        return FiniteFlat.from_mask(self._mask(A))

    def _comp_mask(self, m: int) -> int:
        hit = self._comp_cache.get(m)
        if hit is not None:
            return hit
        r = self._full
        for a in _bits(m):
            r &= self._cols[a]
        self._comp_cache[m] = r
        return r

    # --- interface ---------------------------------------------------------
    @property
    def carrier_mask(self) -> int:
        return self._full

    def orthogonal(self, x, y) -> bool:
        self._mask((x, y))
        return self.orth[x][y]

    def complement(self, A) -> FiniteFlat:
        return FiniteFlat.from_mask(self._comp_mask(self._mask(A)))

    def closure(self, A) -> FiniteFlat:
        return FiniteFlat.from_mask(self._comp_mask(self._comp_mask(self._mask(A))))

    def project(self, A, B) -> FiniteFlat:
        return FiniteFlat.from_mask(self.project_mask(self._mask(A), self._mask(B)))

    def project_mask(self, a: int, b: int) -> int:
        c = self._comp_mask
        bb = c(c(b))
        return bb & c(bb & c(a))

    def meet(self, A, B) -> FiniteFlat:
        return FiniteFlat.from_mask(self._mask(A) & self._mask(B))

    def union(self, A, B) -> FiniteFlat:
        return FiniteFlat.from_mask(self._mask(A) | self._mask(B))

    def join(self, A, B) -> FiniteFlat:
        return self.closure(self.union(A, B))

    def carrier(self) -> FiniteFlat:
        return FiniteFlat.from_mask(self._full)

    def flats(self) -> list:
        return list(self._flats)

    def flat_subset(self, A, B) -> bool:
        return self._mask(A) & ~self._mask(B) == 0

    def member(self, x, A) -> bool:
        return bool(self._mask(A) >> x & 1)

    def singleton(self, x) -> FiniteFlat:
        return self.as_subset((x,))

    def states(self) -> list:
        return list(_bits(self._full))

    def format_flat(self, A) -> str:
        return str(self.as_subset(A))

    def parse_flat(self, text: str) -> FiniteFlat:
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise StructureError(f"finite flat literal must look like {{i, j}}: {text!r}")
        body = t[1:-1].strip()
        items = [s.strip() for s in body.split(",")] if body else []
        try:
            return self.as_subset(int(s) for s in items)
        except ValueError:
            raise StructureError(f"bad state index in {text!r}") from None

    def is_symmetric(self) -> bool:
        return all(self.orth[i][j] == self.orth[j][i]
                   for i in range(self.size) for j in range(i + 1, self.size))

    def with_flats(self, flats) -> "FiniteOSpace":
        return FiniteOSpace(self.size, self.orth, flats,
                            carrier=FiniteFlat.from_mask(self._full), validate=False)

    def compact(self) -> tuple["FiniteOSpace", tuple]:
        """Re-index the carrier to 0..k-1; returns (space, old index per new index)."""
        old = tuple(_bits(self._full))
        if not old:
            raise StructureError("cannot compact an empty carrier")
        pos = {o: i for i, o in enumerate(old)}
        orth = [[self.orth[a][b] for b in old] for a in old]
        flats = [FiniteFlat.of(pos[e] for e in f) for f in self._flats]
        return FiniteOSpace(len(old), orth, flats, validate=False), old

    def __eq__(self, other):
        if not isinstance(other, FiniteOSpace):
            return NotImplemented
        return (self.size == other.size and self.orth == other.orth
                and self._full == other._full
                and set(self._flats) == set(other._flats))

    def __hash__(self):
        return hash((self.size, self.orth, self._full, frozenset(self._flats)))

    def __repr__(self):
        return f"FiniteOSpace(size={self.size}, flats={len(self._flats)})"


# ---------------------------------------------------------------------------
# family generation
# ---------------------------------------------------------------------------

def generate_flat_family(space: OSpace, seeds: Iterable = (), cap: int = DEFAULT_FAMILY_CAP,
                         *, singletons: bool = True) -> list:
    """Least family containing Z, the closures of the seeds and of every
    singleton, closed under complement and projection.

    Iteration order is fixed (seeds, singletons, Z, then complements and
    products in discovery order) so the result is reproducible.  Raises
    :class:`ResourceError` rather than truncating when ``cap`` is exceeded.
    """
    family: list = []
    index: set = set()

    def add(f):
        if f in index:
            return
        if len(family) >= cap:
            raise ResourceError(f"flat family exceeds cap {cap}", count=len(family) + 1, cap=cap)
        index.add(f)
        family.append(f)

    for s in seeds:
        add(space.closure(s))
    if singletons:
        for x in space.states():
            add(space.closure(space.singleton(x)))
    add(space.zero())
    i = 0
    while i < len(family):
        a = family[i]
        add(space.complement(a))
        for j in range(i + 1):
            b = family[j]
            add(space.project(a, b))
            add(space.project(b, a))
        i += 1
    return family


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int = 0
    mode: str = "exhaustive"
    witness: str | None = None

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.mode}, {self.checked} instances)"
        if self.witness:
            line += f" -- {self.witness}"
        return line


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list:
        return [r for r in self.results.values() if not r.passed]

    def __getitem__(self, name) -> AxiomResult:
        return self.results[name]

    def __str__(self):
        return "\n".join(str(r) for r in self.results.values())

    def to_dict(self) -> dict:
        return {name: {"passed": r.passed, "mode": r.mode, "checked": r.checked,
                       "witness": r.witness}
                for name, r in self.results.items()}


def _check_F(space: OSpace, flats: list) -> AxiomResult:
    fmt = space.format_flat
    present = set(flats)
    n = 0
    for A in flats:
        n += 1
        if not space.is_flat(A):
            return AxiomResult("F", False, n, witness=f"member {fmt(A)} is not a flat")
    z = space.zero()
    if z not in present:
        return AxiomResult("F", False, n, witness=f"Z = {fmt(z)} is missing")
    if space.exhaustive:
        for x in space.states():
            n += 1
            c = space.closure(space.singleton(x))
            if c not in present:
                return AxiomResult("F", False, n,
                                   witness=f"closure of {{{x}}} = {fmt(c)} is missing")
    for A in flats:
        n += 1
        c = space.complement(A)
        if c not in present:
            return AxiomResult("F", False, n,
                               witness=f"complement of {fmt(A)} = {fmt(c)} is missing")
    for A in flats:
        for B in flats:
            n += 1
            p = space.project(A, B)
            if p not in present:
                return AxiomResult("F", False, n,
                                   witness=f"{fmt(A)} (x) {fmt(B)} = {fmt(p)} is missing")
    return AxiomResult("F", True, n)


def _check_O(space: OSpace, flats: list, states) -> AxiomResult:
    fmt = space.format_flat
    n = 0
    for A in flats:
        Ac = space.complement(A)
        for x in states:
            n += 1
            sx = space.singleton(x)
            p = space.project(sx, A)
            q = space.project(sx, Ac)
            if not space.member(x, space.join(p, q)):
                return AxiomResult("O", False, n, witness=(
                    f"x={x}, A={fmt(A)}: x not in closure({{x}}(x)A | {{x}}(x)A^perp)"))
            if not space.flat_subset(p, space.join(sx, q)):
                return AxiomResult("O", False, n, witness=(
                    f"x={x}, A={fmt(A)}: {{x}}(x)A not within closure({{x}} | {{x}}(x)A^perp)"))
    return AxiomResult("O", True, n)


def _check_A_finite(space: FiniteOSpace, flats: list) -> AxiomResult:
    n = 0
    for A in flats:
        for B in flats:
            n += 1
            b = B.mask
            lhs = space.project_mask(A.mask, b)
            rhs = 0
            for a in A.elements:
                rhs |= space.project_mask(1 << a, b)
            if lhs & ~rhs:
                y = next(_bits(lhs & ~rhs))
                return AxiomResult("A", False, n, witness=(
                    f"A={A}, B={B}: state {y} of A(x)B lies in no {{a}}(x)B"))
    return AxiomResult("A", True, n)


def check_axioms(space: OSpace, **kw) -> AxiomReport:
    """Check S, Z, F, O, A.

    Finite spaces are checked exhaustively; rational spaces delegate to
    :func:`osl.hilbert.check_axioms_sampled`.
    """
    if not isinstance(space, FiniteOSpace):
        from .hilbert import RationalSpace, check_axioms_sampled
        if isinstance(space, RationalSpace):
            return check_axioms_sampled(space, **kw)
        raise TypeError(f"no axiom checker for {type(space).__name__}")

    report = AxiomReport()
    states = space.states()
    orth = space.orth

    n = 0
    res = AxiomResult("S", True)
    for i in states:
        for j in states:
            n += 1
            if orth[i][j] != orth[j][i]:
                res = AxiomResult("S", False, n, witness=(
                    f"{i} perp {j} is {orth[i][j]} but {j} perp {i} is {orth[j][i]}"))
                break
        if not res.passed:
            break
    res.checked = n
    report.results["S"] = res

    z = space.zero()
    res = AxiomResult("Z", True, len(states))
    for x in states:
        if orth[x][x] and x not in z:
            res = AxiomResult("Z", False, len(states),
                              witness=f"state {x} is self-orthogonal but not in Z = {z}")
            break
    report.results["Z"] = res

    flats = space.flats()
    report.results["F"] = _check_F(space, flats)
    report.results["O"] = _check_O(space, flats, states)
    report.results["A"] = _check_A_finite(space, flats)
    return report


# ---------------------------------------------------------------------------
# sub-spaces
# ---------------------------------------------------------------------------

def restrict(space: OSpace, C) -> OSpace:
    """The O-subspace on the flat C: perp restricted, family F & 2^C."""
    C = space.as_subset(C)
    if C not in set(space.flats()):
        raise StructureError(f"{space.format_flat(C)} is not a member of the flat family")
    if isinstance(space, FiniteOSpace):
        flats = [f for f in space.flats() if space.flat_subset(f, C)]
        return FiniteOSpace(space.size, space.orth, flats, carrier=C, validate=False)
    return space.restrict(C)


# convenience free functions mirroring the interface
def complement(space: OSpace, A):
    return space.complement(A)


def closure(space: OSpace, A):
    return space.closure(A)


def project(space: OSpace, A, B):
    return space.project(A, B)


def dual_sum(space: OSpace, A, B):
    return space.dual_sum(A, B)


def zero_set(space: OSpace):
    return space.zero()


def equivalent_states(space: OSpace, x, y) -> bool:
    return space.equivalent_states(x, y)
