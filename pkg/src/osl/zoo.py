"""Example O-spaces (classical sets, Magidor's subsets, sums, Q^2) and the
finite model file format.

File format, one statement per line, ``#`` starts a comment::

    space <size>
    orth <i> <j>        # unordered orthogonal pair, symmetry implied
    oneway <i> <j>      # i perp j without j perp i (only for broken models)
    flat <i1> <i2> ...  # optional; if absent the family is generated
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, StructureError
from .hilbert import RationalSpace, full_subspace, span, zero_subspace
from .ospace import FiniteFlat, FiniteOSpace, OSpace, check_axioms, generate_flat_family


def classical_sets(n: int) -> FiniteOSpace:
    """<X, !=, 2^X> on X = {0..n-1}."""
    if n < 1:
        raise StructureError("classical_sets needs n >= 1")
    orth = [[i != j for j in range(n)] for i in range(n)]
    flats = [FiniteFlat.from_mask(m) for m in range(1 << n)]
    return FiniteOSpace(n, orth, flats)


def powerset_space(m: int) -> FiniteOSpace:
    """States are the subsets of Y = {0..m-1} (state s is the subset with
    bitmask s); x perp y iff x & y is empty; the flats are the 2^B."""
    if m < 0:
        raise StructureError("powerset_space needs m >= 0")
    size = 1 << m
    orth = [[(x & y) == 0 for y in range(size)] for x in range(size)]
    flats = [FiniteFlat.of(s for s in range(size) if s & ~b == 0) for b in range(size)]
    return FiniteOSpace(size, orth, flats)


def union(s0: FiniteOSpace, s1: FiniteOSpace) -> FiniteOSpace:
    """Disjoint sum: s0 keeps its indices, s1 is shifted by |X0|; states from
    different components are orthogonal; F = {A | B : A in F0, B in F1}."""
    for s in (s0, s1):
        if s.carrier_mask != (1 << s.size) - 1:
            raise StructureError("union operands must have full carriers; compact() first")
    n0, n1 = s0.size, s1.size
    size = n0 + n1
    orth = [[True] * size for _ in range(size)]
    for i in range(n0):
        for j in range(n0):
            orth[i][j] = s0.orth[i][j]
    for i in range(n1):
        for j in range(n1):
            orth[n0 + i][n0 + j] = s1.orth[i][j]
    flats = [FiniteFlat.from_mask(a.mask | (b.mask << n0))
             for a in s0.flats() for b in s1.flats()]
    return FiniteOSpace(size, orth, flats, validate=s0.is_symmetric() and s1.is_symmetric())


Q2_SEEDS = ("span[]", "span[(1,0)]", "span[(0,1)]", "span[(1,1)]", "span[(1,0),(0,1)]")


def q2_space(sample_budget: int = 200) -> RationalSpace:
    """Q^2 with the zero space, both axes, the diagonal and the whole plane,
    closed under complement and projection (which adds the anti-diagonal)."""
    base = RationalSpace(2, sample_budget=sample_budget)
    seeds = [base.parse_flat(s) for s in Q2_SEEDS]
    family = generate_flat_family(base, seeds, singletons=False)
    return RationalSpace(2, family, sample_budget=sample_budget)


def rational_space(n: int, vectors_per_flat=(), sample_budget: int = 200) -> RationalSpace:
    flats = [zero_subspace(n), full_subspace(n)] + [span(v, n) for v in vectors_per_flat]
    return RationalSpace(n, flats, sample_budget=sample_budget)


# ---------------------------------------------------------------------------
# model specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    """``sets:N``, ``powerset:M``, ``union(<spec>,<spec>)``, ``q2`` or a file path."""

    kind: str
    params: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "ModelSpec":
        t = text.strip()
        if t.startswith("zoo:"):
            t = t[4:]
        m = re.fullmatch(r"(sets|powerset):(\d+)", t)
        if m:
            return cls(m.group(1), (int(m.group(2)),))
        if t == "q2":
            return cls("q2")
        if t.startswith("union(") and t.endswith(")"):
            inner = t[6:-1]
            depth = 0
            for i, ch in enumerate(inner):
                depth += ch == "("
                depth -= ch == ")"
                if ch == "," and depth == 0:
                    return cls("union", (cls.parse(inner[:i]), cls.parse(inner[i + 1:])))
            raise ParseError(f"union needs two comma-separated operands: {text!r}", text)
        if text.strip().startswith("zoo:"):
            raise ParseError(f"unknown zoo model {text!r}", text)
        return cls("file", (text.strip(),))

    def __str__(self):
        if self.kind in ("sets", "powerset"):
            return f"{self.kind}:{self.params[0]}"
        if self.kind == "union":
            return f"union({self.params[0]},{self.params[1]})"
        if self.kind == "q2":
            return "q2"
        return self.params[0]

    def build(self) -> OSpace:
        if self.kind == "sets":
            return classical_sets(self.params[0])
        if self.kind == "powerset":
            return powerset_space(self.params[0])
        if self.kind == "union":
            a, b = (p.build() for p in self.params)
            if not (isinstance(a, FiniteOSpace) and isinstance(b, FiniteOSpace)):
                raise StructureError("union is only defined for finite models")
            return union(a, b)
        if self.kind == "q2":
            return q2_space()
        space, _ = load_model(self.params[0])
        return space


def resolve_model(text: str) -> OSpace:
    return ModelSpec.parse(text).build()


# models every acceptance run quantifies over
FINITE_ZOO = ("sets:1", "sets:2", "sets:3", "sets:4",
              "powerset:0", "powerset:1", "powerset:2", "powerset:3",
              "union(sets:2,powerset:2)")
STANDARD_ZOO = FINITE_ZOO + ("q2",)
# small-first order used for countermodel search
SEARCH_ZOO = ("sets:1", "sets:2", "powerset:1", "powerset:2", "sets:3",
              "union(sets:2,powerset:2)", "q2")


def zoo_models(names=STANDARD_ZOO) -> list:
    """[(name, space)] for the given model spec strings."""
    return [(n, resolve_model(n)) for n in names]


# ---------------------------------------------------------------------------
# model files
# ---------------------------------------------------------------------------

def format_model(space: FiniteOSpace) -> str:
    if space.carrier_mask != (1 << space.size) - 1:
        raise StructureError("only full-carrier spaces can be saved; compact() first")
    n = space.size
    lines = [f"space {n}"]
    for i in range(n):
        for j in range(i, n):
            if space.orth[i][j] and space.orth[j][i]:
                lines.append(f"orth {i} {j}")
    for i in range(n):
        for j in range(n):
            if space.orth[i][j] and not space.orth[j][i]:
                lines.append(f"oneway {i} {j}")
    for f in space.flats():
        lines.append(" ".join(["flat", *map(str, f.elements)]))
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> FiniteOSpace:
    """Read the model format without checking axioms (validate=False)."""
    size = None
    orth = None
    flats = []
    saw_flat = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head, args = words[0], words[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer argument in {raw!r}", text) from None
        if head == "space":
            if size is not None or len(nums) != 1 or nums[0] < 1:
                raise ParseError(f"line {lineno}: expected a single 'space <size>' with size >= 1", text)
            size = nums[0]
            orth = [[False] * size for _ in range(size)]
            continue
        if size is None:
            raise ParseError(f"line {lineno}: 'space <size>' must come first", text)
        if any(x < 0 or x >= size for x in nums):
            raise ParseError(f"line {lineno}: state out of range 0..{size - 1}", text)
        if head in ("orth", "oneway"):
            if len(nums) != 2:
                raise ParseError(f"line {lineno}: '{head}' takes two states", text)
            i, j = nums
            orth[i][j] = True
            if head == "orth":
                orth[j][i] = True
        elif head == "flat":
            saw_flat = True
            flats.append(FiniteFlat.of(nums))
        else:
            raise ParseError(f"line {lineno}: unknown statement {head!r}", text)
    if size is None:
        raise ParseError("empty model file", text)
    return FiniteOSpace(size, orth, flats if saw_flat else None, validate=False)


def load_model(path, *, strict: bool = False):
    """Load a model file and check its axioms.

    Returns ``(space, report)``.  With ``strict=True`` a failing report
    raises :class:`StructureError` instead.
    """
    space = parse_model(Path(path).read_text())
    report = check_axioms(space)
    if strict and not report.ok:
        raise StructureError(f"{path}: axioms fail\n{report}")
    return space, report


def save_model(space: FiniteOSpace, path) -> None:
    Path(path).write_text(format_model(space))
