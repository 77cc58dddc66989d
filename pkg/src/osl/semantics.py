"""Interpreting propositions and sequents in an O-space.

A proposition denotes a flat: atoms are looked up, ``~`` is the
orthocomplement, ``&`` the projection and ``|`` its dual.  A sequent
``a1, ..., an |- b1, ..., bm`` holds when

    ((a1 (x) a2) (x) ...) (x) an   is included in   b1 (+) (b2 (+) (... (+) bm))

with an empty left side read as the carrier and an empty right side as Z.
Consequently ``|-`` alone holds only when X = Z.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EvaluationError, ParseError, ResourceError, StructureError
from .ospace import OSpace
from .syntax import And, Atom, Neg, Or, Sequent, atoms, format_sequent
from .zoo import SEARCH_ZOO, resolve_model

DEFAULT_ASSIGNMENT_CAP = 10 ** 6


def eval_prop(space: OSpace, v: dict, p):
    if isinstance(p, Atom):
        try:
            return space.as_subset(v[p.name])
        except KeyError:
            raise EvaluationError(p.name) from None
    if isinstance(p, Neg):
        return space.complement(eval_prop(space, v, p.arg))
    if isinstance(p, And):
        return space.project(eval_prop(space, v, p.left), eval_prop(space, v, p.right))
    if isinstance(p, Or):
        return space.dual_sum(eval_prop(space, v, p.left), eval_prop(space, v, p.right))
    raise TypeError(f"not a proposition: {p!r}")


def eval_lhs(space: OSpace, v: dict, props):
    acc = space.carrier()
    for i, p in enumerate(props):
        f = eval_prop(space, v, p)
        acc = f if i == 0 else space.project(acc, f)
    return acc


def eval_rhs(space: OSpace, v: dict, props):
    acc = space.zero()
    for i, p in enumerate(reversed(props)):
        f = eval_prop(space, v, p)
        acc = f if i == 0 else space.dual_sum(f, acc)
    return acc


def eval_sequent_holds(space: OSpace, v: dict, s: Sequent) -> bool:
    return space.flat_subset(eval_lhs(space, v, s.lhs), eval_rhs(space, v, s.rhs))


# ---------------------------------------------------------------------------
# precomputed operation tables
# ---------------------------------------------------------------------------

class FlatTable:
    """Complement, projection and inclusion tabulated over a flat family.

    Flats are referred to by their index in ``space.flats()``.  Raises
    StructureError when the family is not closed under the operations.
    """

    def __init__(self, space: OSpace, flats=None):
        self.space = space
        self.flats = list(space.flats() if flats is None else flats)
        self.index = {f: i for i, f in enumerate(self.flats)}
        n = len(self.flats)
        self.comp = [self._lookup(space.complement(f)) for f in self.flats]
        self.proj = [[self._lookup(space.project(a, b)) for b in self.flats] for a in self.flats]
        self.subset = [[space.flat_subset(a, b) for b in self.flats] for a in self.flats]
        self.dual = [[self.comp[self.proj[self.comp[b]][self.comp[a]]] for b in range(n)]
                     for a in range(n)]
        self.top = self._lookup(space.carrier())
        self.bottom = self._lookup(space.zero())

    def _lookup(self, f) -> int:
        try:
            return self.index[f]
        except KeyError:
            raise StructureError(f"flat family is not closed: {self.space.format_flat(f)} is missing") from None

    def eval(self, env: dict, p) -> int:
        if isinstance(p, Atom):
            try:
                return env[p.name]
            except KeyError:
                raise EvaluationError(p.name) from None
        if isinstance(p, Neg):
            return self.comp[self.eval(env, p.arg)]
        if isinstance(p, And):
            return self.proj[self.eval(env, p.left)][self.eval(env, p.right)]
        return self.dual[self.eval(env, p.left)][self.eval(env, p.right)]

    def lhs(self, env: dict, props) -> int:
        acc = self.top
        for i, p in enumerate(props):
            f = self.eval(env, p)
            acc = f if i == 0 else self.proj[acc][f]
        return acc

    def rhs(self, env: dict, props) -> int:
        acc = self.bottom
        for i, p in enumerate(reversed(props)):
            f = self.eval(env, p)
            acc = f if i == 0 else self.dual[f][acc]
        return acc

    def holds(self, env: dict, s: Sequent) -> bool:
        return self.subset[self.lhs(env, s.lhs)][self.rhs(env, s.rhs)]


_TABLES: dict = {}


def flat_table(space: OSpace):
    """Cached FlatTable for ``space``, or None when its family is not closed."""
    key = id(space)
    hit = _TABLES.get(key)
    if hit is not None and hit[0] is space:
        return hit[1]
    try:
        table = FlatTable(space)
    except StructureError:
        table = None
    _TABLES[key] = (space, table)
    return table


@functools.lru_cache(maxsize=None)
def zoo_space(name: str) -> OSpace:
    """Build a named model once per process."""
    return resolve_model(name)


# ---------------------------------------------------------------------------
# validity
# ---------------------------------------------------------------------------

@dataclass
class Witness:
    """An assignment under which a sequent fails, with both sides evaluated."""

    sequent: Sequent
    assignment: dict
    lhs: object
    rhs: object
    model: str | None = None
    space: OSpace | None = field(default=None, repr=False, compare=False)

    def recheck(self, space: OSpace | None = None) -> bool:
        """True when the assignment still violates the sequent."""
        space = space or self.space or zoo_space(self.model)
        return not eval_sequent_holds(space, self.assignment, self.sequent)

    def to_dict(self) -> dict:
        sp = self.space or zoo_space(self.model)
        return {
            "model": self.model,
            "sequent": format_sequent(self.sequent),
            "assignment": {k: sp.format_flat(f) for k, f in self.assignment.items()},
            "lhs": sp.format_flat(self.lhs),
            "rhs": sp.format_flat(self.rhs),
        }

    def __str__(self):
        sp = self.space or zoo_space(self.model)
        head = f"countermodel in {self.model}" if self.model else "countermodel"
        lines = [head + ":"]
        lines += [f"  {k} = {sp.format_flat(f)}" for k, f in self.assignment.items()]
        lines.append(f"  lhs = {sp.format_flat(self.lhs)}")
        lines.append(f"  rhs = {sp.format_flat(self.rhs)}")
        return "\n".join(lines)


@dataclass
class ValidityVerdict:
    status: str  # "valid" or "countermodel"
    witness: Witness | None = None
    checked: int = 0

    @property
    def valid(self) -> bool:
        return self.status == "valid"


def assignment_count(space: OSpace, s, flats=None) -> int:
    n = len(space.flats() if flats is None else flats)
    return n ** len(atoms(s))


def valid_in_model(space: OSpace, s: Sequent, cap: int = DEFAULT_ASSIGNMENT_CAP,
                   flats=None, model: str | None = None) -> ValidityVerdict:
    """Check ``s`` under every assignment of family flats to its atoms.

    Atoms are taken in name order and flats in family order, so the first
    violation found (and hence the witness) is deterministic.
    """
    family = list(space.flats() if flats is None else flats)
    names = sorted(atoms(s))
    total = len(family) ** len(names)
    if total > cap:
        raise ResourceError(f"{total} assignments exceed the cap of {cap}", total, cap)
    table = flat_table(space) if flats is None else None
    checked = 0
    for combo in itertools.product(range(len(family)), repeat=len(names)):
        checked += 1
        if table is not None:
            env = dict(zip(names, combo))
            ok = table.holds(env, s)
        else:
            ok = eval_sequent_holds(space, {n: family[i] for n, i in zip(names, combo)}, s)
        if not ok:
            v = {n: family[i] for n, i in zip(names, combo)}
            w = Witness(s, v, eval_lhs(space, v, s.lhs), eval_rhs(space, v, s.rhs), model, space)
            return ValidityVerdict("countermodel", w, checked)
    return ValidityVerdict("valid", None, checked)


def valid_in_all(s: Sequent, models=SEARCH_ZOO, cap: int = DEFAULT_ASSIGNMENT_CAP) -> bool:
    """True when no model in ``models`` refutes ``s``."""
    return find_countermodel(s, models, cap) is None


def find_countermodel(s: Sequent, models=SEARCH_ZOO, cap: int = DEFAULT_ASSIGNMENT_CAP,
                      skipped: list | None = None):
    """First witness over ``models`` (spec strings, smallest first), or None.

    Models whose assignment space exceeds ``cap`` are skipped and, when a
    list is passed, recorded in ``skipped``.  None therefore means "no
    countermodel among the models searched", not validity.
    """
    for name in models:
        space = zoo_space(name)
        try:
            verdict = valid_in_model(space, s, cap, model=name)
        except ResourceError:
            if skipped is not None:
                skipped.append(name)
            continue
        if not verdict.valid:
            return verdict.witness
    return None


# ---------------------------------------------------------------------------
# assignment files
# ---------------------------------------------------------------------------

def format_assignment(space: OSpace, v: dict) -> str:
    return "".join(f"{k} = {space.format_flat(f)}\n" for k, f in v.items())


def parse_assignment(space: OSpace, text: str) -> dict:
    """Parse ``atom = <flat>`` lines, or a JSON report with an "assignment"
    object (as printed by ``--json``)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        if "witness" in data and isinstance(data["witness"], dict):
            data = data["witness"]
        raw = data.get("assignment")
        if not isinstance(raw, dict):
            raise ParseError("JSON input has no 'assignment' object", text)
        return {k: _checked_flat(space, space.parse_flat(val)) for k, val in raw.items()}
    v = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, lit = line.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier() or not name[0].isalpha():
            raise ParseError(f"line {lineno}: expected 'atom = <flat>'", text)
        if name in v:
            raise ParseError(f"line {lineno}: atom {name!r} assigned twice", text)
        try:
            v[name] = _checked_flat(space, space.parse_flat(lit.strip()))
        except (StructureError, ValueError) as e:
            raise ParseError(f"line {lineno}: {e}", text) from None
    return v


def _checked_flat(space: OSpace, f):
    if not space.is_flat(f):
        raise StructureError(f"{space.format_flat(f)} is not a flat")
    if space.exhaustive and f not in space.flats():
        raise StructureError(f"{space.format_flat(f)} is not in the flat family")
    return f


def load_assignment(space: OSpace, path) -> dict:
    return parse_assignment(space, Path(path).read_text())


def save_assignment(space: OSpace, v: dict, path) -> None:
    Path(path).write_text(format_assignment(space, v))
