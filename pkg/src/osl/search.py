"""Backward proof search over the ten primitive rules, and its combination
with countermodel search.

The search is iterative deepening on proof height (an axiom has height 1).
At each sequent the rules are tried in a fixed order: the axioms R6 and R9,
then R7, R8, R10, R2, R5, R3 and R4 read backwards, then cut (R1) on
formulas from the cut pool.  Every candidate premise is first evaluated in
the pruning models: a sequent that fails there is not derivable (the rules
are sound), so discarding it never loses a proof.  Failures are memoised per
exact sequent and remaining height, successes per exact sequent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .kernel import ProofScript, RuleId, ScriptBuilder
from .semantics import DEFAULT_ASSIGNMENT_CAP, FlatTable, Witness, find_countermodel, zoo_space
from .syntax import And, Atom, Neg, Or, Sequent, atoms, is_normalized, negate, normalize_sequent, subformulas
from .zoo import SEARCH_ZOO

CUT_POLICIES = ("none", "subformulas")


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 6
    cut_pool: str = "subformulas"
    node_budget: int = 200_000
    prune_models: tuple = ("q2",)
    assignment_cap: int = DEFAULT_ASSIGNMENT_CAP

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be >= 1")
        if self.cut_pool not in CUT_POLICIES:
            raise ValueError(f"cut_pool must be one of {', '.join(CUT_POLICIES)}")


@dataclass
class Proved:
    script: ProofScript
    depth: int
    nodes: int

    status = "proved"


@dataclass
class Refuted:
    witness: Witness

    status = "refuted"


@dataclass
class Exhausted:
    stats: dict = field(default_factory=dict)

    status = "exhausted"


@dataclass(frozen=True)
class _Node:
    lhs: tuple
    rule: RuleId
    children: tuple
    bindings: tuple
    height: int


class _BudgetExceeded(Exception):
    pass


class _Validity:
    """Cached "holds under every assignment" over the pruning models.

    Each formula is evaluated once per model as a vector of flat indices,
    one entry per assignment of the goal's atoms; a sequent is then a fold
    over its formulas' vectors.
    """

    def __init__(self, models, cap, names):
        self.names = sorted(names)
        self.models = []
        for m in models:
            t = FlatTable(zoo_space(m))
            n = len(t.flats)
            if n ** len(self.names) > cap:
                continue
            envs = [dict(zip(self.names, c)) for c in itertools.product(range(n), repeat=len(self.names))]
            self.models.append((t, envs, {}))
        self.cache = {}

    def _vector(self, t, envs, memo, f):
        v = memo.get(f)
        if v is not None:
            return v
        if isinstance(f, Atom):
            v = [e[f.name] for e in envs]
        elif isinstance(f, Neg):
            v = [t.comp[x] for x in self._vector(t, envs, memo, f.arg)]
        else:
            op = t.proj if isinstance(f, And) else t.dual
            left = self._vector(t, envs, memo, f.left)
            right = self._vector(t, envs, memo, f.right)
            v = [op[x][y] for x, y in zip(left, right)]
        memo[f] = v
        return v

    def __call__(self, lhs: tuple) -> bool:
        hit = self.cache.get(lhs)
        if hit is not None:
            return hit
        ok = True
        for t, envs, memo in self.models:
            if not lhs:
                ok = t.subset[t.top][t.bottom]
            else:
                acc = self._vector(t, envs, memo, lhs[0])
                for f in lhs[1:]:
                    acc = [t.proj[x][y] for x, y in zip(acc, self._vector(t, envs, memo, f))]
                col = [row[t.bottom] for row in t.subset]
                ok = all(col[x] for x in acc)
            if not ok:
                break
        self.cache[lhs] = ok
        return ok


def cut_pool(goal: Sequent, policy: str) -> list:
    if policy == "none":
        return []
    pool = {}
    for f in goal.lhs:
        for sub in subformulas(f):
            pool.setdefault(sub, None)
            pool.setdefault(negate(sub), None)
    return list(pool)


class Prover:
    def __init__(self, goal: Sequent, cfg: SearchConfig):
        self.goal = goal
        self.cfg = cfg
        self.valid = _Validity(cfg.prune_models, cfg.assignment_cap, atoms(goal.lhs))
        self.pool = [(phi, negate(phi)) for phi in cut_pool(goal, cfg.cut_pool)]
        self.succ = {}
        self.fail = {}
        self.nodes = 0

    # candidate backward steps: (rule, premises, bindings)
    def expansions(self, C: tuple):
        n = len(C)
        if n == 2 and isinstance(C[0], Atom) and C[1] == Neg(C[0]):
            yield RuleId.R6, (), (("sigma", C[0]),)
        if n == 3 and isinstance(C[2], Or):
            a, b = C[2].right, C[2].left
            if C[0] == negate(a) and C[1] == negate(b):
                yield RuleId.R9, (), (("alpha", a), ("beta", b))
        if n and isinstance(C[0], And):
            yield RuleId.R7, ((C[0].left, C[0].right) + C[1:],), ()
        if n and isinstance(C[-1], And):
            yield RuleId.R8, (C[:-1] + (C[-1].right, C[-1].left),), ()
        for k, f in enumerate(C):
            if isinstance(f, Or):
                a, b = f.left, f.right
                yield RuleId.R10, (C[:k] + (a,) + C[k + 1:], C[:k] + (negate(a), b) + C[k + 1:]), ()
        if n == 2:
            yield RuleId.R2, ((C[1], C[0]),), ()
        for k in range(n):
            g = C[:k]
            yield RuleId.R5, (g + C[k + 1:], g + (negate(C[k]),)), ()
        if n:
            yield RuleId.R3, (C[1:],), (("alpha", C[0]),)
            yield RuleId.R4, (C[:-1],), (("alpha", C[-1]),)
        for phi, nphi in self.pool:
            for k in range(n + 1):
                yield RuleId.R1, (C[:k] + (phi,) + C[k:], C[:k] + (nphi,) + C[k:]), ()

    def search(self, C: tuple, r: int):
        if r <= 0:
            return None
        hit = self.succ.get(C)
        if hit is not None and hit.height <= r:
            return hit
        if self.fail.get(C, 0) >= r:
            return None
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise _BudgetExceeded
        for rule, premises, bindings in self.expansions(C):
            if premises and r == 1:
                continue
            if not all(self.valid(p) for p in premises):
                continue
            children = []
            for p in premises:
                ch = self.search(p, r - 1)
                if ch is None:
                    break
                children.append(ch)
            else:
                node = _Node(C, rule, tuple(children), bindings,
                             1 + max((c.height for c in children), default=0))
                self.succ[C] = node
                return node
        self.fail[C] = max(self.fail.get(C, 0), r)
        return None

    def run(self):
        if not self.valid(self.goal.lhs):
            return Exhausted({"nodes": 0, "depth": 0, "reason": "goal fails in a pruning model"})
        try:
            for d in range(1, self.cfg.max_depth + 1):
                node = self.search(self.goal.lhs, d)
                if node is not None:
                    return Proved(tree_to_script(node), node.height, self.nodes)
        except _BudgetExceeded:
            return Exhausted({"nodes": self.nodes, "depth": d, "reason": "node budget exhausted"})
        return Exhausted({"nodes": self.nodes, "depth": self.cfg.max_depth,
                          "reason": "depth limit reached"})


def tree_to_script(node: _Node) -> ProofScript:
    b = ScriptBuilder()

    def emit(n):
        idx = [emit(c) for c in n.children]
        i = b.add(n.rule, idx, dict(n.bindings))
        assert b.lhs(i) == n.lhs, "search tree and rule application disagree"
        return i

    return b.script(emit(node))


def _prepare(goal) -> Sequent:
    return goal if is_normalized(goal) else normalize_sequent(goal)


def prove(goal: Sequent, cfg: SearchConfig = SearchConfig()):
    """Proved or Exhausted; a non-normalized goal is normalized first and the
    script proves the normalized form."""
    return Prover(_prepare(goal), cfg).run()


def decide(goal: Sequent, cfg: SearchConfig = SearchConfig(), models=SEARCH_ZOO):
    """Alternate deepening proof search with countermodel search, one model
    per round, and return the first success."""
    goal = _prepare(goal)
    prover = Prover(goal, cfg)
    models = list(models)
    pending_models = list(models)
    depth = 0
    stats = {}
    while depth < cfg.max_depth or pending_models:
        if pending_models:
            name = pending_models.pop(0)
            w = find_countermodel(goal, (name,), cfg.assignment_cap)
            if w is not None:
                return Refuted(w)
        if depth < cfg.max_depth:
            depth += 1
            if prover.valid(goal.lhs):
                try:
                    node = prover.search(goal.lhs, depth)
                except _BudgetExceeded:
                    stats = {"nodes": prover.nodes, "depth": depth, "reason": "node budget exhausted"}
                    depth = cfg.max_depth
                    continue
                if node is not None:
                    return Proved(tree_to_script(node), node.height, prover.nodes)
    if not stats:
        stats = {"nodes": prover.nodes, "depth": depth, "reason": "depth limit reached"}
    stats["models"] = models
    return Exhausted(stats)


def implies(beta, alpha, cfg: SearchConfig = SearchConfig(), models=SEARCH_ZOO):
    """beta implies alpha when ``beta, neg alpha |-`` is derivable."""
    return decide(Sequent((beta, negate(alpha))), cfg, models)


def logically_equivalent(alpha, beta, cfg: SearchConfig = SearchConfig(), models=SEARCH_ZOO):
    """(alpha -> beta, beta -> alpha); equivalent iff both are Proved."""
    return implies(alpha, beta, cfg, models), implies(beta, alpha, cfg, models)
