"""Proof checker for the ten-rule sequent system.

Kernel sequents have an empty right-hand side and every formula in the
restricted language (negation on atoms only); ``neg`` below is
:func:`osl.syntax.negate`, which keeps formulas restricted.

    R1  Cut             G, a, D |-   and   G, neg a, D |-    =>  G, D |-
    R2  Exchange        a, b |-                              =>  b, a |-
    R3  LeftWeakening   G |-                                 =>  a, G |-
    R4  RightWeakening  G |-                                 =>  G, a |-
    R5  Stuttering      G, D |-   and   G, a |-              =>  G, neg a, D |-
    R6  NegAtomic                                                s, ~s |-      (s atomic)
    R7  LeftAnd         a, b, D |-                           =>  a & b, D |-
    R8  RightAnd        G, a, b |-                           =>  G, b & a |-
    R9  NegVee1                                                  neg a, neg b, b | a |-
    R10 VeeIntro        G, a, D |-   and   G, neg a, b, D |- =>  G, a | b, D |-

A step is checked forwards: the conclusion the rule would produce from the
cited premises is computed and compared with the stated one.

Script text format (one step per line, ``#`` comments)::

    goal: p & q, ~q |-
    hyp: <sequent>                       # zero or more assumed leaves
    1: R6 NegAtomic [sigma=q] : q, ~q |-
    2: R3 LeftWeakening [alpha=p] from 1 : p, q, ~q |-
    3: R7 LeftAnd from 2 : p & q, ~q |-
    4: Hyp : <sequent>                   # cites a declared hyp
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .syntax import (Atom, Neg, Or, And, Sequent, format_prop, format_sequent, is_restricted,
                     negate, parse_prop, parse_sequent)


class RuleId(enum.Enum):
    R1 = "Cut"
    R2 = "Exchange"
    R3 = "LeftWeakening"
    R4 = "RightWeakening"
    R5 = "Stuttering"
    R6 = "NegAtomic"
    R7 = "LeftAnd"
    R8 = "RightAnd"
    R9 = "NegVee1"
    R10 = "VeeIntro"
    HYP = "Hyp"

    @property
    def label(self) -> str:
        return "Hyp" if self is RuleId.HYP else f"{self.name} {self.value}"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @classmethod
    def parse(cls, text: str) -> "RuleId":
        """Accepts ``R6``, ``R6 NegAtomic``, ``R6-NegAtomic``, ``NegAtomic``, ``Hyp``."""
        words = re.split(r"[\s\-]+", text.strip())
        if len(words) == 1 and words[0].lower() in ("hyp", "assume"):
            return cls.HYP
        by_name = {r.name.upper(): r for r in cls}
        by_value = {r.value.lower(): r for r in cls}
        rule = by_name.get(words[0].upper()) or by_value.get(words[0].lower())
        if rule is None or len(words) > 2:
            raise ParseError(f"unknown rule {text!r}", text)
        if len(words) == 2 and words[1].lower() != rule.value.lower():
            raise ParseError(f"rule {rule.name} is {rule.value}, not {words[1]}", text)
        return rule


_ARITY = {RuleId.R1: 2, RuleId.R2: 1, RuleId.R3: 1, RuleId.R4: 1, RuleId.R5: 2, RuleId.R6: 0,
          RuleId.R7: 1, RuleId.R8: 1, RuleId.R9: 0, RuleId.R10: 2, RuleId.HYP: 0}

# metavariables each rule may bind; gamma and delta are sequences
_KEYS = {
    RuleId.R1: ("gamma", "alpha", "delta"),
    RuleId.R2: ("alpha", "beta"),
    RuleId.R3: ("alpha", "gamma"),
    RuleId.R4: ("gamma", "alpha"),
    RuleId.R5: ("gamma", "alpha", "delta"),
    RuleId.R6: ("sigma",),
    RuleId.R7: ("alpha", "beta", "delta"),
    RuleId.R8: ("gamma", "alpha", "beta"),
    RuleId.R9: ("alpha", "beta"),
    RuleId.R10: ("gamma", "alpha", "beta", "delta"),
    RuleId.HYP: (),
}
SEQ_KEYS = ("gamma", "delta")


@dataclass(frozen=True)
class ProofStep:
    index: int
    conclusion: Sequent
    rule: RuleId
    premises: tuple = ()
    bindings: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))


@dataclass
class ProofScript:
    goal: Sequent
    steps: list = field(default_factory=list)
    hypotheses: list = field(default_factory=list)

    def __str__(self):
        return format_script(self)


@dataclass(frozen=True)
class ProofViolation:
    """Why a step (or the script as a whole) was rejected.

    ``position`` is the 0-based index of the first formula where the stated
    conclusion departs from the one the rule produces, when that applies.
    """

    step: int | None
    rule: RuleId | None
    message: str
    position: int | None = None

    def __str__(self):
        where = "script" if self.step is None else f"step {self.step}"
        rule = f" ({self.rule.label})" if self.rule else ""
        pos = "" if self.position is None else f" at formula {self.position + 1}"
        return f"{where}{rule}: {self.message}{pos}"


class _Mismatch(Exception):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


# ---------------------------------------------------------------------------
# forward rule application
# ---------------------------------------------------------------------------

def _split_point(p1: tuple, p2: tuple) -> int:
    """Index of the first formula where two premises differ."""
    for k, (a, b) in enumerate(zip(p1, p2)):
        if a != b:
            return k
    return min(len(p1), len(p2))


def apply_rule(rule: RuleId, premises: list, bindings: dict | None = None):
    """Return ``(lhs, instantiation)`` for the conclusion of ``rule``.

    ``premises`` are left-hand sides (tuples).  R3/R4 need ``alpha`` and
    R6/R9 their formulas in ``bindings``.  Raises _Mismatch when the
    premises do not fit the rule.
    """
    b = bindings or {}
    if len(premises) != rule.arity:
        raise _Mismatch(f"expects {rule.arity} premise(s), got {len(premises)}")
    P = [tuple(p) for p in premises]

    if rule is RuleId.R6:
        s = b.get("sigma")
        if not isinstance(s, Atom):
            raise _Mismatch("sigma must be an atomic proposition", 0)
        return (s, Neg(s)), {"sigma": s}

    if rule is RuleId.R9:
        a, c = b.get("alpha"), b.get("beta")
        if a is None or c is None:
            raise _Mismatch("needs alpha and beta")
        return (negate(a), negate(c), Or(c, a)), {"alpha": a, "beta": c}

    if rule is RuleId.R2:
        (p,) = P
        if len(p) != 2:
            raise _Mismatch(f"applies only to exactly two formulas, premise has {len(p)}")
        return (p[1], p[0]), {"alpha": p[0], "beta": p[1]}

    if rule in (RuleId.R3, RuleId.R4):
        (p,) = P
        a = b.get("alpha")
        if a is None:
            raise _Mismatch("needs alpha")
        out = (a,) + p if rule is RuleId.R3 else p + (a,)
        return out, {"alpha": a, "gamma": p}

    if rule is RuleId.R7:
        (p,) = P
        if len(p) < 2:
            raise _Mismatch("premise needs at least two formulas")
        return (And(p[0], p[1]),) + p[2:], {"alpha": p[0], "beta": p[1], "delta": p[2:]}

    if rule is RuleId.R8:
        (p,) = P
        if len(p) < 2:
            raise _Mismatch("premise needs at least two formulas")
        return p[:-2] + (And(p[-1], p[-2]),), {"gamma": p[:-2], "alpha": p[-2], "beta": p[-1]}

    if rule is RuleId.R1:
        p1, p2 = P
        if len(p1) != len(p2) or not p1:
            raise _Mismatch("premises must have the same nonzero length")
        k = _split_point(p1, p2)
        if k == len(p1):
            raise _Mismatch("premises are identical")
        if p2[k] != negate(p1[k]):
            raise _Mismatch("second premise must carry the negation of the cut formula", k)
        if p1[k + 1:] != p2[k + 1:]:
            raise _Mismatch("premises differ after the cut formula", k + 1 + _split_point(p1[k + 1:], p2[k + 1:]))
        return p1[:k] + p1[k + 1:], {"gamma": p1[:k], "alpha": p1[k], "delta": p1[k + 1:]}

    if rule is RuleId.R5:
        p1, p2 = P
        if not p2:
            raise _Mismatch("second premise G, a must be nonempty")
        g, a = p2[:-1], p2[-1]
        if p1[:len(g)] != g:
            raise _Mismatch("first premise must start with G from the second premise", _split_point(p1, g))
        return g + (negate(a),) + p1[len(g):], {"gamma": g, "alpha": a, "delta": p1[len(g):]}

    if rule is RuleId.R10:
        p1, p2 = P
        if len(p2) != len(p1) + 1 or not p1:
            raise _Mismatch("second premise must be one formula longer than the first")
        k = _split_point(p1, p2)
        if k >= len(p1):
            raise _Mismatch("premises do not differ where the disjunct should be", k)
        a = p1[k]
        if p2[k] != negate(a):
            raise _Mismatch("second premise must carry the negation of alpha", k)
        if p1[k + 1:] != p2[k + 2:]:
            raise _Mismatch("premises differ after alpha", k + 1)
        return (p1[:k] + (Or(a, p2[k + 1]),) + p1[k + 1:],
                {"gamma": p1[:k], "alpha": a, "beta": p2[k + 1], "delta": p1[k + 1:]})

    raise _Mismatch("hypotheses are not derived")


def _infer_missing(rule: RuleId, concl: tuple, bindings: dict) -> dict:
    """Fill in bindings the conclusion pins down (R3/R4 alpha, R6, R9)."""
    b = dict(bindings)
    if rule is RuleId.R3 and "alpha" not in b and concl:
        b["alpha"] = concl[0]
    elif rule is RuleId.R4 and "alpha" not in b and concl:
        b["alpha"] = concl[-1]
    elif rule is RuleId.R6 and "sigma" not in b and concl:
        b["sigma"] = concl[0]
    elif rule is RuleId.R9 and len(concl) == 3 and isinstance(concl[2], Or):
        b.setdefault("alpha", concl[2].right)
        b.setdefault("beta", concl[2].left)
    return b


def _binding_matches(rule, key, given, actual) -> bool:
    if key in SEQ_KEYS:
        return tuple(given) == tuple(actual)
    if given == actual:
        return True
    # cut is symmetric: alpha may name either cut formula
    return rule is RuleId.R1 and key == "alpha" and negate(given) == actual


def check_step(step: ProofStep, context: dict, hypotheses=()) -> ProofViolation | None:
    """Check one step; ``context`` maps earlier indices to their conclusions."""
    rule = step.rule
    concl = step.conclusion

    def bad(msg, pos=None):
        return ProofViolation(step.index, rule, msg, pos)

    if concl.rhs:
        return bad("conclusion must have an empty right-hand side")
    for k, f in enumerate(concl.lhs):
        if not is_restricted(f):
            return bad(f"formula {format_prop(f)} is outside the restricted language", k)
    for i in step.premises:
        if i not in context:
            return bad(f"premise {i} is not an earlier step")
    unknown = set(step.bindings) - set(_KEYS[rule])
    if unknown:
        return bad(f"unknown binding(s) {', '.join(sorted(unknown))}")

    if rule is RuleId.HYP:
        if step.premises:
            return bad("a hypothesis cites no premises")
        if concl not in hypotheses:
            return bad("not among the declared hypotheses")
        return None

    premises = [context[i].lhs for i in step.premises]
    bindings = _infer_missing(rule, concl.lhs, step.bindings)
    try:
        expected, inst = apply_rule(rule, premises, bindings)
    except _Mismatch as e:
        return bad(str(e), e.position)
    for key, given in step.bindings.items():
        if not _binding_matches(rule, key, given, inst[key]):
            return bad(f"binding {key} does not match the instance")
    if expected != concl.lhs:
        k = _split_point(expected, concl.lhs)
        want = format_sequent(Sequent(expected))
        return bad(f"conclusion should be '{want}'", k)
    return None


def check_script(script: ProofScript) -> ProofViolation | None:
    """None when every step checks and the last one concludes the goal."""
    context = {}
    hyps = list(script.hypotheses)
    for h in hyps:
        if h.rhs or not all(is_restricted(f) for f in h.lhs):
            return ProofViolation(None, None, f"hypothesis '{format_sequent(h)}' is not a kernel sequent")
    expected_index = 1
    for step in script.steps:
        if step.index != expected_index:
            return ProofViolation(step.index, step.rule, f"expected step number {expected_index}")
        for i in step.premises:
            if i >= step.index:
                return ProofViolation(step.index, step.rule, f"premise {i} is not an earlier step")
        v = check_step(step, context, hyps)
        if v is not None:
            return v
        context[step.index] = step.conclusion
        expected_index += 1
    if not script.steps:
        return ProofViolation(None, None, "empty script")
    last = script.steps[-1]
    if last.conclusion != script.goal:
        k = _split_point(last.conclusion.lhs, script.goal.lhs)
        return ProofViolation(last.index, last.rule, "last step does not conclude the goal", k)
    return None


# ---------------------------------------------------------------------------
# building scripts
# ---------------------------------------------------------------------------

class ScriptBuilder:
    """Append-only script construction that reuses identical conclusions.

    Each ``r*`` method applies a rule forwards to earlier steps and returns
    the new step index.
    """

    def __init__(self, hypotheses=()):
        self.steps = []
        self.hypotheses = [h if isinstance(h, Sequent) else Sequent(tuple(h)) for h in hypotheses]
        self._seen = {}

    def lhs(self, i: int) -> tuple:
        return self.steps[i - 1].conclusion.lhs

    def add(self, rule: RuleId, premises=(), bindings=None) -> int:
        bindings = dict(bindings or {})
        try:
            out, _ = apply_rule(rule, [self.lhs(i) for i in premises], bindings)
        except _Mismatch as e:
            raise ValueError(f"{rule.label}: {e}") from None
        return self._push(Sequent(out), rule, tuple(premises), bindings)

    def _push(self, concl: Sequent, rule, premises, bindings) -> int:
        if concl in self._seen:
            return self._seen[concl]
        step = ProofStep(len(self.steps) + 1, concl, rule, premises, bindings)
        self.steps.append(step)
        self._seen[concl] = step.index
        return step.index

    def hyp(self, seq) -> int:
        seq = seq if isinstance(seq, Sequent) else Sequent(tuple(seq))
        if seq not in self.hypotheses:
            self.hypotheses.append(seq)
        return self._push(seq, RuleId.HYP, (), {})

    def r1(self, i, j):
        return self.add(RuleId.R1, (i, j))

    def r2(self, i):
        return self.add(RuleId.R2, (i,))

    def r3(self, alpha, i):
        return self.add(RuleId.R3, (i,), {"alpha": alpha})

    def r4(self, i, alpha):
        return self.add(RuleId.R4, (i,), {"alpha": alpha})

    def r3_all(self, gamma, i):
        """Prepend a whole sequence, last formula first."""
        for f in reversed(tuple(gamma)):
            i = self.r3(f, i)
        return i

    def r4_all(self, i, delta):
        for f in delta:
            i = self.r4(i, f)
        return i

    def r5(self, i, j):
        return self.add(RuleId.R5, (i, j))

    def r6(self, sigma):
        return self.add(RuleId.R6, (), {"sigma": sigma})

    def r7(self, i):
        return self.add(RuleId.R7, (i,))

    def r8(self, i):
        return self.add(RuleId.R8, (i,))

    def r9(self, alpha, beta):
        return self.add(RuleId.R9, (), {"alpha": alpha, "beta": beta})

    def r10(self, i, j):
        return self.add(RuleId.R10, (i, j))

    def script(self, goal_index: int | None = None) -> ProofScript:
        """The steps needed for ``goal_index`` (default: the last step),
        renumbered, with unused steps dropped."""
        if not self.steps:
            raise ValueError("no steps")
        goal_index = goal_index or len(self.steps)
        needed = set()
        stack = [goal_index]
        while stack:
            i = stack.pop()
            if i not in needed:
                needed.add(i)
                stack.extend(self.steps[i - 1].premises)
        renum = {}
        out = []
        for st in self.steps:
            if st.index in needed:
                renum[st.index] = len(out) + 1
                out.append(ProofStep(len(out) + 1, st.conclusion, st.rule,
                                     tuple(renum[p] for p in st.premises), st.bindings))
        hyps = [h for h in self.hypotheses if any(s.rule is RuleId.HYP and s.conclusion == h for s in out)]
        return ProofScript(self.steps[goal_index - 1].conclusion, out, hyps)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_BINDING_ORDER = ("sigma", "gamma", "alpha", "beta", "delta")


def _format_binding(key, value) -> str:
    if key in SEQ_KEYS:
        return f"{key}=" + ", ".join(format_prop(f) for f in value)
    return f"{key}={format_prop(value)}"


def format_step(step: ProofStep) -> str:
    parts = [f"{step.index}: {step.rule.label}"]
    if step.bindings:
        parts.append("[" + "; ".join(_format_binding(k, v) for k, v in step.bindings.items()) + "]")
    if step.premises:
        parts.append("from " + ",".join(map(str, step.premises)))
    return " ".join(parts) + " : " + format_sequent(step.conclusion)


def format_script(script: ProofScript) -> str:
    lines = [f"goal: {format_sequent(script.goal)}"]
    lines += [f"hyp: {format_sequent(h)}" for h in script.hypotheses]
    lines += [format_step(s) for s in script.steps]
    return "\n".join(lines) + "\n"


_STEP_RE = re.compile(
    r"^(?P<index>\d+)\s*:\s*(?P<rule>[A-Za-z0-9]+(?:[\s\-]+[A-Za-z][A-Za-z0-9]*)?)\s*"
    r"(?:\[(?P<bindings>[^\]]*)\])?\s*"
    r"(?:from\s+(?P<premises>\d+(?:\s*,\s*\d+)*))?\s*:(?P<sequent>.*)$")


def _parse_bindings(text: str) -> dict:
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, eq, value = part.partition("=")
        key = key.strip()
        if not eq or key not in _BINDING_ORDER:
            raise ParseError(f"bad binding {part.strip()!r}", text)
        if key in out:
            raise ParseError(f"binding {key} given twice", text)
        if key in SEQ_KEYS:
            value = value.strip()
            out[key] = tuple(parse_sequent(value + " |-").lhs) if value else ()
        else:
            out[key] = parse_prop(value)
    return out


def parse_script(text: str) -> ProofScript:
    goal = None
    hyps = []
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("goal:"):
                if goal is not None:
                    raise ParseError("second goal line")
                goal = parse_sequent(line[5:])
                continue
            if line.startswith("hyp:"):
                hyps.append(parse_sequent(line[4:]))
                continue
            m = _STEP_RE.match(line)
            if not m:
                raise ParseError("expected 'N: Rule [bindings] from i,j : sequent'")
            rule = RuleId.parse(m.group("rule"))
            bindings = _parse_bindings(m.group("bindings") or "")
            premises = tuple(int(x) for x in re.findall(r"\d+", m.group("premises") or ""))
            steps.append(ProofStep(int(m.group("index")), parse_sequent(m.group("sequent")),
                                   rule, premises, bindings))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}", text) from None
    if goal is None:
        raise ParseError("missing 'goal:' line", text)
    return ProofScript(goal, steps, hyps)


def load_script(path) -> ProofScript:
    return parse_script(Path(path).read_text())


def save_script(script: ProofScript, path) -> None:
    Path(path).write_text(format_script(script))
