"""Addition sequences for quadratic exponent sets, with cost accounting.

An addition sequence is a set of positive integers containing 1 in which
every element > 1 is a sum of two smaller elements.  Computing {q^e} for a
target exponent set E from an addition sequence A >= E costs one complex
multiplication (or cheaper: one squaring) per element of A beyond the base.

Three families of builders are provided:

* ``build_classical``   -- finite-difference sequences, two additions per term;
* ``complete_generic``  -- gap filling by repeated halving of unreachable
                           elements (works for any target set);
* ``build_optimized``/``build_quarter_square``/``build_a182568`` -- per-kind
  sequences that realize almost every new term as a single addition of
  earlier members, falling back to a squaring plus a multiplication (2a+b)
  and, for the rare exceptional members, to a three-term split.

Step costs follow the complex-arithmetic model where a real multiplication
costs M and a real squaring costs S (FFT: S = 2M/3, schoolbook: S = M/2):

    2a    -> 2S + M        a+b  -> 3M         3a -> 2S + 2M
    4a    -> 4S + 2M       2a+b -> 2S + 4M
"""

from __future__ import annotations

import json
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction

from .exponents import ExponentKind, UnsupportedKind, exponent

LEAF = "leaf"
DOUBLE = "double"
ADD = "add"
DOUBLE_ADD = "double_add"
TRIPLE = "triple"


class NoDecomposition(ValueError):
    """No double / add / double-add step exists over the available members."""


@dataclass(frozen=True)
class AdditionStep:
    target: int
    kind: str
    a: int = 0
    b: int = 0

    def operands(self):
        if self.kind in (DOUBLE, TRIPLE):
            return (self.a,)
        if self.kind in (ADD, DOUBLE_ADD):
            return (self.a, self.b)
        return ()


@dataclass(frozen=True)
class AdditionSequence:
    """Ordered steps producing every element of ``targets``; immutable."""

    steps: tuple[AdditionStep, ...]
    targets: frozenset[int]

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(s.target for s in self.steps)

    @property
    def counts(self) -> tuple[int, int, int, int]:
        """(num_double, num_add, num_double_add, num_triple)"""
        n = {DOUBLE: 0, ADD: 0, DOUBLE_ADD: 0, TRIPLE: 0, LEAF: 0}
        for s in self.steps:
            n[s.kind] += 1
        return (n[DOUBLE], n[ADD], n[DOUBLE_ADD], n[TRIPLE])

    def complex_op_counts(self) -> tuple[int, int]:
        """(complex multiplications, complex squarings); a 2a+b step is one of each."""
        nd, na, nda, nt = self.counts
        if nt:
            raise ValueError("triple steps are not expressible as mul/sqr pairs")
        return (na + nda, nd + nda)


@dataclass(frozen=True)
class CostModel:
    """Cost of real squaring S relative to a real multiplication M = 1."""

    name: str
    squaring: Fraction

    def step_cost(self, kind: str) -> Fraction:
        s = self.squaring
        if kind == LEAF:
            return Fraction(0)
        if kind == DOUBLE:
            return 2 * s + 1
        if kind == ADD:
            return Fraction(3)
        if kind == TRIPLE:
            return 2 * s + 2
        if kind == DOUBLE_ADD:
            return 2 * s + 4
        raise ValueError(f"unknown step kind {kind!r}")

    def quadruple_cost(self) -> Fraction:
        return 4 * self.squaring + 2


FFT = CostModel("fft", Fraction(2, 3))
SCHOOLBOOK = CostModel("schoolbook", Fraction(1, 2))


def cost(seq: AdditionSequence, model: CostModel = FFT) -> Fraction:
    """Total cost of all steps in units of one real multiplication M."""
    return sum((model.step_cost(s.kind) for s in seq.steps), Fraction(0))


def normalized_cost(seq: AdditionSequence, N: int) -> float:
    """FFT-model cost per term, (3*mul + (7/3)*sqr) / (3*N)."""
    mul, sqr = seq.complex_op_counts()
    return float((3 * Fraction(mul) + Fraction(7, 3) * sqr) / (3 * N))


def normalized_cost_from_counts(mul: int, sqr: int, N: int) -> float:
    return float((3 * Fraction(mul) + Fraction(7, 3) * sqr) / (3 * N))


# ---------------------------------------------------------------------------
# step search


def _find_step(c, avail_list, avail_set):
    """Cheapest decomposition of c over available elements, or None.

    Tries squaring, then addition, then double-add, per the cost table.  The
    operand scan runs over larger elements first; the first hit wins.
    """
    if c % 2 == 0 and c // 2 in avail_set:
        return AdditionStep(c, DOUBLE, c // 2)
    hi = bisect_left(avail_list, c)
    lo = bisect_left(avail_list, (c + 1) // 2)
    for i in range(hi - 1, lo - 1, -1):
        a = avail_list[i]
        b = c - a
        if b >= 1 and b in avail_set:
            return AdditionStep(c, ADD, a, b)
    hi2 = bisect_left(avail_list, (c + 1) // 2)
    for i in range(hi2 - 1, -1, -1):
        a = avail_list[i]
        b = c - 2 * a
        if b >= 1 and b in avail_set:
            return AdditionStep(c, DOUBLE_ADD, a, b)
    return None


def decompose_step(kind: ExponentKind, c: int, available) -> AdditionStep:
    """First applicable of Double / Add / DoubleAdd for c over ``available``.

    ``available`` holds all smaller members of the kind plus any helpers
    already inserted.  Raises NoDecomposition when no single step exists
    (possible for trigonal / almost-square exceptional members).
    """
    avail_list = sorted(x for x in set(available) if 0 < x < c)
    step = _find_step(c, avail_list, set(avail_list))
    if step is None:
        raise NoDecomposition(f"no double/add/double-add step for {c} ({kind})")
    return step


def _find_three_split(c, avail_list, avail_set):
    """Split c = a+b+d over available elements, largest parts first."""
    hi = bisect_left(avail_list, c)
    for i in range(hi - 1, -1, -1):
        a = avail_list[i]
        rest = c - a
        if rest < 2:
            continue
        for j in range(min(i, bisect_left(avail_list, rest)) , -1, -1):
            b = avail_list[j]
            if b > rest - 1:
                continue
            d = rest - b
            if d > b:
                break
            if d >= 1 and d in avail_set:
                return (a, b, d)
    return None


# ---------------------------------------------------------------------------
# builders


class _SeqBuilder:
    def __init__(self):
        self.steps = []
        self.have = set()
        self.sorted = []

    def leaf(self, value):
        if value not in self.have:
            self.steps.append(AdditionStep(value, LEAF))
            self._register(value)

    def emit(self, step):
        if step.target in self.have:
            return
        self.steps.append(step)
        self._register(step.target)

    def _register(self, value):
        self.have.add(value)
        if value > 0:
            insort(self.sorted, value)

    def finish(self, targets):
        return AdditionSequence(tuple(self.steps), frozenset(targets))


def build_classical(kind: ExponentKind, N: int) -> AdditionSequence:
    """Finite-difference addition sequence covering e_1..e_N; two adds per term."""
    if N < 1:
        raise ValueError("N >= 1 required")
    targets = [exponent(kind, i) for i in range(1, N + 1)]
    b = _SeqBuilder()
    if kind is ExponentKind.SQUARE:
        b.leaf(1)
        if N >= 2:
            b.emit(AdditionStep(2, ADD, 1, 1))
            b.emit(AdditionStep(3, ADD, 2, 1))
            b.emit(AdditionStep(4, ADD, 3, 1))
        helper = 3
        for n in range(3, N + 1):
            nh = 2 * n - 1
            b.emit(AdditionStep(nh, ADD, helper, 2))
            b.emit(AdditionStep(n * n, ADD, (n - 1) * (n - 1), nh))
            helper = nh
    elif kind is ExponentKind.TRIGONAL:
        b.leaf(0)
        b.leaf(1)
        if N >= 2:
            b.emit(AdditionStep(2, ADD, 1, 1))
        helper = 2
        for n in range(2, N):
            nh = 2 * n
            b.emit(AdditionStep(nh, ADD, helper, 2))
            b.emit(AdditionStep(n * (n + 1), ADD, (n - 1) * n, nh))
            helper = nh
    elif kind is ExponentKind.PENTAGONAL:
        # two interleaved finite-difference chains, for n(3n-1)/2 and n(3n+1)/2
        b.leaf(0)
        b.leaf(1)
        if N >= 3:
            b.emit(AdditionStep(2, ADD, 1, 1))
            b.emit(AdditionStep(3, ADD, 2, 1))
        helpers = {0: 4, 1: 5}  # next increment of each chain: 3n+1 / 3n+2 at n=1
        terms = {0: 1, 1: 2}
        for i in range(4, N + 1):
            branch = 0 if i % 2 == 0 else 1
            n = i // 2 if branch == 0 else (i - 1) // 2
            h = helpers[branch]
            if h not in b.have:
                b.emit(AdditionStep(h, ADD, h - 3, 3))
            t = terms[branch] + h
            b.emit(AdditionStep(t, ADD, terms[branch], h))
            terms[branch] = t
            helpers[branch] = h + 3
    else:
        raise UnsupportedKind(f"no classical finite-difference row for {kind}")
    return b.finish(targets)


def complete_generic(E) -> AdditionSequence:
    """Complete a strictly increasing list of positive integers to an
    addition sequence by repeatedly inserting floor(c/2) and ceil(c/2) for
    any element c that is not a sum of two smaller elements."""
    targets = sorted(set(E))
    if not targets or targets[0] < 1:
        raise ValueError("targets must be positive integers")
    elements = set(targets)
    order = sorted(elements)

    def has_pair(c):
        i = bisect_left(order, (c + 2) // 2)
        hi = bisect_left(order, c)
        for j in range(i, hi):
            if c - order[j] in elements:
                return True
        return False

    def ensure(c):
        if c == 1 or has_pair(c):
            return
        pending = [c]
        while pending:
            x = pending.pop()
            if x == 1 or has_pair(x):
                continue
            for h in {x // 2, (x + 1) // 2}:
                if h not in elements:
                    elements.add(h)
                    insort(order, h)
                    pending.append(h)

    for c in targets:
        ensure(c)

    b = _SeqBuilder()
    b.leaf(1)
    for c in order:
        if c == 1:
            continue
        step = _find_step(c, b.sorted, b.have)
        if step is None:  # cannot happen: halves were inserted
            raise AssertionError(f"gap at {c}")
        b.emit(step)
    return b.finish(targets)


_OPTIMIZED_KINDS = (
    ExponentKind.PENTAGONAL,
    ExponentKind.TRIGONAL,
    ExponentKind.ALMOST_SQUARE,
)


def build_optimized(kind: ExponentKind, N: int) -> AdditionSequence:
    """Addition sequence for e_1..e_N trying squaring, then one addition,
    then squaring-plus-addition for each new member; exceptional members of
    the trigonal / almost-square families fall back to a three-term split
    realized through an explicit helper element."""
    if kind not in _OPTIMIZED_KINDS:
        raise UnsupportedKind(f"build_optimized does not support {kind}")
    if N < 2:
        raise ValueError("N >= 2 required")
    targets = [exponent(kind, i) for i in range(1, N + 1)]
    b = _SeqBuilder()
    b.leaf(0)
    b.leaf(1)
    start = 3
    if kind is ExponentKind.TRIGONAL:
        b.emit(AdditionStep(2, DOUBLE, 1))
    elif kind is ExponentKind.ALMOST_SQUARE:
        b.emit(AdditionStep(3, DOUBLE_ADD, 1, 1))
    for i in range(start, N + 1):
        _extend(b, exponent(kind, i))
    return b.finish(targets)


def _extend(b, c):
    """Append steps producing c from the builder's current element pool."""
    step = _find_step(c, b.sorted, b.have)
    if step is not None:
        b.emit(step)
        return
    split = _find_three_split(c, b.sorted, b.have)
    if split is not None:
        a, mid, d = split
        b.emit(AdditionStep(a + mid, ADD, a, mid))
        b.emit(AdditionStep(c, ADD, a + mid, d))
        return
    # last resort: halving insertion, as in the generic completion
    for h in sorted({c // 2, (c + 1) // 2}):
        if h not in b.have:
            _extend(b, h)
    b.emit(_find_step(c, b.sorted, b.have))


def build_quarter_square(N: int) -> AdditionSequence:
    """Quarter-square sequence through the six residue-class recursions
    t(6n+alpha) = 2 t(4n+beta) + t(2n+gamma)."""
    if N < 2:
        raise ValueError("N >= 2 required")

    def t(i):
        return 0 if i < 0 else ((i + 1) * (i + 1)) // 4

    rules = {0: (0, -2), 1: (0, 1), 2: (1, 0), 3: (2, -1), 4: (2, 2), 5: (3, 1)}
    targets = [t(i - 1) for i in range(1, N + 1)]
    b = _SeqBuilder()
    b.leaf(0)
    b.leaf(1)
    for i in range(2, N):
        n, alpha = divmod(i, 6)
        dbeta, dgamma = rules[alpha]
        a = t(4 * n + dbeta)
        g = t(2 * n + dgamma)
        if g == 0:
            b.emit(AdditionStep(t(i), DOUBLE, a))
        else:
            b.emit(AdditionStep(t(i), DOUBLE_ADD, a, g))
    return b.finish(targets)


# (beta, gamma) offsets for f(20k+alpha) = f(16k+beta) + f(12k+gamma)
_A182568_RULES = {0: (0, 0), 1: (2, -1), 2: (1, 2), 3: (3, 1), 4: (2, 4),
                  5: (4, 3), 6: (6, 2), 7: (5, 5), 8: (7, 4), 9: (6, 7),
                  10: (8, 6)}


def build_a182568(N: int) -> AdditionSequence:
    """Interleaved trigonal / even-square / even-almost-square sequence; every
    member >= 4 is the sum of two smaller members."""
    if N < 2:
        raise ValueError("N >= 2 required")

    def f(n):
        return 2 * (n * n // 8)

    targets = [f(i + 1) for i in range(1, N + 1)]
    b = _SeqBuilder()
    b.leaf(0)
    b.leaf(1)
    for n in range(3, N + 2):
        if n == 3:
            b.emit(AdditionStep(2, DOUBLE, 1))
        elif n == 4:
            b.emit(AdditionStep(4, DOUBLE, 2))
        elif n == 6:
            b.emit(AdditionStep(8, DOUBLE, 4))
        else:
            alpha = (n + 9) % 20 - 9
            k = (n - alpha) // 20
            if alpha >= 0:
                dbeta, dgamma = _A182568_RULES[alpha]
            else:
                dbeta, dgamma = (-x for x in _A182568_RULES[-alpha])
            b.emit(AdditionStep(f(n), ADD, f(16 * k + dbeta), f(12 * k + dgamma)))
    return b.finish(targets)


# ---------------------------------------------------------------------------
# validation and serialization


def validate(seq: AdditionSequence):
    """Check every step's arithmetic and ordering; None if valid, else the
    first violation as a string."""
    seen = set()
    for s in seq.steps:
        if s.kind == LEAF:
            if s.target not in (0, 1):
                return f"leaf {s.target} is not a base element"
        else:
            if s.target < 1:
                return f"non-leaf target {s.target} must be positive"
            for op in s.operands():
                if op not in seen:
                    return f"operand {op} of {s.target} not produced earlier"
                if op >= s.target:
                    return f"operand {op} of {s.target} not strictly smaller"
                if op < 1:
                    return f"operand {op} of {s.target} is not positive"
            if s.kind == DOUBLE and s.target != 2 * s.a:
                return f"{s.target} != 2*{s.a}"
            if s.kind == ADD and s.target != s.a + s.b:
                return f"{s.target} != {s.a}+{s.b}"
            if s.kind == DOUBLE_ADD and s.target != 2 * s.a + s.b:
                return f"{s.target} != 2*{s.a}+{s.b}"
            if s.kind == TRIPLE and s.target != 3 * s.a:
                return f"{s.target} != 3*{s.a}"
            if s.kind not in (DOUBLE, ADD, DOUBLE_ADD, TRIPLE):
                return f"unknown step kind {s.kind!r}"
        if s.target in seen:
            return f"duplicate element {s.target}"
        seen.add(s.target)
    if 1 not in seen:
        return "sequence does not contain 1"
    missing = seq.targets - seen
    if missing:
        return f"targets not covered: {sorted(missing)[:5]}"
    return None


def dump_text(seq: AdditionSequence) -> str:
    lines = []
    for s in seq.steps:
        if s.kind == LEAF:
            lines.append(f"{s.target} {s.kind}")
        elif s.kind in (DOUBLE, TRIPLE):
            lines.append(f"{s.target} {s.kind} {s.a}")
        else:
            lines.append(f"{s.target} {s.kind} {s.a} {s.b}")
    return "\n".join(lines) + "\n"


def load_text(text: str, targets=None) -> AdditionSequence:
    steps = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        target, kind = int(parts[0]), parts[1]
        ops = [int(x) for x in parts[2:]]
        a = ops[0] if ops else 0
        b = ops[1] if len(ops) > 1 else 0
        steps.append(AdditionStep(target, kind, a, b))
    if targets is None:
        targets = [s.target for s in steps]
    return AdditionSequence(tuple(steps), frozenset(targets))


def dump_json(seq: AdditionSequence) -> str:
    return json.dumps({
        "targets": sorted(seq.targets),
        "steps": [{"target": s.target, "kind": s.kind,
                   "operands": list(s.operands())} for s in seq.steps],
    })


def load_json(text: str) -> AdditionSequence:
    doc = json.loads(text)
    steps = []
    for d in doc["steps"]:
        ops = d.get("operands", [])
        a = ops[0] if ops else 0
        b = ops[1] if len(ops) > 1 else 0
        steps.append(AdditionStep(d["target"], d["kind"], a, b))
    return AdditionSequence(tuple(steps), frozenset(doc["targets"]))
