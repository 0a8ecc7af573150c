"""Brute-force reference semantics.

Everything here is exhaustive tabulation: dense truth tables indexed by the
assignment read as a big-endian integer, textbook linear algebra over exact
ring values, and Myhill-Nerode class counting by context-based partition
refinement over all strings of a given length.  Diagram operations are
verified against this module at small scale; nothing here shares code with
the diagram-side algorithms it checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .builders import constant, projection
from .core import FORK, Manager, Tidd
from .errors import OracleScaleLimit, ShapeMismatch
from .ops import apply
from .values import (
    AND,
    BinaryOp,
    FALSE,
    OR,
    PLUS,
    TIMES,
    TRUE,
    Value,
    XOR,
    as_value,
)

MAX_ORACLE_VARS = 20


def _check_scale(num_vars: int) -> None:
    if num_vars > MAX_ORACLE_VARS:
        raise OracleScaleLimit(f"{num_vars} variables exceed oracle scale {MAX_ORACLE_VARS}")


@dataclass(frozen=True)
class DenseFunction:
    """Exhaustive tabulation: outputs[i] is the value at assignment bits(i)."""

    level: int
    outputs: tuple[Value, ...]

    def __post_init__(self) -> None:
        _check_scale(1 << self.level)
        expected = 1 << (1 << self.level)
        if len(self.outputs) != expected:
            raise ShapeMismatch(f"expected {expected} outputs, got {len(self.outputs)}")

    @property
    def num_vars(self) -> int:
        return 1 << self.level


def dense_function(level: int, outputs) -> DenseFunction:
    return DenseFunction(level, tuple(as_value(v) for v in outputs))


def dense_constant(level: int, v) -> DenseFunction:
    return dense_function(level, [as_value(v)] * (1 << (1 << level)))


def dense_projection(level: int, index: int) -> DenseFunction:
    nvars = 1 << level
    shift = nvars - 1 - index
    return dense_function(
        level, [TRUE if (i >> shift) & 1 else FALSE for i in range(1 << nvars)]
    )


def dense_from_tidd(f: Tidd) -> DenseFunction:
    """Tabulate a diagram by running the state map over all strings per level."""
    _check_scale(f.num_vars)
    layers = f.top.stack()
    if layers[0].kind == FORK:
        states = [0, 1]
    else:
        states = [0, 0]
    for layer in layers[1:]:
        half_bits = 1 << (layer.level - 1)
        mask = (1 << half_bits) - 1
        table = layer.table
        states = [
            table[states[w >> half_bits]][states[w & mask]]
            for w in range(1 << (1 << layer.level))
        ]
    return DenseFunction(f.level, tuple(f.values[s] for s in states))


def exhaustive_equiv(f: Tidd, d: DenseFunction) -> bool:
    """True iff the diagram matches the dense table at every assignment."""
    if f.level != d.level:
        raise ShapeMismatch(f"levels {f.level} and {d.level}")
    return dense_from_tidd(f).outputs == d.outputs


def dense_apply(op: BinaryOp, a: DenseFunction, b: DenseFunction) -> DenseFunction:
    if a.level != b.level:
        raise ShapeMismatch(f"levels {a.level} and {b.level}")
    return DenseFunction(a.level, tuple(op(x, y) for x, y in zip(a.outputs, b.outputs)))


def _interleave(row: int, col: int, half_bits: int) -> int:
    out = 0
    for i in range(half_bits):
        r = (row >> (half_bits - 1 - i)) & 1
        c = (col >> (half_bits - 1 - i)) & 1
        out = (out << 2) | (r << 1) | c
    return out


def dense_to_matrix(d: DenseFunction) -> list[list[Value]]:
    """Decode an interleaved row/column function into a square value grid."""
    if d.level < 1:
        raise ShapeMismatch("matrix functions need at least 2 variables")
    half_bits = 1 << (d.level - 1)
    side = 1 << half_bits
    return [
        [d.outputs[_interleave(r, c, half_bits)] for c in range(side)]
        for r in range(side)
    ]


def matrix_to_dense(grid: list[list[Value]], level: int) -> DenseFunction:
    half_bits = 1 << (level - 1)
    side = 1 << half_bits
    outputs = [FALSE] * (1 << (1 << level))
    for r in range(side):
        for c in range(side):
            outputs[_interleave(r, c, half_bits)] = as_value(grid[r][c])
    return DenseFunction(level, tuple(outputs))


def dense_matmul(a: DenseFunction, b: DenseFunction) -> DenseFunction:
    """Textbook matrix product over the interleaved index decoding."""
    if a.level != b.level:
        raise ShapeMismatch(f"levels {a.level} and {b.level}")
    ga = dense_to_matrix(a)
    gb = dense_to_matrix(b)
    side = len(ga)
    product = [
        [
            sum((ga[r][k] * gb[k][c] for k in range(side)), Value(0, 0, 0))
            for c in range(side)
        ]
        for r in range(side)
    ]
    return matrix_to_dense(product, a.level)


def dense_kron(a: DenseFunction, b: DenseFunction) -> DenseFunction:
    """Textbook tensor product: outputs indexed by the concatenated assignment."""
    if a.level != b.level:
        raise ShapeMismatch(f"levels {a.level} and {b.level}")
    bits_b = 1 << b.level
    outputs = []
    for x in a.outputs:
        for y in b.outputs:
            outputs.append(x * y)
    assert len(outputs) == 1 << (bits_b * 2)
    return DenseFunction(a.level + 1, tuple(outputs))


# ---------------------------------------------------------------------------
# Myhill-Nerode class counting

def class_count_at_level(d: DenseFunction, i: int) -> int:
    """Number of context-equivalence classes of length-2**i substrings.

    This is the state count any minimal diagram for d must have at level i.
    Seeded by output values at the top level and refined downward: two
    strings stay together iff concatenating them with every peer, on either
    side, lands in the same class one level up.
    """
    if not 0 <= i <= d.level:
        raise OracleScaleLimit(f"level {i} outside 0..{d.level}")
    classes: dict[Value, int] = {}
    cls = []
    for v in d.outputs:
        if v not in classes:
            classes[v] = len(classes)
        cls.append(classes[v])
    for j in range(d.level - 1, i - 1, -1):
        m_bits = 1 << j
        count = 1 << m_bits
        index: dict[tuple, int] = {}
        new_cls = []
        for w in range(count):
            sig = tuple(cls[(w << m_bits) | u] for u in range(count)) + tuple(
                cls[(u << m_bits) | w] for u in range(count)
            )
            if sig not in index:
                index[sig] = len(index)
            new_cls.append(index[sig])
        cls = new_cls
    return len(set(cls))


def anti_diagonal_row_classes(n: int) -> int:
    """Context classes of the 2**n row strings under the anti-diagonal test.

    The function is a conjunction of one single-bit test per row slot, so a
    row string's class is its vector of per-slot test outcomes, with a slot
    contributing only when the remaining slots can be satisfied
    simultaneously.  Enumerates all 2**n row strings.
    """
    _check_scale(n)
    tests = []
    for slot in range(n):
        position = n - 1 - slot  # bit tested when a row sits in this slot
        shift = n - 1 - position
        tests.append(lambda w, s=shift: (w >> s) & 1 == 0)
    satisfiable = [any(t(w) for w in range(1 << n)) for t in tests]
    signatures = set()
    for w in range(1 << n):
        sig = tuple(
            tests[slot](w)
            for slot in range(n)
            if all(satisfiable[q] for q in range(n) if q != slot)
        )
        signatures.add(sig)
    return len(signatures)


# ---------------------------------------------------------------------------
# randomized equivalence suite (shared by tests and the CLI)

_BOOL_OPS = (AND, OR, XOR, PLUS, TIMES)
_RING_OPS = (PLUS, TIMES)


def random_equivalence_case(
    mgr: Manager, rng: Random, level: int
) -> tuple[Tidd, DenseFunction]:
    """One random expression built twice: through apply and through the oracle.

    Leaves are projections and constants; operators come from
    {AND, OR, XOR, PLUS, TIMES}, with boolean operators only offered while
    both operands are boolean-valued.
    """
    nvars = 1 << level
    terms: list[tuple[Tidd, DenseFunction, bool]] = []
    for _ in range(rng.randint(2, 6)):
        roll = rng.random()
        if roll < 0.7:
            idx = rng.randrange(nvars)
            terms.append((projection(mgr, level, idx), dense_projection(level, idx), True))
        elif roll < 0.85:
            flag = rng.random() < 0.5
            terms.append(
                (constant(mgr, level, flag), dense_constant(level, flag), True)
            )
        else:
            c = rng.randint(-3, 3)
            terms.append((constant(mgr, level, c), dense_constant(level, c), False))
    while len(terms) > 1:
        j = rng.randrange(len(terms) - 1)
        t1, d1, b1 = terms.pop(j)
        t2, d2, b2 = terms.pop(j)
        op = rng.choice(_BOOL_OPS if b1 and b2 else _RING_OPS)
        boolean = op in (AND, OR, XOR) or (op is TIMES and b1 and b2)
        terms.insert(j, (apply(op, t1, t2), dense_apply(op, d1, d2), boolean))
    return terms[0][0], terms[0][1]


def run_equivalence_suite(
    mgr: Manager, num_vars: int, cases: int, seed: int
) -> tuple[int, int]:
    """Run seeded random-expression equivalence checks; returns (passed, failed)."""
    if num_vars < 1 or num_vars & (num_vars - 1):
        raise OracleScaleLimit(f"variable count {num_vars} is not a power of two")
    _check_scale(num_vars)
    level = num_vars.bit_length() - 1
    rng = Random(seed)
    passed = failed = 0
    for _ in range(cases):
        f, d = random_equivalence_case(mgr, rng, level)
        if exhaustive_equiv(f, d):
            passed += 1
        else:
            failed += 1
    return passed, failed
