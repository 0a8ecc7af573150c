from random import Random

import pytest

from tidd import (
    AND,
    FIRST,
    OR,
    PLUS,
    TIMES,
    Value,
    XOR,
    apply,
    constant,
    equal,
    equality_relation,
    from_truth_table,
    hadamard_family,
    kronecker,
    projection,
    scalar_multiply,
    validate,
)
from tidd.errors import LevelMismatch, ValueDomainError
from tidd.ops import (
    canonical_renumber,
    canonical_tidd,
    pair_product,
    reduce_tidd,
    top_classes_from_values,
)
from tidd.oracle import (
    dense_apply,
    dense_from_tidd,
    dense_kron,
    random_equivalence_case,
)

from helpers import random_raw_table, random_truth_table


def test_canonical_renumber_example():
    table, perm = canonical_renumber(((1, 1), (1, 0)))
    assert table == ((0, 0), (0, 1))
    assert perm == (1, 0)


def test_canonical_renumber_identity_on_canonical():
    table, perm = canonical_renumber(((0, 0), (0, 1)))
    assert table == ((0, 0), (0, 1))
    assert perm == (0, 1)


def test_canonical_renumber_idempotent_random():
    rng = Random(4)
    for _ in range(1000):
        side = rng.randint(1, 5)
        parents = rng.randint(1, side * side)
        raw = random_raw_table(rng, side, parents)
        once, _ = canonical_renumber(raw)
        twice, perm = canonical_renumber(once)
        assert twice == once
        assert perm == tuple(range(len(perm)))


def test_pair_product_level0_table(mgr):
    fork, dc = mgr.fork(), mgr.dontcare()
    layer, meta = pair_product(dc, dc)
    assert layer is dc and meta == ((0, 0),)
    layer, meta = pair_product(fork, dc)
    assert layer is fork and meta == ((0, 0), (1, 0))
    layer, meta = pair_product(dc, fork)
    assert layer is fork and meta == ((0, 0), (0, 1))
    layer, meta = pair_product(fork, fork)
    assert layer is fork and meta == ((0, 0), (1, 1))


def test_pair_product_diagonal_on_self(mgr):
    f = hadamard_family(mgr, 3)
    layer = f.top
    while layer is not None:
        _, meta = pair_product(layer, layer)
        assert all(q == p for q, p in meta)
        layer = layer.child


def test_pair_product_count_bound(mgr):
    rng = Random(5)
    for _ in range(100):
        level = rng.randint(1, 3)
        a = from_truth_table(mgr, level, random_truth_table(rng, level))
        b = from_truth_table(mgr, level, random_truth_table(rng, level))
        la, lb = a.top, b.top
        while la is not None:
            layer, meta = pair_product(la, lb)
            assert layer.num_states == len(meta)
            assert layer.num_states <= la.num_states * lb.num_states
            la, lb = la.child, lb.child


def test_pair_product_memoized(mgr):
    a = hadamard_family(mgr, 2)
    b = equality_relation(mgr, 2)
    pair_product(a.top, b.top)
    misses = mgr.stats["pair_product_misses"]
    layer1, _ = pair_product(a.top, b.top)
    layer2, _ = pair_product(a.top, b.top)
    assert layer1 is layer2
    assert mgr.stats["pair_product_misses"] == misses
    assert mgr.stats["pair_product_hits"] >= 2


def test_pair_product_level_mismatch(mgr):
    with pytest.raises(LevelMismatch):
        pair_product(hadamard_family(mgr, 1).top, hadamard_family(mgr, 2).top)


def test_top_classes_leftmost():
    v1, v2 = Value(1, 0), Value(2, 0)
    classes, values = top_classes_from_values((v1, v2, v1))
    assert classes == (0, 1, 0)
    assert values == (v1, v2)


def test_reduce_idempotent_on_canonical(mgr):
    for f in (
        hadamard_family(mgr, 3),
        equality_relation(mgr, 2),
        constant(mgr, 2, 4),
        projection(mgr, 3, 2),
    ):
        g = reduce_tidd(f)
        assert g.top is f.top
        assert g.values == f.values


def test_reduce_merges_fork_to_dontcare(mgr):
    # a redundant fork-based stack collapses to the constant diagram
    layer = mgr.intern_layer(mgr.fork(), ((0, 0), (0, 0)))
    f = canonical_tidd(layer, [Value(7, 0)])
    assert equal(f, constant(mgr, 1, 7))


def test_reduce_output_validates_random(mgr):
    rng = Random(6)
    for _ in range(200):
        level = rng.randint(1, 3)
        f, _ = random_equivalence_case(mgr, rng, level)
        assert validate(f).ok
        g = reduce_tidd(f)
        assert g.top is f.top and g.values == f.values


def test_apply_and_projections(mgr):
    f = apply(AND, projection(mgr, 1, 0), projection(mgr, 1, 1))
    assert [v for v in dense_from_tidd(f).outputs] == [
        Value(0, 0),
        Value(0, 0),
        Value(0, 0),
        Value(1, 0),
    ]


def test_apply_plus_hadamard(mgr):
    h = hadamard_family(mgr, 1)
    s = apply(PLUS, h, h)
    assert set(s.values) == {Value(2, 0), Value(-2, 0)}
    assert s.top is h.top  # same state structure, doubled values


def test_apply_times_absorbing_zero(mgr):
    rng = Random(8)
    zero = constant(mgr, 2, 0)
    for _ in range(10):
        f = from_truth_table(mgr, 2, random_truth_table(rng, 2))
        assert equal(apply(TIMES, f, zero), zero)


def test_apply_first(mgr):
    f = projection(mgr, 2, 1)
    g = hadamard_family(mgr, 2)
    assert equal(apply(FIRST, f, g), f)


def test_apply_pointwise_matches_oracle(mgr):
    rng = Random(9)
    ops = (AND, OR, XOR, PLUS, TIMES)
    for level in (1, 2, 3):
        for _ in range(20):
            ta = random_truth_table(rng, level, values=(0, 1))
            tb = random_truth_table(rng, level, values=(0, 1))
            a = from_truth_table(mgr, level, ta)
            b = from_truth_table(mgr, level, tb)
            op = rng.choice(ops)
            result = apply(op, a, b)
            expected = dense_apply(
                op, dense_from_tidd(a), dense_from_tidd(b)
            )
            assert dense_from_tidd(result).outputs == expected.outputs


def test_apply_commutative_handles(mgr):
    rng = Random(10)
    for _ in range(25):
        a = from_truth_table(mgr, 2, random_truth_table(rng, 2))
        b = from_truth_table(mgr, 2, random_truth_table(rng, 2))
        assert equal(apply(PLUS, a, b), apply(PLUS, b, a))
        assert equal(apply(TIMES, a, b), apply(TIMES, b, a))


def test_apply_level_mismatch(mgr):
    with pytest.raises(LevelMismatch):
        apply(PLUS, constant(mgr, 1, 1), constant(mgr, 2, 1))


def test_apply_boolean_op_on_nonboolean(mgr):
    with pytest.raises(ValueDomainError):
        apply(AND, constant(mgr, 1, 2), constant(mgr, 1, 1))


def test_scalar_multiply(mgr):
    h = hadamard_family(mgr, 2)
    assert equal(scalar_multiply(1, h), h)
    assert equal(scalar_multiply(0, h), constant(mgr, 2, 0))
    doubled = scalar_multiply(2, hadamard_family(mgr, 1))
    dense = dense_from_tidd(doubled)
    assert [v for v in dense.outputs] == [
        Value(2, 0),
        Value(2, 0),
        Value(2, 0),
        Value(-2, 0),
    ]


def test_kronecker_hadamard(mgr):
    h1 = hadamard_family(mgr, 1)
    assert equal(kronecker(h1, h1), hadamard_family(mgr, 2))


def test_kronecker_unit_factor(mgr):
    rng = Random(12)
    one = constant(mgr, 2, 1)
    for _ in range(5):
        f = from_truth_table(mgr, 2, random_truth_table(rng, 2))
        k = kronecker(f, one)
        dense_f = dense_from_tidd(f)
        dense_k = dense_from_tidd(k)
        # evaluating on w || w' ignores w'
        for w in range(16):
            for w2 in range(16):
                assert dense_k.outputs[(w << 4) | w2] == dense_f.outputs[w]


def test_kronecker_matches_dense(mgr):
    rng = Random(13)
    for level in (0, 1, 2):
        for _ in range(10):
            a = from_truth_table(mgr, level, random_truth_table(rng, level))
            b = from_truth_table(mgr, level, random_truth_table(rng, level))
            got = dense_from_tidd(kronecker(a, b))
            expected = dense_kron(dense_from_tidd(a), dense_from_tidd(b))
            assert got.outputs == expected.outputs


def test_kronecker_level_mismatch(mgr):
    with pytest.raises(LevelMismatch):
        kronecker(constant(mgr, 1, 1), constant(mgr, 2, 1))
