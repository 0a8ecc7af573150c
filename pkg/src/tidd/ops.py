"""Binary operations, reduction, and products.

Pointwise binary operations follow the two-phase construction: a cross
product (pair product) of the operand layer stacks annotated with operand
state pairs, then a minimization (reduction) that merges same-valued top
states and propagates the equivalence downward with leftmost representatives.

Reduction is a single top-down pass: in a leveled automaton the equivalence
classes at level i are fully determined by the classes at level i+1 (every
context of a level-i state factors through level i+1), so no fixpoint
iteration is needed.  The rebuild runs bottom-up with canonical renumbering.
"""

from __future__ import annotations

from .core import DONTCARE, FORK, Layer, Table, Tidd
from .errors import LevelMismatch
from .values import BinaryOp, TIMES, Value, as_value

PairMeta = tuple[tuple[int, int], ...]


def canonical_renumber(table) -> tuple[Table, tuple[int, ...]]:
    """Renumber parent indices into first-occurrence order.

    Returns the canonical table and the permutation applied, as a tuple
    ``perm`` with ``perm[old_index] = new_index`` (use it to reorder a value
    tuple or any per-state metadata).
    """
    rename: dict[int, int] = {}
    for row in table:
        for entry in row:
            if entry not in rename:
                rename[entry] = len(rename)
    new_table = tuple(tuple(rename[e] for e in row) for row in table)
    perm = tuple(rename[i] for i in range(len(rename)))
    return new_table, perm


# ---------------------------------------------------------------------------
# pair product

_LEVEL0_PAIRS: dict[tuple[str, str], tuple[str, PairMeta]] = {
    (DONTCARE, DONTCARE): (DONTCARE, ((0, 0),)),
    (FORK, DONTCARE): (FORK, ((0, 0), (1, 0))),
    (DONTCARE, FORK): (FORK, ((0, 0), (0, 1))),
    (FORK, FORK): (FORK, ((0, 0), (1, 1))),
}


def pair_product(a: Layer, b: Layer) -> tuple[Layer, PairMeta]:
    """Cross product of two layer stacks of equal level.

    Returns the combined top layer and, for each of its states, the operand
    state pair (q, p) it tracks.  Only pairs reachable through component-wise
    transitions are created; output tables come out canonically renumbered
    because indices are assigned in row-major scan order.  Memoized on the
    layer handle pair.
    """
    if a.level != b.level:
        raise LevelMismatch(f"levels {a.level} and {b.level}")
    mgr = a.manager
    key = (a, b)
    hit = mgr.pair_cache.get(key)
    if hit is not None:
        mgr.stats["pair_product_hits"] += 1
        return hit
    mgr.stats["pair_product_misses"] += 1

    if a.is_leaf():
        kind, meta = _LEVEL0_PAIRS[(a.kind, b.kind)]
        result = (mgr.leaf(kind), meta)
    else:
        child, child_meta = pair_product(a.child, b.child)
        index: dict[tuple[int, int], int] = {}
        rows = []
        for c1 in range(child.num_states):
            qa, pa = child_meta[c1]
            row = []
            for c2 in range(child.num_states):
                qb, pb = child_meta[c2]
                pair = (a.table[qa][qb], b.table[pa][pb])
                idx = index.get(pair)
                if idx is None:
                    idx = len(index)
                    index[pair] = idx
                row.append(idx)
            rows.append(tuple(row))
        layer = mgr.intern_layer(child, tuple(rows))
        result = (layer, tuple(index))
    mgr.pair_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# reduction

def top_classes_from_values(values) -> tuple[tuple[int, ...], tuple[Value, ...]]:
    """Merge equal values to classes with leftmost representatives.

    Returns (class index per old state, value per class).
    """
    class_of: list[int] = []
    class_values: list[Value] = []
    index: dict[Value, int] = {}
    for v in values:
        idx = index.get(v)
        if idx is None:
            idx = len(index)
            index[v] = idx
            class_values.append(v)
        class_of.append(idx)
    return tuple(class_of), tuple(class_values)


def reduce_stack(top: Layer, top_classes) -> tuple[Layer, list[tuple[int, ...]]]:
    """Minimize a layer stack given a merge of its top states.

    ``top_classes[q]`` gives the class of top state q; the classes must be
    numbered by leftmost representative (first occurrence).  Two states at a
    lower level merge iff their transition behavior coincides class-wise in
    every row and column.  Returns the new top layer and, per level from 0
    up, the map old state index -> new state index.
    """
    layers = top.stack()
    level = top.level

    # top-down: classes per level, numbered by leftmost occurrence
    class_of: list[tuple[int, ...]] = [()] * (level + 1)
    class_of[level] = tuple(top_classes)
    for i in range(level - 1, -1, -1):
        above = layers[i + 1]
        cls_above = class_of[i + 1]
        table = above.table
        side = layers[i].num_states
        index: dict[tuple, int] = {}
        assigned = []
        for q in range(side):
            sig = (
                tuple(cls_above[table[q][x]] for x in range(side)),
                tuple(cls_above[table[x][q]] for x in range(side)),
            )
            idx = index.get(sig)
            if idx is None:
                idx = len(index)
                index[sig] = idx
            assigned.append(idx)
        class_of[i] = tuple(assigned)

    # bottom-up rebuild with canonical renumbering
    mgr = top.manager
    maps: list[tuple[int, ...]] = []
    n0 = len(set(class_of[0]))
    new_layer = mgr.fork() if n0 == 2 else mgr.dontcare()
    maps.append(class_of[0])
    for i in range(1, level + 1):
        old_table = layers[i].table
        child_map = maps[i - 1]
        reps: list[int] = [-1] * new_layer.num_states
        for old, new in enumerate(child_map):
            if reps[new] < 0:
                reps[new] = old
        raw = tuple(
            tuple(class_of[i][old_table[reps[c1]][reps[c2]]] for c2 in range(new_layer.num_states))
            for c1 in range(new_layer.num_states)
        )
        canon, perm = canonical_renumber(raw)
        new_layer = mgr.intern_layer(new_layer, canon)
        maps.append(tuple(perm[c] for c in class_of[i]))
    return new_layer, maps


def canonical_tidd(top: Layer, raw_values) -> Tidd:
    """Build the canonical minimal diagram for a stack with raw top values."""
    values = tuple(as_value(v) for v in raw_values)
    top_cls, class_values = top_classes_from_values(values)
    new_top, maps = reduce_stack(top, top_cls)
    final_values: list[Value | None] = [None] * new_top.num_states
    top_map = maps[-1]
    for old, new in enumerate(top_map):
        if final_values[new] is None:
            final_values[new] = values[old]
    return Tidd(new_top, tuple(final_values))


def reduce_tidd(f: Tidd) -> Tidd:
    """Re-run reduction on an existing diagram (idempotent on canonical ones)."""
    return canonical_tidd(f.top, f.values)


# ---------------------------------------------------------------------------
# pointwise operations

def apply(op: BinaryOp, f: Tidd, g: Tidd) -> Tidd:
    """Pointwise ``op`` of two same-level diagrams, canonical and minimal."""
    if f.level != g.level:
        raise LevelMismatch(f"levels {f.level} and {g.level}")
    mgr = f.manager
    key = (op.name, f, g)
    hit = mgr.apply_cache.get(key)
    if hit is not None:
        mgr.stats["apply_hits"] += 1
        return hit
    mgr.stats["apply_misses"] += 1
    top, meta = pair_product(f.top, g.top)
    raw_values = [op(f.values[q], g.values[p]) for q, p in meta]
    result = canonical_tidd(top, raw_values)
    mgr.apply_cache[key] = result
    return result


def scalar_multiply(c: Value | int, f: Tidd) -> Tidd:
    """Multiply every value by the scalar c (constant diagram times f)."""
    from .builders import constant

    return apply(TIMES, f, constant(f.manager, f.level, as_value(c)))


def kronecker(a: Tidd, b: Tidd) -> Tidd:
    """Tensor product: the result evaluates on w||w' to a(w) * b(w').

    A union of two deterministic stacks over the same alphabet is not
    deterministic in general, so the combined stack is the pair product (the
    minimal deterministic refinement tracking both operand states).  The new
    top table pairs the a-component of the left child with the b-component of
    the right child; values multiply; reduction finishes.
    """
    if a.level != b.level:
        raise LevelMismatch(f"levels {a.level} and {b.level}")
    mgr = a.manager
    key = (a, b)
    hit = mgr.kron_cache.get(key)
    if hit is not None:
        return hit
    stack_top, meta = pair_product(a.top, b.top)
    index: dict[tuple[int, int], int] = {}
    rows = []
    for c1 in range(stack_top.num_states):
        qa = meta[c1][0]
        row = []
        for c2 in range(stack_top.num_states):
            pb = meta[c2][1]
            pair = (qa, pb)
            idx = index.get(pair)
            if idx is None:
                idx = len(index)
                index[pair] = idx
            row.append(idx)
        rows.append(tuple(row))
    top = mgr.intern_layer(stack_top, tuple(rows))
    raw_values = [a.values[q] * b.values[p] for q, p in index]
    result = canonical_tidd(top, raw_values)
    mgr.kron_cache[key] = result
    return result
