"""Core data model: interned state layers, diagrams, evaluation, validation.

A diagram is a leveled deterministic bottom-up tree automaton over perfect
binary assignment trees.  Each level is one Layer object holding the total
transition table from pairs of child states to parent states; the diagram's
top layer carries a duplicate-free value tuple, one value per final state.

Layers are hash-consed: a manager interns every layer, so structurally equal
layers are the *same* object and semantic equality of whole diagrams reduces
to a handle comparison plus a value-tuple comparison.

Concurrency: layers and diagrams are immutable and freely shareable between
threads for reading.  The interning and memo tables live on the manager and
are not synchronized; mutating operations on one manager must be externally
serialized.  One manager per process is the default.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    AssignmentLengthMismatch,
    CanonicalOrderViolation,
)
from .values import Value

FORK = "fork"
DONTCARE = "dontcare"

Table = tuple[tuple[int, ...], ...]


class Layer:
    """One interned state layer.

    Level 0 is a Fork (two states: symbol 0 -> state 0, symbol 1 -> state 1)
    or a DontCare (one state reached on either symbol).  A layer at level >= 1
    references its child layer plus a square transition table ``table[a][b]``
    mapping child-state pairs to parent states, stored row-major in
    first-occurrence canonical order.
    """

    __slots__ = ("manager", "level", "kind", "child", "table", "num_states")

    def __init__(self, manager, level, kind, child, table, num_states):
        self.manager = manager
        self.level = level
        self.kind = kind            # FORK / DONTCARE at level 0, else None
        self.child = child          # Layer or None
        self.table = table          # Table or None
        self.num_states = num_states

    def is_leaf(self) -> bool:
        return self.level == 0

    def stack(self) -> list[Layer]:
        """Layers from level 0 up to this one."""
        out = []
        layer = self
        while layer is not None:
            out.append(layer)
            layer = layer.child
        out.reverse()
        return out

    def __repr__(self) -> str:
        if self.is_leaf():
            return f"<Layer L0 {self.kind}>"
        return f"<Layer L{self.level} states={self.num_states}>"


def check_canonical_order(table: Table) -> int:
    """Verify first-occurrence order; return the parent-state count.

    Scanning row-major, the first time each parent index appears the indices
    must read 0, 1, 2, ... with no gaps.
    """
    next_new = 0
    for row in table:
        for entry in row:
            if entry == next_new:
                next_new += 1
            elif not 0 <= entry < next_new:
                raise CanonicalOrderViolation(
                    f"parent index {entry} appears before index {next_new}"
                )
    if next_new == 0:
        raise CanonicalOrderViolation("empty transition table")
    return next_new


class Manager:
    """Owner of the interning table and all operation caches."""

    def __init__(self) -> None:
        self._layers: dict[object, Layer] = {}
        self._fork = self._make_leaf(FORK, 2)
        self._dontcare = self._make_leaf(DONTCARE, 1)
        self.pair_cache: dict = {}
        self.apply_cache: dict = {}
        self.kron_cache: dict = {}
        self.matmul_stack_cache: dict = {}
        self.matmul_cache: dict = {}
        self.triple_sums: dict = {}
        self.path_count_cache: dict = {}
        self.stats = {
            "pair_product_hits": 0,
            "pair_product_misses": 0,
            "apply_hits": 0,
            "apply_misses": 0,
            "matmul_hits": 0,
            "matmul_misses": 0,
        }

    def _make_leaf(self, kind: str, num_states: int) -> Layer:
        layer = Layer(self, 0, kind, None, None, num_states)
        self._layers[("leaf", kind)] = layer
        return layer

    def fork(self) -> Layer:
        return self._fork

    def dontcare(self) -> Layer:
        return self._dontcare

    def leaf(self, kind: str) -> Layer:
        if kind == FORK:
            return self._fork
        if kind == DONTCARE:
            return self._dontcare
        raise ValueError(f"unknown level-0 kind {kind!r}")

    def intern_layer(self, child: Layer, table) -> Layer:
        """Intern a level >= 1 layer over an already-interned child.

        The table must be total, square with side child.num_states, and in
        first-occurrence canonical order; non-canonical tables are rejected,
        not repaired (canonical_renumber is the single repair point).
        """
        table = tuple(tuple(row) for row in table)
        if len(table) != child.num_states or any(
            len(row) != child.num_states for row in table
        ):
            raise ArityMismatch(
                f"table side {len(table)} != child state count {child.num_states}"
            )
        key = (child, table)
        hit = self._layers.get(key)
        if hit is not None:
            return hit
        num_states = check_canonical_order(table)
        layer = Layer(self, child.level + 1, None, child, table, num_states)
        self._layers[key] = layer
        return layer

    def layer_count(self) -> int:
        return len(self._layers)


@dataclass(frozen=True, eq=False)
class Tidd:
    """A complete diagram: top layer plus a duplicate-free value tuple."""

    top: Layer
    values: tuple[Value, ...]

    @property
    def level(self) -> int:
        return self.top.level

    @property
    def num_vars(self) -> int:
        return 1 << self.top.level

    @property
    def manager(self) -> Manager:
        return self.top.manager

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tidd):
            return NotImplemented
        return self.top is other.top and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.top), self.values))

    def __repr__(self) -> str:
        return f"<Tidd level={self.level} states={self.top.num_states}>"


def equal(f: Tidd, g: Tidd) -> bool:
    """Semantic equality of same-level diagrams (canonicity makes it a handle check)."""
    return f == g


def evaluate(f: Tidd, assignment) -> Value:
    """Run the automaton on one assignment and return the reached value.

    The assignment is a sequence of 2**level bits; the perfect-binary-tree
    shape is implicit (internal tree symbols are never materialized).
    """
    bits = tuple(int(b) for b in assignment)
    if len(bits) != 1 << f.level:
        raise AssignmentLengthMismatch(
            f"expected {1 << f.level} bits, got {len(bits)}"
        )
    layers = f.top.stack()
    leaf = layers[0]
    if leaf.kind == FORK:
        states = list(bits)
    else:
        states = [0] * len(bits)
    for layer in layers[1:]:
        table = layer.table
        states = [
            table[states[j]][states[j + 1]] for j in range(0, len(states), 2)
        ]
    return f.values[states[0]]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    constraint: str | None = None
    location: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(constraint: str, location: str, detail: str) -> ValidationReport:
    return ValidationReport(False, constraint, location, detail)


def validate(f: Tidd) -> ValidationReport:
    """Check every structural constraint; report the first violation found.

    Violations are report contents, not exceptions.  Checks, per layer:
    totality, arity, first-occurrence canonical order, state-count agreement,
    and pairwise distinguishability of child states through the parent table
    (rows or columns must differ).  At the top, the value tuple must be
    duplicate-free and match the state count; top states are distinguished by
    their values.
    """
    layers = f.top.stack()
    leaf = layers[0]
    if leaf.kind == FORK and leaf.num_states != 2:
        return _fail("2(ii) level-0 kind", "level 0", "Fork must have 2 states")
    if leaf.kind == DONTCARE and leaf.num_states != 1:
        return _fail("2(ii) level-0 kind", "level 0", "DontCare must have 1 state")

    for layer in layers[1:]:
        loc = f"level {layer.level}"
        table = layer.table
        side = layer.child.num_states
        if len(table) != side or any(len(row) != side for row in table):
            return _fail("arity", loc, "table side != child state count")
        for row in table:
            for entry in row:
                if not 0 <= entry < layer.num_states:
                    return _fail("totality", loc, f"entry {entry} out of range")
        try:
            count = check_canonical_order(table)
        except CanonicalOrderViolation as exc:
            return _fail("2(iii) canonical order", loc, str(exc))
        if count != layer.num_states:
            return _fail(
                "state count", loc,
                f"distinct entries {count} != recorded {layer.num_states}",
            )
        # constraint 2(v): any two child states must differ in some row or column
        for j in range(side):
            for k in range(j + 1, side):
                if table[j] == table[k] and all(
                    table[q][j] == table[q][k] for q in range(side)
                ):
                    return _fail(
                        "2(v) distinguishability", loc,
                        f"child states {j} and {k} are indistinguishable",
                    )

    if len(f.values) != f.top.num_states:
        return _fail(
            "value tuple", "values",
            f"{len(f.values)} values for {f.top.num_states} top states",
        )
    seen: set[Value] = set()
    for j, v in enumerate(f.values):
        if not isinstance(v, Value):
            return _fail("value tuple", "values", f"entry {j} is not a ring value")
        if v in seen:
            return _fail(
                "2(iv) value bijection", "values", f"duplicate value at index {j}"
            )
        seen.add(v)
    return ValidationReport(True)


@dataclass(frozen=True)
class SizeReport:
    """Size under the fixed counting convention.

    One node per layer.  Each layer contributes the entries of its distinct
    table rows (a row repeated within one table is counted once); a Fork
    level-0 node contributes 2 entries and a DontCare 1.
    """

    nodes: int
    edges: int
    total: int


def size_metrics(f: Tidd) -> SizeReport:
    nodes = f.level + 1
    edges = 0
    for layer in f.top.stack():
        if layer.is_leaf():
            edges += 2 if layer.kind == FORK else 1
        else:
            edges += sum(len(row) for row in set(layer.table))
    return SizeReport(nodes, edges, nodes + edges)


def total_states(f: Tidd) -> int:
    """Total automaton states summed over all layers."""
    return sum(layer.num_states for layer in f.top.stack())


def state_counts(f: Tidd) -> tuple[int, ...]:
    """Per-level state counts, level 0 first."""
    return tuple(layer.num_states for layer in f.top.stack())


def dump(f: Tidd) -> str:
    """Deterministic textual dump, one line per layer from level 0 up.

    Format: ``L<level> kind=<Fork|DontCare|Internal> states=<n>
    table=<row-major integer list>`` and a final line ``V=`` with values as
    comma-separated a,b,k triples.  Used for golden tests.
    """
    lines = []
    for layer in f.top.stack():
        if layer.is_leaf():
            kind = "Fork" if layer.kind == FORK else "DontCare"
            flat = ""
        else:
            kind = "Internal"
            flat = ",".join(str(e) for row in layer.table for e in row)
        lines.append(
            f"L{layer.level} kind={kind} states={layer.num_states} table=[{flat}]"
        )
    lines.append("V=" + " ".join(str(v) for v in f.values))
    return "\n".join(lines)
