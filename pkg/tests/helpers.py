"""Shared test utilities: independent dense linear algebra and generators.

The dense gate/statevector machinery here is deliberately separate from the
package's own tensor pipeline: grids are plain lists of ring values built by
textbook Kronecker products, so circuit tests check the diagram path against
an implementation that shares nothing but the scalar type.
"""

from random import Random

from tidd import Value, as_value
from tidd.values import SQRT2_HALF

S = SQRT2_HALF
V0 = Value(0, 0)
V1 = Value(1, 0)

GRID_2X2 = {
    "h": [[S, S], [S, -S]],
    "x": [[V0, V1], [V1, V0]],
    "z": [[V1, V0], [V0, -V1]],
    "i": [[V1, V0], [V0, V1]],
    "p0": [[V1, V0], [V0, V0]],
    "p1": [[V0, V0], [V0, V1]],
}


def grid_kron(a, b):
    out = []
    for row_a in a:
        for row_b in b:
            out.append([x * y for x in row_a for y in row_b])
    return out


def grid_matmul(a, b):
    side = len(a)
    return [
        [
            sum((a[r][k] * b[k][c] for k in range(side)), V0)
            for c in range(side)
        ]
        for r in range(side)
    ]


def grid_matvec(a, v):
    side = len(a)
    return [sum((a[r][k] * v[k] for k in range(side)), V0) for r in range(side)]


def grid_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def dense_gate_grid(kind, targets, n):
    """Textbook n-qubit gate matrix as a 2**n x 2**n grid of ring values."""
    def chain(factors):
        grid = factors[0]
        for f in factors[1:]:
            grid = grid_kron(grid, f)
        return grid

    identity = GRID_2X2["i"]
    if kind in ("h", "x", "z", "i"):
        (t,) = targets
        return chain([GRID_2X2[kind] if q == t else identity for q in range(n)])
    control, target = targets
    flip = GRID_2X2["x"] if kind == "cnot" else GRID_2X2["z"]
    branch0 = chain(
        [GRID_2X2["p0"] if q == control else identity for q in range(n)]
    )
    branch1 = chain(
        [
            GRID_2X2["p1"] if q == control else (flip if q == target else identity)
            for q in range(n)
        ]
    )
    return grid_add(branch0, branch1)


def simulate_dense(gates, n, start_bits=None):
    """Run a gate list on a dense statevector of ring values."""
    if start_bits is None:
        start_bits = (0,) * n
    index = 0
    for b in start_bits:
        index = (index << 1) | int(b)
    vec = [V0] * (1 << n)
    vec[index] = V1
    for g in gates:
        vec = grid_matvec(dense_gate_grid(g.kind, g.targets, g.qubits), vec)
    return vec


def bits_of(index, width):
    return tuple((index >> (width - 1 - j)) & 1 for j in range(width))


def random_truth_table(rng: Random, level: int, values=(0, 1, 2, -1)):
    return [as_value(rng.choice(values)) for _ in range(1 << (1 << level))]


def random_raw_table(rng: Random, side: int, parents: int):
    """A total, surjective (not necessarily canonical) transition table."""
    cells = side * side
    entries = list(range(parents))
    entries += [rng.randrange(parents) for _ in range(cells - parents)]
    rng.shuffle(entries)
    return tuple(
        tuple(entries[r * side + c] for c in range(side)) for r in range(side)
    )


def tv_distance(histogram, exact_probs, shots):
    """Total-variation distance between empirical and exact distributions."""
    keys = set(histogram) | set(exact_probs)
    return 0.5 * sum(
        abs(histogram.get(k, 0) / shots - exact_probs.get(k, 0.0)) for k in keys
    )
