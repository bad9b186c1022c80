"""Shared test helpers: independent brute-force oracles and random graph
generators. Oracles here deliberately avoid the library's elimination code
so they can check it."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from resgraph.graph import DualGraph, Vertex, VertexKind
from resgraph.linalg import SymMatrix


def det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination with row swaps."""
    m = [row[:] for row in rows]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return sign * result


def psd_by_minors(M: SymMatrix) -> bool:
    """Positive semidefiniteness by checking every principal minor >= 0.
    Exponential; only for small oracle checks."""
    n = M.dimension
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            sub = [[M[i, j] for j in idx] for i in idx]
            if det(sub) < 0:
                return False
    return True


def pd_by_leading_minors(M: SymMatrix) -> bool:
    """Positive definiteness via leading principal minors (Sylvester)."""
    n = M.dimension
    for size in range(1, n + 1):
        sub = [[M[i, j] for j in range(size)] for i in range(size)]
        if det(sub) <= 0:
            return False
    return True


def negated(M: SymMatrix) -> SymMatrix:
    return SymMatrix([[-M[i, j] for j in range(M.dimension)] for i in range(M.dimension)])


def random_tree_graph(
    rng: random.Random,
    size: int,
    weights=(-2, -3, -4, -5),
    name: str = "random",
) -> DualGraph:
    """A random tree of complete exceptional curves with random weights."""
    ids = [f"n{i}" for i in range(size)]
    vertices = [Vertex(vid, VertexKind.EXCEPTIONAL, rng.choice(weights)) for vid in ids]
    edges = []
    for i in range(1, size):
        edges.append((ids[rng.randrange(i)], ids[i]))
    return DualGraph(name, vertices, edges)


def attach_chain(g: DualGraph, anchor: str, length: int, prefix: str = "c") -> DualGraph:
    """Attach a terminal (-2)-chain to a vertex; chain ids prefix0..prefixN
    run from the free end toward the anchor."""
    ids = [f"{prefix}{i}" for i in range(length)]
    vertices = list(g.vertices) + [Vertex(vid, VertexKind.EXCEPTIONAL, -2) for vid in ids]
    edges = dict(g.edges())
    chain_edges = list(zip(ids, ids[1:])) + [(ids[-1], anchor)]
    for a, b in chain_edges:
        key = (a, b) if a <= b else (b, a)
        edges[key] = edges.get(key, 0) + 1
    return DualGraph(g.name, vertices, edges)


def attach_fork_tail(
    g: DualGraph, anchor: str, chain_length: int, prefix: str = "f"
) -> DualGraph:
    """Attach a D-shaped (-2)-tail: two legs on a fork, then a chain of the
    given length down to the anchor."""
    legs = [f"{prefix}l1", f"{prefix}l2"]
    fork = f"{prefix}k"
    chain = [f"{prefix}m{i}" for i in range(chain_length)]
    new_ids = legs + [fork] + chain
    vertices = list(g.vertices) + [
        Vertex(vid, VertexKind.EXCEPTIONAL, -2) for vid in new_ids
    ]
    path = [fork] + chain + [anchor]
    edges = dict(g.edges())
    for a, b in [(legs[0], fork), (legs[1], fork)] + list(zip(path, path[1:])):
        key = (a, b) if a <= b else (b, a)
        edges[key] = edges.get(key, 0) + 1
    return DualGraph(g.name, vertices, edges)
