"""Blow-down calculus and classification of curve configurations.

A configuration of complete curves contracts to a point exactly when its
intersection form is negative definite; repeatedly contracting (-1)-curves
then exposes what the target is (a smooth point, a rational double point, or
some other rational point). A corank-one negative semidefinite form with a
strictly positive kernel vector is the signature of a fiber of a rational
curve fibration, confirmed by the blow-down sequence ending in a single
self-intersection-zero curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .graph import Cycle, DualGraph, Vertex
from .linalg import Definiteness, definiteness


class ContractionError(Exception):
    pass


class NotMinusOne(ContractionError):
    pass


class NotComplete(ContractionError):
    pass


class NoCompleteVertices(ContractionError):
    pass


class DisconnectedGraph(ContractionError):
    pass


@dataclass(frozen=True)
class ADEType:
    """A rational-double-point type: family A (n>=1), D (n>=4) or E (6,7,8)."""

    family: str
    rank: int

    def __post_init__(self):
        ok = (
            (self.family == "A" and self.rank >= 1)
            or (self.family == "D" and self.rank >= 4)
            or (self.family == "E" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise ValueError(f"no type {self.family}{self.rank}")

    def render(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.render()


class ContractionOutcome:
    """Base class; concrete outcomes below."""

    def render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class SmoothPoint(ContractionOutcome):
    def render(self) -> str:
        return "SmoothPoint"


@dataclass(frozen=True)
class DuValPoint(ContractionOutcome):
    ade: ADEType

    def render(self) -> str:
        return f"DuValPoint({self.ade.render()})"


@dataclass(frozen=True)
class RationalPoint(ContractionOutcome):
    residual: DualGraph

    def render(self) -> str:
        return "RationalPoint"


@dataclass(frozen=True)
class CurveFiber(ContractionOutcome):
    fiber: Cycle

    def render(self) -> str:
        return "CurveFiber"


@dataclass(frozen=True)
class NotContractible(ContractionOutcome):
    reason: str

    def render(self) -> str:
        return "NotContractible"


def blow_down_once(g: DualGraph, vid: str) -> DualGraph:
    """Contract one complete (-1)-curve.

    Each neighbor with edge multiplicity m gains m^2 on its
    self-intersection (transversal neighbors have none to gain), and every
    pair of neighbors with multiplicities m_a, m_b gains an edge of
    multiplicity m_a * m_b.
    """
    v = g.vertex(vid)
    if not v.complete:
        raise NotComplete(f"{vid!r} is transversal")
    if v.self_int != -1:
        raise NotMinusOne(f"{vid!r} has self-intersection {v.self_int}, not -1")

    incident = list(g.neighbors(vid))
    bumps = {other: mult * mult for other, mult in incident}
    vertices = []
    for w in g.vertices:
        if w.id == vid:
            continue
        if w.id in bumps and w.complete:
            vertices.append(Vertex(w.id, w.kind, w.self_int + bumps[w.id], w.label))
        else:
            vertices.append(w)
    edges = {pair: mult for pair, mult in g.edges().items() if vid not in pair}
    for i in range(len(incident)):
        a, ma = incident[i]
        for j in range(i + 1, len(incident)):
            b, mb = incident[j]
            key = (a, b) if a <= b else (b, a)
            edges[key] = edges.get(key, 0) + ma * mb
    return DualGraph(g.name, vertices, edges)


def contract_minus_ones(
    g: DualGraph, choose: Callable[[list[str]], str] = min
) -> DualGraph:
    """Contract complete (-1)-curves until none remain. ``choose`` picks the
    next one from the sorted candidate list; the default (smallest id) makes
    reports reproducible, and classification is order-independent."""
    current = g
    while True:
        candidates = sorted(
            v.id for v in current.vertices if v.complete and v.self_int == -1
        )
        if not candidates:
            return current
        current = blow_down_once(current, choose(candidates))


def recognize_duval(g: DualGraph, subset: list[str] | None = None) -> ADEType | None:
    """Match a configuration against the rational-double-point shapes.

    Requires a connected graph of complete curves, all of self-intersection
    -2, with simple edges and no cycles; a plain chain is A_n, a chain with a
    fork one step from an end is D_n, and the three exceptional fork shapes
    are E_6, E_7, E_8. Returns None otherwise (total, never raises on a
    well-formed subset).
    """
    ids = list(g.complete_ids() if subset is None else subset)
    if not ids:
        return None
    idset = set(ids)
    for vid in ids:
        v = g.vertex(vid)
        if not v.complete or v.self_int != -2:
            return None
    if len(g.components(ids)) != 1:
        return None
    edge_count = 0
    degree = {vid: 0 for vid in ids}
    for (a, b), mult in g.edges().items():
        if a in idset and b in idset:
            if mult != 1:
                return None
            edge_count += 1
            degree[a] += 1
            degree[b] += 1
    if edge_count != len(ids) - 1:
        return None  # a cycle of curves is not a rational double point
    forks = [vid for vid in ids if degree[vid] >= 3]
    if not forks:
        return ADEType("A", len(ids))
    if len(forks) > 1 or degree[forks[0]] > 3:
        return None
    fork = forks[0]
    lengths = []
    for start, _ in g.neighbors(fork):
        if start not in idset:
            continue
        length = 0
        prev, cur = fork, start
        while True:
            length += 1
            nexts = [w for w, _ in g.neighbors(cur) if w in idset and w != prev]
            if not nexts:
                break
            prev, cur = cur, nexts[0]
        lengths.append(length)
    lengths.sort()
    if lengths[:2] == [1, 1]:
        return ADEType("D", lengths[2] + 3)
    if lengths == [1, 2, 2]:
        return ADEType("E", 6)
    if lengths == [1, 2, 3]:
        return ADEType("E", 7)
    if lengths == [1, 2, 4]:
        return ADEType("E", 8)
    return None


def complete_definiteness(g: DualGraph) -> Definiteness:
    """Definiteness of the intersection form on all complete vertices."""
    matrix, _ = g.intersection_matrix()
    return definiteness(matrix)


def classify(
    g: DualGraph, choose: Callable[[list[str]], str] = min
) -> ContractionOutcome:
    """Decide what the configuration of complete curves contracts to.

    Negative definite: contract every (-1)-curve; an empty residual is a
    smooth point, an ADE residual a rational double point, anything else some
    other rational point (returned with the residual graph). Corank-one
    negative semidefinite with a strictly positive primitive kernel whose
    blow-down ends in a single self-intersection-zero curve: a fiber of a
    rational curve fibration, returned with the kernel cycle. Everything
    else: not contractible, with the failed criterion named.
    """
    complete = g.complete_ids()
    if not complete:
        raise NoCompleteVertices("no complete vertices to contract")
    if len(g.components(complete)) > 1:
        raise DisconnectedGraph(
            "complete part is disconnected; classify components separately"
        )
    matrix, order = g.intersection_matrix()
    defres = definiteness(matrix)

    if defres.is_negative_definite:
        residual = contract_minus_ones(g, choose)
        rest = residual.complete_ids()
        if not rest:
            return SmoothPoint()
        ade = recognize_duval(residual, rest)
        if ade is not None:
            return DuValPoint(ade)
        return RationalPoint(residual)

    if defres.is_negative_semidefinite and defres.corank == 1:
        kernel = defres.kernel[0]
        if any(c <= 0 for c in kernel):
            return NotContractible("semidefinite kernel is not strictly positive")
        residual = contract_minus_ones(g, choose)
        rest = residual.complete_ids()
        if len(rest) == 1 and residual.vertex(rest[0]).self_int == 0:
            fiber = Cycle({vid: Fraction(c) for vid, c in zip(order, kernel)})
            return CurveFiber(fiber)
        return NotContractible(
            "semidefinite with positive kernel but blow-down does not end in a zero-curve"
        )

    if defres.is_negative_semidefinite:
        return NotContractible(f"intersection form has corank {defres.corank}")
    return NotContractible("intersection form is indefinite")


def classify_components(
    g: DualGraph, choose: Callable[[list[str]], str] = min
) -> dict[str, ContractionOutcome]:
    """Classify each connected component of the complete part separately;
    keys are the smallest vertex id of each component."""
    complete = g.complete_ids()
    if not complete:
        raise NoCompleteVertices("no complete vertices to contract")
    outcomes: dict[str, ContractionOutcome] = {}
    for comp in g.components(complete):
        keep = comp | {
            v.id for v in g.vertices if not v.complete and _touches(g, v.id, comp)
        }
        sub = _induced(g, keep)
        outcomes[min(comp)] = classify(sub, choose)
    return outcomes


def _touches(g: DualGraph, vid: str, comp: set[str]) -> bool:
    return any(w in comp for w, _ in g.neighbors(vid))


def _induced(g: DualGraph, keep: set[str]) -> DualGraph:
    vertices = [v for v in g.vertices if v.id in keep]
    edges = {
        pair: mult for pair, mult in g.edges().items() if pair[0] in keep and pair[1] in keep
    }
    return DualGraph(g.name, vertices, edges)
