"""Codiscrepancies, fundamental cycles, numerical pullbacks and the
rejection arithmetic built on them.

The codiscrepancy divisor of a resolution of a rational surface singularity
is the unique rational combination Theta of exceptional curves with
mu* K = K + Theta; its coefficients solve the linear system

    sum_i theta_i (E_i . E_j) = 2 + E_j^2        for every exceptional j.

Everything here is exact; a solved system either reproduces a printed value
bit-for-bit or the configuration is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graph import Cycle, DualGraph, VertexKind, arithmetic_genus, cycle_dot
from .linalg import definiteness, rational, solve


class DiscrepancyError(Exception):
    pass


class SingularConfiguration(DiscrepancyError):
    """The intersection form on the chosen subset is not invertible."""


class NotNegativeDefinite(DiscrepancyError):
    pass


class NotAChain(DiscrepancyError):
    pass


class UnsupportedTail(DiscrepancyError):
    pass


@dataclass
class CodiscrepancyResult:
    """Solved codiscrepancies plus the two flags every filter needs."""

    values: dict[str, Fraction]
    all_nonnegative: bool
    max_denominator: int

    @classmethod
    def from_values(cls, values: Mapping[str, Fraction]) -> "CodiscrepancyResult":
        vals = dict(values)
        return cls(
            values=vals,
            all_nonnegative=all(v >= 0 for v in vals.values()),
            max_denominator=max((v.denominator for v in vals.values()), default=1),
        )


def _default_subset(g: DualGraph, include_central: bool) -> list[str]:
    ids = g.exceptional_ids()
    if include_central:
        ids = [v.id for v in g.vertices if v.complete and (
            v.kind is VertexKind.EXCEPTIONAL or v.kind is VertexKind.CENTRAL)]
    return ids


def codiscrepancies(
    g: DualGraph,
    subset: Sequence[str] | None = None,
    include_central: bool = False,
) -> CodiscrepancyResult:
    """Solve the codiscrepancy system on a subset of complete vertices.

    The default subset is every exceptional vertex; central curves are left
    out unless ``include_central`` is set, and transversal germs never enter
    the system. Only edges inside the subset count.
    """
    ids = list(subset) if subset is not None else _default_subset(g, include_central)
    if not ids:
        return CodiscrepancyResult.from_values({})
    matrix, order = g.intersection_matrix(ids)
    rhs = [Fraction(2) + g.vertex(vid).self_int for vid in order]
    try:
        theta = solve(matrix, rhs)
    except Exception as exc:
        raise SingularConfiguration(str(exc)) from exc
    return CodiscrepancyResult.from_values(dict(zip(order, theta)))


def pinned_codiscrepancies(
    g: DualGraph,
    pinned: Mapping[str, Fraction],
    subset: Sequence[str] | None = None,
) -> CodiscrepancyResult:
    """Solve for the subset vertices *not* pinned, imposing the equations at
    those unknowns only and substituting the pinned values as constants.

    This is the computation that propagates externally known codiscrepancies
    (e.g. coefficients read off a weighted blowup) through the rest of a
    graph; the equations at the pinned vertices themselves are not imposed.
    """
    pins = {k: rational(v) for k, v in pinned.items()}
    ids = list(subset) if subset is not None else g.exceptional_ids()
    for p in pins:
        g.vertex(p)
    unknowns = [vid for vid in ids if vid not in pins]
    if not unknowns:
        return CodiscrepancyResult.from_values(pins)
    matrix, order = g.intersection_matrix(unknowns)
    rhs = []
    for vid in order:
        c = Fraction(2) + g.vertex(vid).self_int
        for other, mult in g.neighbors(vid):
            if other in pins:
                c -= mult * pins[other]
        rhs.append(c)
    try:
        theta = solve(matrix, rhs)
    except Exception as exc:
        raise SingularConfiguration(str(exc)) from exc
    values = dict(pins)
    values.update(zip(order, theta))
    return CodiscrepancyResult.from_values(values)


def pinned_consistent(
    g: DualGraph,
    pinned: Mapping[str, Fraction],
    subset: Sequence[str] | None = None,
) -> bool:
    """Whether the free solve agrees exactly with every pinned value.

    Because the free solution is unique once the form is invertible, this is
    equivalent to consistency of the overdetermined pinned system.
    """
    free = codiscrepancies(g, subset)
    return all(free.values.get(k) == rational(v) for k, v in pinned.items())


def implied_tail_start(
    g: DualGraph,
    root: str,
    pinned: Mapping[str, Fraction],
    subset: Sequence[str] | None = None,
) -> Fraction:
    """The rejection value for a configuration with a pinned root carrying a
    single attached tail of unknown curves.

    The components of the subset minus the root that contain no pinned vertex
    form the tail; there must be exactly one, attached by one simple edge.
    All other values are propagated from the pins, the root's own equation
    then dictates the codiscrepancy the tail vertex next to the root must
    have, and the chain rule for terminal (-2)-tails (consecutive values
    differ by the first one; constant past a fork) turns that into the value
    the far end of the tail must start with:

        pinned(root) - (a * pinned(root) - (a - 2) - sum of other neighbors)

    with a the minus self-intersection of the root. A negative result means
    no effective codiscrepancy divisor exists, so the configuration cannot be
    the minimal resolution the pinned data describes.
    """
    pins = {k: rational(v) for k, v in pinned.items()}
    if root not in pins:
        raise UnsupportedTail(f"root {root!r} must carry a pinned value")
    ids = list(subset) if subset is not None else g.exceptional_ids()
    idset = set(ids)
    if root not in idset:
        raise UnsupportedTail(f"root {root!r} is not in the subset")
    comps = g.components(idset - {root})
    tails = [c for c in comps if not (c & pins.keys())]
    if len(tails) != 1:
        raise UnsupportedTail(f"expected exactly one unpinned tail, found {len(tails)}")
    tail = tails[0]
    attach = [(w, m) for w, m in g.neighbors(root) if w in tail]
    if len(attach) != 1 or attach[0][1] != 1:
        raise UnsupportedTail("tail must attach to the root by a single simple edge")

    known_side = [vid for vid in ids if vid not in tail]
    for vid in known_side:
        if vid in pins or vid == root:
            continue
        if any(w in tail for w, _ in g.neighbors(vid)):
            raise UnsupportedTail(f"vertex {vid!r} outside the tail touches it")
    propagated = pinned_codiscrepancies(g, pins, known_side)

    a = -g.vertex(root).self_int
    other_sum = Fraction(0)
    for w, mult in g.neighbors(root):
        if w in tail or w == root:
            continue
        if w in propagated.values:
            other_sum += mult * propagated.values[w]
        # neighbors outside the system (central, transversal) do not enter
    required_next = a * pins[root] - (a - 2) - other_sum
    return pins[root] - required_next


def chain_codiscrepancy_check(
    g: DualGraph, result: CodiscrepancyResult, chain: Sequence[str]
) -> bool:
    """Check the arithmetic-progression rule on a terminal (-2)-chain.

    ``chain`` lists the vertices from the free end inward; every vertex
    except possibly the last must be a (-2)-curve, the first must have no
    other neighbor inside the solved set, and consecutive entries must be
    joined by simple edges. True exactly when value(chain[k]) equals
    (k+1) * value(chain[0]) for all k, the last entry included.
    """
    ids = list(chain)
    if not ids:
        raise NotAChain("empty chain")
    solved = set(result.values)
    for vid in ids:
        if vid not in solved:
            raise NotAChain(f"{vid!r} has no solved codiscrepancy")
    for vid in ids[:-1]:
        if g.vertex(vid).self_int != -2:
            raise NotAChain(f"{vid!r} is not a (-2)-curve")
    for prev, cur in zip(ids, ids[1:]):
        if g.multiplicity(prev, cur) != 1:
            raise NotAChain(f"{prev!r} and {cur!r} are not joined by a simple edge")
    # the free end has one solved neighbor: the next chain vertex, or the
    # attachment itself when the chain has length one
    first_nbrs = [w for w, _ in g.neighbors(ids[0]) if w in solved]
    if len(ids) > 1 and first_nbrs != [ids[1]]:
        raise NotAChain(f"{ids[0]!r} is not a terminal chain end")
    if len(ids) == 1 and len(first_nbrs) > 1:
        raise NotAChain(f"{ids[0]!r} is not a terminal chain end")
    for mid_index in range(1, len(ids) - 1):
        vid = ids[mid_index]
        inside = [w for w, _ in g.neighbors(vid) if w in solved]
        if sorted(inside) != sorted([ids[mid_index - 1], ids[mid_index + 1]]):
            raise NotAChain(f"{vid!r} has neighbors off the chain")
    start = result.values[ids[0]]
    return all(result.values[vid] == (k + 1) * start for k, vid in enumerate(ids))


def fork_codiscrepancy_check(
    g: DualGraph,
    result: CodiscrepancyResult,
    legs: Sequence[str],
    fork: str,
    chain: Sequence[str] = (),
) -> bool:
    """Check the rule for a terminal D-shaped (-2)-tail: the two legs carry
    equal values, each half the fork's, and the chain continuing from the
    fork stays constant at the fork's value."""
    if len(legs) != 2:
        raise NotAChain("a D-shaped tail has exactly two legs")
    for vid in (*legs, fork, *chain):
        if vid not in result.values:
            raise NotAChain(f"{vid!r} has no solved codiscrepancy")
    for leg in legs:
        if g.vertex(leg).self_int != -2 or g.multiplicity(leg, fork) != 1:
            raise NotAChain(f"{leg!r} is not a simple (-2)-leg of {fork!r}")
    f = result.values[fork]
    if not all(result.values[leg] * 2 == f for leg in legs):
        return False
    return all(result.values[vid] == f for vid in chain)


def denominator_filter(result: CodiscrepancyResult, index: int) -> bool:
    """True when every value's reduced denominator divides the index."""
    if index <= 0:
        raise ValueError("index must be positive")
    return all(index % v.denominator == 0 for v in result.values.values())


def fundamental_cycle(
    g: DualGraph, subset: Sequence[str] | None = None
) -> tuple[Cycle, Fraction]:
    """Artin's fundamental cycle of a connected negative-definite
    configuration, with its arithmetic genus.

    Start from the sum of the curves and add any curve that still meets the
    cycle positively (smallest id first) until Z . E_j <= 0 everywhere. The
    contracted point is a rational singularity exactly when p_a(Z) = 0.
    """
    ids = sorted(set(g.exceptional_ids() if subset is None else subset))
    if not ids:
        raise DiscrepancyError("empty subset")
    if len(g.components(ids)) != 1:
        raise DiscrepancyError("fundamental cycle needs a connected configuration")
    matrix, _ = g.intersection_matrix(ids)
    if not definiteness(matrix).is_negative_definite:
        raise NotNegativeDefinite("configuration is not negative definite")
    coeffs = {vid: Fraction(1) for vid in ids}
    idset = set(ids)
    while True:
        z = Cycle(coeffs)
        bump = None
        for vid in ids:
            if cycle_dot_restricted(g, z, vid, idset) > 0:
                bump = vid
                break
        if bump is None:
            break
        coeffs[bump] += 1
    z = Cycle(coeffs)
    zz = sum(
        (coeffs[vid] * cycle_dot_restricted(g, z, vid, idset) for vid in ids),
        Fraction(0),
    )
    zk = sum(
        (coeffs[vid] * (-2 - g.vertex(vid).self_int) for vid in ids), Fraction(0)
    )
    return z, 1 + (zz + zk) / 2


def cycle_dot_restricted(g: DualGraph, z: Cycle, vid: str, idset: set[str]) -> Fraction:
    """Z . E_vid counting only edges inside idset."""
    total = z.coeff(vid) * g.vertex(vid).self_int
    for other, mult in g.neighbors(vid):
        if other in idset:
            total += mult * z.coeff(other)
    return total


def all_components_rational(g: DualGraph, subset: Sequence[str] | None = None) -> bool:
    """Whether every connected component of the (default: exceptional)
    configuration has fundamental cycle of arithmetic genus zero."""
    ids = list(g.exceptional_ids() if subset is None else subset)
    if not ids:
        return True
    for comp in g.components(ids):
        _, pa = fundamental_cycle(g, sorted(comp))
        if pa != 0:
            return False
    return True


def mumford_pullback(
    g: DualGraph, attached: Cycle, subset: Sequence[str] | None = None
) -> Cycle:
    """Exceptional multiplicities of the numerical pullback.

    Given a cycle supported off the subset, find the unique coefficients m on
    the subset with (attached + sum m_i E_i) . E_j = 0 for every j in the
    subset. The subset defaults to every complete vertex.
    """
    ids = list(g.complete_ids() if subset is None else subset)
    for vid in ids:
        if attached.coeff(vid) != 0:
            raise DiscrepancyError(f"attached cycle meets the subset at {vid!r}")
    if not ids:
        return Cycle({})
    matrix, order = g.intersection_matrix(ids)
    rhs = [-cycle_dot(g, attached, vid) for vid in order]
    try:
        m = solve(matrix, rhs)
    except Exception as exc:
        raise SingularConfiguration(str(exc)) from exc
    return Cycle(dict(zip(order, m)))


def numerically_trivial(g: DualGraph, z: Cycle) -> bool:
    """True when the cycle pairs to zero with every complete vertex."""
    return all(cycle_dot(g, z, vid) == 0 for vid in g.complete_ids())


def genus_of_cycle(g: DualGraph, z: Cycle) -> Fraction:
    """Arithmetic genus of an arbitrary cycle on complete vertices."""
    return arithmetic_genus(g, z)
