"""Weighted dual graphs of resolutions, rational cycles on them, and the
line-oriented text format they are stored in.

A vertex is a curve: ``exc`` (a complete exceptional curve, drawn as a
circle), ``cen`` (a distinguished complete central curve, drawn filled), or
``tra`` (a non-complete transversal germ, which carries no self-intersection
number). Edges carry positive integer multiplicities; graphs have no
self-loops. Graphs are immutable after construction, so every derived
computation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import SymMatrix, format_rational, rational


class GraphError(Exception):
    """Base class for graph construction and query errors."""


class DuplicateId(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class SelfIntOnTransversal(GraphError):
    pass


class TransversalInSubset(GraphError):
    pass


class DslSyntaxError(GraphError):
    """A malformed line in the text format; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class VertexKind(Enum):
    EXCEPTIONAL = "exc"
    CENTRAL = "cen"
    TRANSVERSAL = "tra"


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    self_int: int | None
    label: str | None = None

    @property
    def complete(self) -> bool:
        return self.kind is not VertexKind.TRANSVERSAL


def _edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


class DualGraph:
    """A weighted dual graph: named vertices plus a multiset of edges."""

    __slots__ = ("name", "vertices", "_by_id", "_edges", "_adjacency")

    def __init__(
        self,
        name: str,
        vertices: Sequence[Vertex],
        edges: Mapping[tuple[str, str], int] | Iterable[tuple[str, str]],
    ):
        self.name = name
        self.vertices = tuple(vertices)
        by_id: dict[str, Vertex] = {}
        for v in self.vertices:
            if v.id in by_id:
                raise DuplicateId(f"duplicate vertex id {v.id!r}")
            if v.kind is VertexKind.TRANSVERSAL:
                if v.self_int is not None:
                    raise SelfIntOnTransversal(
                        f"transversal vertex {v.id!r} cannot carry a self-intersection"
                    )
            else:
                if v.self_int is None:
                    raise GraphError(f"complete vertex {v.id!r} needs a self-intersection")
            by_id[v.id] = v
        self._by_id = by_id

        table: dict[tuple[str, str], int] = {}
        items = edges.items() if isinstance(edges, Mapping) else ((e, 1) for e in edges)
        for (a, b), mult in items:
            if a == b:
                raise GraphError(f"self-loop at {a!r}")
            for x in (a, b):
                if x not in by_id:
                    raise UnknownVertex(f"edge endpoint {x!r} is not a vertex")
            if mult <= 0:
                raise GraphError("edge multiplicity must be positive")
            key = _edge_key(a, b)
            table[key] = table.get(key, 0) + mult
        self._edges = dict(sorted(table.items()))

        adjacency: dict[str, list[tuple[str, int]]] = {v.id: [] for v in self.vertices}
        for (a, b), mult in self._edges.items():
            adjacency[a].append((b, mult))
            adjacency[b].append((a, mult))
        self._adjacency = {k: tuple(v) for k, v in adjacency.items()}

    # -- queries ---------------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]
        except KeyError:
            raise UnknownVertex(f"no vertex {vid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._by_id

    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def complete_ids(self) -> list[str]:
        return [v.id for v in self.vertices if v.complete]

    def exceptional_ids(self) -> list[str]:
        return [v.id for v in self.vertices if v.kind is VertexKind.EXCEPTIONAL]

    def labeled(self, label: str) -> list[str]:
        return [v.id for v in self.vertices if v.label == label]

    def edges(self) -> dict[tuple[str, str], int]:
        return dict(self._edges)

    def multiplicity(self, a: str, b: str) -> int:
        return self._edges.get(_edge_key(a, b), 0)

    def neighbors(self, vid: str) -> tuple[tuple[str, int], ...]:
        """(neighbor id, edge multiplicity) pairs."""
        self.vertex(vid)
        return self._adjacency[vid]

    def components(self, subset: Iterable[str] | None = None) -> list[set[str]]:
        """Connected components of the subgraph induced on subset (all
        vertices by default), as sets of ids sorted by smallest member."""
        pool = set(self.ids() if subset is None else subset)
        for vid in pool:
            self.vertex(vid)
        comps: list[set[str]] = []
        remaining = set(pool)
        while remaining:
            start = min(remaining)
            comp = {start}
            frontier = [start]
            while frontier:
                cur = frontier.pop()
                for other, _ in self._adjacency[cur]:
                    if other in remaining and other not in comp:
                        comp.add(other)
                        frontier.append(other)
            comps.append(comp)
            remaining -= comp
        return sorted(comps, key=min)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DualGraph)
            and self.name == other.name
            and self.vertices == other.vertices
            and self._edges == other._edges
        )

    def __repr__(self) -> str:
        return f"DualGraph({self.name!r}, {len(self.vertices)} vertices, {len(self._edges)} edges)"

    # -- intersection theory ---------------------------------------------

    def intersection_matrix(self, subset: Sequence[str] | None = None) -> tuple[SymMatrix, list[str]]:
        """The intersection form on a subset of complete vertices: diagonal
        entries are self-intersections, off-diagonal entries the total edge
        multiplicities. Returns the matrix plus the vertex order used."""
        order = list(self.complete_ids() if subset is None else subset)
        for vid in order:
            v = self.vertex(vid)
            if not v.complete:
                raise TransversalInSubset(f"{vid!r} is transversal")
        index = {vid: i for i, vid in enumerate(order)}
        if len(index) != len(order):
            raise GraphError("subset contains repeated ids")
        n = len(order)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, vid in enumerate(order):
            rows[i][i] = Fraction(self.vertex(vid).self_int)
        for (a, b), mult in self._edges.items():
            if a in index and b in index:
                i, j = index[a], index[b]
                rows[i][j] += mult
                rows[j][i] += mult
        return SymMatrix(rows), order


@dataclass(frozen=True)
class Cycle:
    """A formal rational combination of vertices; ids absent from the map
    have coefficient zero."""

    coefficients: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: rational(v) for k, v in self.coefficients.items() if rational(v) != 0}
        object.__setattr__(self, "coefficients", clean)

    def coeff(self, vid: str) -> Fraction:
        return self.coefficients.get(vid, Fraction(0))

    def support(self) -> list[str]:
        return sorted(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "Cycle") -> "Cycle":
        merged = dict(self.coefficients)
        for k, v in other.coefficients.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return Cycle(merged)

    def scale(self, factor) -> "Cycle":
        f = rational(factor)
        return Cycle({k: v * f for k, v in self.coefficients.items()})

    def render(self) -> str:
        return ", ".join(f"{k}={format_rational(v)}" for k, v in sorted(self.coefficients.items()))


def cycle_dot(g: DualGraph, z: Cycle, vid: str) -> Fraction:
    """The intersection number of the cycle with the curve at ``vid``:
    coefficient times self-intersection plus edge-weighted neighbor
    coefficients. The vertex must be complete."""
    v = g.vertex(vid)
    if not v.complete:
        raise TransversalInSubset(f"{vid!r} is transversal")
    total = z.coeff(vid) * v.self_int
    for other, mult in g.neighbors(vid):
        total += mult * z.coeff(other)
    return total


def cycle_pairing(g: DualGraph, a: Cycle, b: Cycle) -> Fraction:
    """Bilinear extension of cycle_dot; both supports must be complete."""
    total = Fraction(0)
    for vid, coeff in a.coefficients.items():
        total += coeff * cycle_dot(g, b, vid)
    return total


def canonical_dot(g: DualGraph, z: Cycle) -> Fraction:
    """Pairing with the canonical class under adjunction for rational
    curves: K . E = -2 - E^2 for every complete E."""
    total = Fraction(0)
    for vid, coeff in z.coefficients.items():
        v = g.vertex(vid)
        if not v.complete:
            raise TransversalInSubset(f"{vid!r} is transversal")
        total += coeff * (-2 - v.self_int)
    return total


def arithmetic_genus(g: DualGraph, z: Cycle) -> Fraction:
    """p_a(Z) = 1 + (Z.Z + Z.K)/2."""
    zz = cycle_pairing(g, z, z)
    zk = canonical_dot(g, z)
    return 1 + (zz + zk) / 2


# -- text format -----------------------------------------------------------


@dataclass
class ParseResult:
    graph: DualGraph
    cycles: dict[str, Cycle]
    expects: list[tuple[str, str]]
    warnings: list[str]


_KINDS = {k.value: k for k in VertexKind}


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DslSyntaxError(lineno, f"bad {what}: {token!r}") from None


def parse(text: str) -> ParseResult:
    """Parse the line-oriented graph format.

    Grammar (one directive per line, ``#`` starts a comment)::

        graph <name>
        v <id> [<self_int> | ~] [exc|cen|tra] [label=<string>]
        e <id> <id> [m=<positive int>]
        cycle <name>: <id>=<rational>, ...
        expect <key> = <value>

    An omitted self-intersection means -2; ``~`` marks a transversal vertex,
    which has none. Kind defaults to ``exc``.
    """
    name: str | None = None
    vertices: list[Vertex] = []
    seen: set[str] = set()
    edges: dict[tuple[str, str], int] = {}
    cycles: dict[str, Cycle] = {}
    expects: list[tuple[str, str]] = []
    warnings: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive = parts[0]

        if directive == "graph":
            if name is not None:
                raise DslSyntaxError(lineno, "second graph directive")
            if len(parts) != 2:
                raise DslSyntaxError(lineno, "expected: graph <name>")
            name = parts[1]

        elif directive == "v":
            if len(parts) < 2:
                raise DslSyntaxError(lineno, "expected: v <id> ...")
            vid = parts[1]
            if vid in seen:
                raise DuplicateId(f"line {lineno}: duplicate vertex id {vid!r}")
            rest = parts[2:]
            self_int: int | None = -2
            transversal_marker = False
            explicit_weight = False
            if rest and (rest[0] == "~" or _looks_like_int(rest[0])):
                if rest[0] == "~":
                    transversal_marker = True
                    self_int = None
                else:
                    self_int = _parse_int(rest[0], lineno, "self-intersection")
                    explicit_weight = True
                rest = rest[1:]
            kind = VertexKind.EXCEPTIONAL
            if rest and rest[0] in _KINDS:
                kind = _KINDS[rest[0]]
                rest = rest[1:]
            elif transversal_marker:
                kind = VertexKind.TRANSVERSAL
            label = None
            if rest and rest[0].startswith("label="):
                label = rest[0][len("label="):]
                rest = rest[1:]
            if rest:
                raise DslSyntaxError(lineno, f"trailing tokens: {' '.join(rest)!r}")
            if transversal_marker and kind is not VertexKind.TRANSVERSAL:
                raise DslSyntaxError(lineno, "~ marks a transversal vertex")
            if kind is VertexKind.TRANSVERSAL:
                if explicit_weight:
                    raise SelfIntOnTransversal(
                        f"line {lineno}: transversal {vid!r} cannot carry a self-intersection"
                    )
                self_int = None
            if kind is not VertexKind.TRANSVERSAL and self_int is not None and self_int > -1:
                raise DslSyntaxError(
                    lineno, f"complete vertex {vid!r} needs self-intersection <= -1"
                )
            seen.add(vid)
            vertices.append(Vertex(vid, kind, self_int, label))

        elif directive == "e":
            if len(parts) not in (3, 4):
                raise DslSyntaxError(lineno, "expected: e <id> <id> [m=<mult>]")
            a, b = parts[1], parts[2]
            mult = 1
            if len(parts) == 4:
                if not parts[3].startswith("m="):
                    raise DslSyntaxError(lineno, f"bad edge option {parts[3]!r}")
                mult = _parse_int(parts[3][2:], lineno, "edge multiplicity")
                if mult <= 0:
                    raise DslSyntaxError(lineno, "edge multiplicity must be positive")
            for x in (a, b):
                if x not in seen:
                    raise UnknownVertex(f"line {lineno}: unknown vertex {x!r} in edge")
            if a == b:
                raise DslSyntaxError(lineno, "self-loops are not allowed")
            key = _edge_key(a, b)
            edges[key] = edges.get(key, 0) + mult

        elif directive == "cycle":
            body = line[len("cycle"):].strip()
            if ":" not in body:
                raise DslSyntaxError(lineno, "expected: cycle <name>: id=value, ...")
            cname, assigns = body.split(":", 1)
            cname = cname.strip()
            if not cname:
                raise DslSyntaxError(lineno, "cycle needs a name")
            if cname in cycles:
                raise DslSyntaxError(lineno, f"duplicate cycle {cname!r}")
            coeffs: dict[str, Fraction] = {}
            for piece in assigns.split(","):
                piece = piece.strip()
                if not piece:
                    continue
                if "=" not in piece:
                    raise DslSyntaxError(lineno, f"bad coefficient {piece!r}")
                vid, value = (x.strip() for x in piece.split("=", 1))
                if vid not in seen:
                    raise UnknownVertex(f"line {lineno}: unknown vertex {vid!r} in cycle")
                try:
                    coeffs[vid] = rational(value)
                except (ValueError, ZeroDivisionError):
                    raise DslSyntaxError(lineno, f"bad rational {value!r}") from None
            cycles[cname] = Cycle(coeffs)

        elif directive == "expect":
            body = line[len("expect"):].strip()
            if "=" not in body:
                raise DslSyntaxError(lineno, "expected: expect <key> = <value>")
            key, value = (x.strip() for x in body.rsplit("=", 1))
            if not key:
                raise DslSyntaxError(lineno, "expect needs a key")
            expects.append((key, value))

        else:
            raise DslSyntaxError(lineno, f"unknown directive {directive!r}")

    if name is None:
        raise DslSyntaxError(1, "missing graph directive")
    g = DualGraph(name, vertices, edges)
    complete = g.complete_ids()
    if complete and len(g.components(complete)) > 1:
        warnings.append("complete part is disconnected; classify per component")
    return ParseResult(g, cycles, expects, warnings)


def _looks_like_int(token: str) -> bool:
    t = token[1:] if token[:1] in "+-" else token
    return t.isdigit()


def serialize(
    g: DualGraph,
    cycles: Mapping[str, Cycle] | None = None,
    expects: Sequence[tuple[str, str]] | None = None,
) -> str:
    """Render a graph (plus optional cycles and expectations) in the text
    format: vertices in input order, edges sorted lexicographically, cycles
    sorted by name. parse(serialize(...)) reproduces the same graph."""
    out = [f"graph {g.name}"]
    for v in g.vertices:
        bits = ["v", v.id]
        if v.kind is VertexKind.TRANSVERSAL:
            bits.append("~")
            bits.append("tra")
        else:
            bits.append(str(v.self_int))
            if v.kind is VertexKind.CENTRAL:
                bits.append("cen")
        if v.label is not None:
            bits.append(f"label={v.label}")
        out.append(" ".join(bits))
    for (a, b), mult in sorted(g.edges().items()):
        out.append(f"e {a} {b}" + (f" m={mult}" if mult != 1 else ""))
    order = {vid: i for i, vid in enumerate(g.ids())}
    for cname in sorted(cycles or {}):
        z = (cycles or {})[cname]
        body = ", ".join(
            f"{vid}={format_rational(z.coeff(vid))}"
            for vid in sorted(z.support(), key=lambda x: order[x])
        )
        out.append(f"cycle {cname}: {body}")
    for key, value in expects or []:
        out.append(f"expect {key} = {value}")
    return "\n".join(out) + "\n"


def ade_graph(family: str, rank: int, name: str | None = None) -> DualGraph:
    """The all-(-2) dual graph of a rational double point of the given type:
    a chain for A, a chain with two short prongs for D, the three E shapes."""
    family = family.upper()
    if family == "A":
        if rank < 1:
            raise ValueError("A rank must be >= 1")
        legs: list[tuple[str, str]] = [(f"v{i}", f"v{i+1}") for i in range(1, rank)]
        ids = [f"v{i}" for i in range(1, rank + 1)]
    elif family == "D":
        if rank < 4:
            raise ValueError("D rank must be >= 4")
        ids = [f"v{i}" for i in range(1, rank + 1)]
        legs = [(f"v{i}", f"v{i+1}") for i in range(1, rank - 1)]
        legs.append((f"v{rank - 2}", f"v{rank}"))
    elif family == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E rank must be 6, 7 or 8")
        ids = [f"v{i}" for i in range(1, rank + 1)]
        legs = [(f"v{i}", f"v{i+1}") for i in range(1, rank - 1)] + [("v3", f"v{rank}")]
    else:
        raise ValueError(f"unknown family {family!r}")
    vertices = [Vertex(vid, VertexKind.EXCEPTIONAL, -2) for vid in ids]
    return DualGraph(name or f"{family}{rank}", vertices, legs)
