"""Exact rational linear algebra: vectors, symmetric matrices, solving,
definiteness.

Every scalar is a ``fractions.Fraction`` (arbitrary precision, always in
lowest terms, positive denominator); nothing in this module ever rounds.
Matrices are immutable after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class LinAlgError(Exception):
    """Base class for exact linear algebra errors."""


class SingularMatrix(LinAlgError):
    """The system M x = b has no solution (b outside the column space)."""


class UnderdeterminedSystem(LinAlgError):
    """The system M x = b is solvable but the solution is not unique."""


def rational(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` or ``"-2"``, and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as ``p/q``, or plain ``p`` when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SymMatrix:
    """An immutable symmetric matrix of Fractions.

    Rows are validated for symmetry at construction time.
    """

    __slots__ = ("dimension", "_rows")

    def __init__(self, rows: Sequence[Sequence[Fraction | int]]):
        n = len(rows)
        table = tuple(tuple(rational(x) for x in row) for row in rows)
        for row in table:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if table[i][j] != table[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")
        self.dimension = n
        self._rows = table

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def rows(self) -> list[list[Fraction]]:
        """A mutable copy of the entries."""
        return [list(row) for row in self._rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(x) for x in row) for row in self._rows
        )
        return f"SymMatrix[{body}]"

    def permuted(self, perm: Sequence[int]) -> "SymMatrix":
        """Simultaneous row/column permutation: entry (i,j) of the result is
        entry (perm[i], perm[j]) of self."""
        if sorted(perm) != list(range(self.dimension)):
            raise ValueError("not a permutation")
        return SymMatrix(
            [[self._rows[pi][pj] for pj in perm] for pi in perm]
        )

    def apply(self, x: Sequence[Fraction]) -> list[Fraction]:
        if len(x) != self.dimension:
            raise ValueError("dimension mismatch")
        return [
            sum((row[j] * x[j] for j in range(self.dimension)), Fraction(0))
            for row in self._rows
        ]

    def quadratic_form(self, x: Sequence[Fraction]) -> Fraction:
        return dot(x, self.apply(x))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum((ai * bi for ai, bi in zip(a, b)), Fraction(0))


def _eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place forward elimination to row echelon form.

    Pivot choice is deterministic: first row with a nonzero entry in the
    current column. Returns the echelon rows and the pivot column list.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, n_rows):
            if rows[i][c] == 0:
                continue
            f = rows[i][c] / pv
            for j in range(c, n_cols):
                rows[i][j] -= f * rows[r][j]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def solve(M: SymMatrix, b: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve M x = b exactly.

    Raises SingularMatrix when no solution exists and UnderdeterminedSystem
    when the solution is not unique; the returned x satisfies M x = b
    bit-exactly.
    """
    n = M.dimension
    rhs = [rational(v) for v in b]
    if len(rhs) != n:
        raise ValueError("right-hand side has wrong length")
    aug = [list(M.row(i)) + [rhs[i]] for i in range(n)]
    aug, pivots = _eliminate(aug)
    # Any pivot landing in the last (augmented) column marks inconsistency.
    if n in pivots:
        raise SingularMatrix("no solution: b is outside the column space")
    if len(pivots) < n:
        raise UnderdeterminedSystem(
            f"rank {len(pivots)} < {n}: solutions exist but are not unique"
        )
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        c = pivots[r]
        s = aug[r][n]
        for j in range(c + 1, n):
            s -= aug[r][j] * x[j]
        x[c] = s / aug[r][c]
    return x


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to a primitive integer vector whose
    first nonzero entry is positive."""
    denoms = [x.denominator for x in v]
    scale = 1
    for d in denoms:
        scale = scale * d // gcd(scale, d)
    ints = [int(x * scale) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def kernel_basis(M: SymMatrix) -> list[list[int]]:
    """A basis of the kernel of M, as primitive integer vectors.

    Basis vectors come from the free columns of the row echelon form, in
    column order, so the result is deterministic.
    """
    n = M.dimension
    rows, pivots = _eliminate(M.rows())
    free_cols = [c for c in range(n) if c not in pivots]
    basis: list[list[int]] = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = Fraction(0)
            for j in range(c + 1, n):
                s -= rows[r][j] * v[j]
            v[c] = s / rows[r][c]
        basis.append(primitive_integer_vector(v))
    return basis


NEGATIVE_DEFINITE = "NegativeDefinite"
NEGATIVE_SEMIDEFINITE = "NegativeSemidefiniteCorank"
INDEFINITE = "Indefinite"


class Definiteness:
    """Exact classification of a symmetric matrix as a quadratic form.

    kind is one of NEGATIVE_DEFINITE, NEGATIVE_SEMIDEFINITE, INDEFINITE;
    corank and kernel (primitive integer vectors) are filled for the
    semidefinite case.
    """

    __slots__ = ("kind", "corank", "kernel")

    def __init__(self, kind: str, corank: int = 0, kernel: Iterable[Sequence[int]] = ()):
        self.kind = kind
        self.corank = corank
        self.kernel = [list(v) for v in kernel]

    @property
    def is_negative_definite(self) -> bool:
        return self.kind == NEGATIVE_DEFINITE

    @property
    def is_negative_semidefinite(self) -> bool:
        return self.kind == NEGATIVE_SEMIDEFINITE

    def render(self) -> str:
        if self.kind == NEGATIVE_SEMIDEFINITE:
            return f"NegativeSemidefiniteCorank({self.corank})"
        return self.kind

    def __repr__(self) -> str:
        return f"Definiteness({self.render()})"


def definiteness(M: SymMatrix) -> Definiteness:
    """Classify M as negative definite, negative semidefinite (with corank
    and kernel basis), or indefinite. Total: never raises on symmetric input.

    Works on P = -M by symmetric pivoting: a positive pivot is eliminated
    through its Schur complement; if every remaining diagonal entry is zero
    the form is positive semidefinite exactly when the remaining block
    vanishes. Any negative diagonal entry, or a zero diagonal with a nonzero
    residual block, certifies indefiniteness.
    """
    n = M.dimension
    if n == 0:
        return Definiteness(NEGATIVE_DEFINITE)
    p = [[-x for x in M.row(i)] for i in range(n)]
    active = list(range(n))
    rank = 0
    while active:
        pivot = None
        for idx, a in enumerate(active):
            if p[a][a] != 0:
                pivot = idx
                break
        if pivot is None:
            # all remaining diagonal entries vanish
            for a in active:
                for b in active:
                    if p[a][b] != 0:
                        return Definiteness(INDEFINITE)
            break
        a = active[pivot]
        if p[a][a] < 0:
            return Definiteness(INDEFINITE)
        active.pop(pivot)
        d = p[a][a]
        for i in active:
            if p[i][a] == 0:
                continue
            f = p[i][a] / d
            for j in active:
                p[i][j] -= f * p[a][j]
        rank += 1
    corank = n - rank
    if corank == 0:
        return Definiteness(NEGATIVE_DEFINITE)
    kernel = kernel_basis(M)
    # elimination and kernel computation must agree on the corank
    assert len(kernel) == corank
    return Definiteness(NEGATIVE_SEMIDEFINITE, corank, kernel)
