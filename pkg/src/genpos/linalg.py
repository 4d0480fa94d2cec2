"""Exact linear algebra over the rationals.

Every scalar is a fractions.Fraction and nothing is ever rounded. Rank and
span membership are computed by fraction-free integer elimination on
denominator-cleared rows; determinants use the Bareiss pivoting scheme; Gram
matrices give an independent route to linear independence, kept separate so
the two can cross-check each other.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import InputError

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

_RATIONAL_RE = re.compile(r"[+-]?[0-9]+(/[1-9][0-9]*)?")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.fullmatch(value.strip()):
            raise InputError(f'not a rational: {value!r} (expected "p/q" or "p")')
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(
            f'floating point value {value!r} is not exact; pass "p/q" strings'
        )
    raise InputError(f"not a rational: {value!r}")


def make_vector(coords) -> Vector:
    """Normalize an iterable of rational-like values into a Vector."""
    vec = tuple(as_rational(c) for c in coords)
    if not vec:
        raise InputError("vector must have at least one coordinate")
    return vec


def vector_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def distance_sq(a: Vector, b: Vector) -> Fraction:
    d = vector_sub(a, b)
    return dot(d, d)


def _common_dimension(vectors: list[Vector]) -> int | None:
    """Shared length of all vectors, None for an empty list."""
    if not vectors:
        return None
    dim = len(vectors[0])
    for i, v in enumerate(vectors):
        if len(v) != dim:
            raise InputError(
                f"vectors[{i}]: expected dimension {dim}, got {len(v)}"
            )
    return dim


def gram_matrix(vectors) -> Matrix:
    """Square matrix of pairwise inner products, exact."""
    vecs = [make_vector(v) for v in vectors]
    _common_dimension(vecs)
    return tuple(tuple(dot(u, w) for w in vecs) for u in vecs)


def gram_determinant(vectors) -> Fraction:
    """Determinant of the Gram matrix; zero iff the vectors are dependent."""
    return _bareiss_determinant(gram_matrix(vectors))


def _bareiss_determinant(matrix: Matrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    den = 1
    for row in matrix:
        for x in row:
            den = math.lcm(den, x.denominator)
    a = [[int(x * den) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            pivot = next((r for r in range(i + 1, n) if a[r][i] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[i], a[pivot] = a[pivot], a[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return Fraction(sign * a[n - 1][n - 1], den**n)


def _integer_row(vector: Vector) -> list[int]:
    """Clear denominators and divide by the gcd; spans are unchanged."""
    den = 1
    for c in vector:
        den = math.lcm(den, c.denominator)
    row = [int(c * den) for c in vector]
    g = math.gcd(*row)
    if g > 1:
        row = [x // g for x in row]
    return row


class IncrementalSpan:
    """Row echelon form grown one vector at a time, with cheap rollback.

    Rows are primitive integer vectors, each zero before its pivot column and
    stored in pivot order. Existing rows are never modified when a vector is
    added, so a backtracking search can snapshot with mark() and restore with
    rollback(); both are O(rows).
    """

    __slots__ = ("dimension", "_rows", "_inserts")

    def __init__(self, dimension: int):
        if dimension < 1:
            raise InputError("dimension must be >= 1")
        self.dimension = dimension
        self._rows: list[tuple[int, list[int]]] = []  # (pivot col, row)
        self._inserts: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _residual(self, vector: Vector) -> list[int]:
        if len(vector) != self.dimension:
            raise InputError(
                f"vector has dimension {len(vector)}, span expects {self.dimension}"
            )
        row = _integer_row(vector)
        for p, base in self._rows:
            if row[p]:
                f_base, f_row = base[p], row[p]
                row = [f_base * a - f_row * b for a, b in zip(row, base)]
                g = math.gcd(*row)
                if g > 1:
                    row = [x // g for x in row]
        return row

    def includes(self, vector: Vector) -> bool:
        """True iff the vector lies in the current span."""
        return not any(self._residual(vector))

    def add(self, vector: Vector) -> bool:
        """Add a vector; returns True iff the rank grew."""
        row = self._residual(vector)
        pivot = next((i for i, x in enumerate(row) if x), None)
        if pivot is None:
            return False
        pos = sum(1 for p, _ in self._rows if p < pivot)
        self._rows.insert(pos, (pivot, row))
        self._inserts.append(pos)
        return True

    def mark(self) -> int:
        return len(self._inserts)

    def rollback(self, mark: int) -> None:
        while len(self._inserts) > mark:
            del self._rows[self._inserts.pop()]


def rank(vectors) -> int:
    """Dimension of the linear span, by fraction-free elimination."""
    vecs = [make_vector(v) for v in vectors]
    dim = _common_dimension(vecs)
    if dim is None:
        return 0
    span = IncrementalSpan(dim)
    for v in vecs:
        span.add(v)
    return span.rank


def in_span(vector, basis) -> bool:
    """True iff appending the vector to the basis does not raise the rank."""
    v = make_vector(vector)
    vecs = [make_vector(b) for b in basis]
    for i, b in enumerate(vecs):
        if len(b) != len(v):
            raise InputError(
                f"basis[{i}]: expected dimension {len(v)}, got {len(b)}"
            )
    span = IncrementalSpan(len(v))
    for b in vecs:
        span.add(b)
    return span.includes(v)


def solve_linear_system(rows, rhs) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if the system is inconsistent.

    Free variables are set to zero, so rank-deficient but consistent systems
    still produce a solution.
    """
    matrix = [list(make_vector(r)) for r in rows]
    b = [as_rational(x) for x in rhs]
    m = len(matrix)
    if m != len(b):
        raise InputError(f"matrix has {m} rows but right side has {len(b)} entries")
    if m == 0:
        return []
    width = _common_dimension([tuple(r) for r in matrix])
    aug = [row + [val] for row, val in zip(matrix, b)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][width] != 0:
            return None
    solution = [Fraction(0)] * width
    for i, c in enumerate(pivot_cols):
        solution[c] = aug[i][width]
    return solution
