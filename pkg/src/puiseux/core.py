"""Exact arithmetic substrate: rational vectors, lattices and additive orders.

Everything in this module is immutable after construction and safe to share
between threads.  Exponent vectors are plain tuples of ``Fraction`` so they
can serve directly as dictionary keys in the series layer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]


class PuiseuxError(ValueError):
    """Base class for every error raised by this package."""


class DimensionError(PuiseuxError):
    pass


class OrderError(PuiseuxError):
    pass


class RootError(PuiseuxError):
    pass


# ---------------------------------------------------------------------------
# rationals and vectors


def rat(x) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise PuiseuxError(f"refusing inexact float {x!r}; pass 'p/q' or Fraction")
    return Fraction(x)


def fmt_rat(q: Fraction) -> str:
    return str(q)


def as_vec(x, dim: int | None = None) -> Vec:
    """Normalise a scalar or an iterable of rationals to an exponent vector."""
    if isinstance(x, tuple) and x and isinstance(x[0], Fraction):
        v = x
    elif isinstance(x, (int, Fraction, str)):
        v = (rat(x),)
    else:
        v = tuple(rat(c) for c in x)
    if dim is not None and len(v) != dim:
        raise DimensionError(f"expected dimension {dim}, got {len(v)}")
    return v


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vec) -> Vec:
    c = rat(c)
    return tuple(c * x for x in a)


def total(a: Vec) -> Fraction:
    """Total exponent sum, the grading used for truncation."""
    return sum(a, Fraction(0))


def fmt_vec(a: Vec) -> str:
    if len(a) == 1:
        return str(a[0])
    return "(" + ", ".join(str(c) for c in a) + ")"


def unit_vec(dim: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


# ---------------------------------------------------------------------------
# exact roots and powers


def _iroot(n: int, m: int) -> int | None:
    """Exact m-th root of a non-negative integer, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1) or m == 1:
        return n
    r = round(n ** (1.0 / m))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**m == n:
            return cand
    # float seed can be off for very large n; fall back to bisection
    lo, hi = 0, 1 << ((n.bit_length() + m - 1) // m + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**m
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_root(q: Fraction, m: int) -> Fraction | None:
    """The real m-th root of q when it is rational, preferring the positive one."""
    if m <= 0:
        raise ValueError("root index must be positive")
    if q == 0:
        return Fraction(0)
    if q < 0:
        if m % 2 == 0:
            return None
        r = rational_root(-q, m)
        return None if r is None else -r
    num = _iroot(q.numerator, m)
    den = _iroot(q.denominator, m)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def rational_power(base: Fraction, e: Fraction) -> Fraction:
    """Exact base**e for rational e; raises RootError when the value is irrational."""
    e = rat(e)
    if e.denominator == 1:
        k = e.numerator
        if base == 0 and k < 0:
            raise RootError("zero base with negative exponent")
        return base**k
    root = rational_root(base, e.denominator)
    if root is None:
        raise RootError(f"{base} has no rational {e.denominator}-th root")
    return root**e.numerator


def rational_binomial(r, k: int) -> Fraction:
    """Generalized binomial coefficient r(r-1)...(r-k+1)/k! for rational r."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r = rat(r)
    num = Fraction(1)
    for i in range(k):
        num *= r - i
    return num / math.factorial(k)


# ---------------------------------------------------------------------------
# rational matrices (row tuples)


def mat_from(rows) -> Matrix:
    out = tuple(tuple(rat(c) for c in row) for row in rows)
    if not out or any(len(r) != len(out[0]) for r in out):
        raise DimensionError("matrix rows must be non-empty and rectangular")
    return out


def mat_identity(h: int) -> Matrix:
    return tuple(unit_vec(h, i) for i in range(h))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = mat_transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Vec) -> Vec:
    """Column action a·v."""
    if len(a[0]) != len(v):
        raise DimensionError("matrix/vector dimension mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_mat(v: Vec, a: Matrix) -> Vec:
    """Row action v·a (the convention of toric charts: row i of a is the
    exponent vector of the monomial substituted for the i-th variable)."""
    if len(a) != len(v):
        raise DimensionError("vector/matrix dimension mismatch")
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def mat_det(a: Matrix) -> Fraction:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    m = [list(row) for row in a]
    det = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            det = -det
        det *= m[j][j]
        inv = 1 / m[j][j]
        for i in range(j + 1, n):
            if m[i][j] != 0:
                f = m[i][j] * inv
                for k in range(j, n):
                    m[i][k] -= f * m[j][k]
    return det


def mat_inv(a: Matrix) -> Matrix:
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("inverse of a non-square matrix")
    m = [list(row) + list(unit_vec(n, i)) for i, row in enumerate(a)]
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            raise OrderError("singular matrix")
        m[j], m[piv] = m[piv], m[j]
        inv = 1 / m[j][j]
        m[j] = [c * inv for c in m[j]]
        for i in range(n):
            if i != j and m[i][j] != 0:
                f = m[i][j]
                m[i] = [c - f * d for c, d in zip(m[i], m[j])]
    return tuple(tuple(row[n:]) for row in m)


def _mat_json(a: Matrix) -> list[list[str]]:
    return [[str(c) for c in row] for row in a]


# ---------------------------------------------------------------------------
# lattices


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


def _hermite_rows(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Row-style Hermite form: echelon with positive pivots, entries above a
    pivot reduced into [0, pivot)."""
    basis: list[list[int]] = []
    pivots: list[int] = []

    def insert(vec: list[int]) -> None:
        for j in range(ncols):
            if vec[j] == 0:
                continue
            if j not in pivots:
                where = 0
                while where < len(pivots) and pivots[where] < j:
                    where += 1
                basis.insert(where, vec)
                pivots.insert(where, j)
                return
            p = pivots.index(j)
            row = basis[p]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, ncols):
                    vec[k] -= q * row[k]
            else:
                x, y, g = _xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(j, ncols):
                    ra, rb = row[k], vec[k]
                    row[k] = x * ra + y * rb
                    vec[k] = -bg * ra + ag * rb
        # vec is now zero

    for r in rows:
        insert(list(r))
    for i, j in enumerate(pivots):
        if basis[i][j] < 0:
            basis[i] = [-c for c in basis[i]]
    # reduce entries above each pivot, in ascending pivot order so a step
    # only alters columns to the right of every previously reduced pivot
    for i in range(len(basis)):
        p = basis[i][pivots[i]]
        for k in range(i):
            c = basis[k][pivots[i]]
            q = c // p
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return [tuple(r) for r in basis]


class Lattice:
    """A finitely generated subgroup of Q^h with decidable membership.

    Internally the generators are cleared of denominators by a single scale s
    and brought to an integral Hermite form; the pair (s, rows) is canonical,
    so equality of lattices is equality of the stored data.
    """

    __slots__ = ("dim", "scale", "rows", "_pivots")

    def __init__(self, dim: int, generators: Iterable = ()):
        gens = [as_vec(g, dim) for g in generators]
        scale = 1
        for g in gens:
            for c in g:
                scale = math.lcm(scale, c.denominator)
        int_rows = [[int(c * scale) for c in g] for g in gens]
        rows = _hermite_rows(int_rows, dim)
        # normalise the (scale, rows) pair so it does not depend on the input scale
        g = scale
        for r in rows:
            for c in r:
                g = math.gcd(g, c)
        if g > 1:
            scale //= g
            rows = [tuple(c // g for c in r) for r in rows]
        self.dim = dim
        self.scale = scale
        self.rows = tuple(rows)
        self._pivots = tuple(next(j for j, c in enumerate(r) if c) for r in self.rows)

    @classmethod
    def standard(cls, dim: int) -> "Lattice":
        return cls(dim, mat_identity(dim))

    @classmethod
    def scaled_axes(cls, dim: int, scales: Sequence) -> "Lattice":
        """The lattice s_1 Z v_1 + ... + s_h Z v_h."""
        if len(scales) != dim:
            raise DimensionError("one scale per axis required")
        return cls(dim, [vec_scale(s, unit_vec(dim, i)) for i, s in enumerate(scales)])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[Vec, ...]:
        return tuple(tuple(Fraction(c, self.scale) for c in r) for r in self.rows)

    def contains(self, v) -> bool:
        v = as_vec(v, self.dim)
        w = [c * self.scale for c in v]
        if any(c.denominator != 1 for c in w):
            return False
        w = [int(c) for c in w]
        by_pivot = dict(zip(self._pivots, self.rows))
        for j in range(self.dim):
            if w[j] == 0:
                continue
            row = by_pivot.get(j)
            if row is None or w[j] % row[j] != 0:
                return False
            q = w[j] // row[j]
            for k in range(j, self.dim):
                w[k] -= q * row[k]
        return True

    def join(self, extra: Iterable) -> "Lattice":
        return Lattice(self.dim, list(self.basis()) + [as_vec(v, self.dim) for v in extra])

    def contains_lattice(self, other: "Lattice") -> bool:
        if other.dim != self.dim:
            raise DimensionError("lattice dimensions differ")
        return all(self.contains(b) for b in other.basis())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.dim == other.dim
            and self.scale == other.scale
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.dim, self.scale, self.rows))

    def __repr__(self):
        return f"Lattice({self.dim}, {[fmt_vec(b) for b in self.basis()]})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [[str(c) for c in b] for b in self.basis()]}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls(data["dim"], data["basis"])


# ---------------------------------------------------------------------------
# additive orders


class AdditiveOrder:
    """A total additive order on Q^h: compare a, b by the lexicographic order
    of matrix·a versus matrix·b.

    Only orders built through the provided factories are guaranteed to
    dominate Q^h_+ (every bounded-denominator subset has a minimum); the
    ``dominating`` flag records that guarantee by construction.
    """

    __slots__ = ("matrix", "kind", "dominating")

    def __init__(self, matrix: Matrix, kind: str, dominating: bool):
        matrix = mat_from(matrix)
        if len(matrix) != len(matrix[0]):
            raise DimensionError("order matrix must be square")
        if mat_det(matrix) == 0:
            raise OrderError("order matrix must be invertible")
        self.matrix = matrix
        self.kind = kind
        self.dominating = dominating

    @classmethod
    def lex(cls, dim: int) -> "AdditiveOrder":
        return cls(mat_identity(dim), "lex", True)

    @classmethod
    def weighted(cls, weights) -> "AdditiveOrder":
        w = as_vec(weights)
        if any(c <= 0 for c in w):
            raise OrderError("weight-lex requires strictly positive weights")
        h = len(w)
        rows = [w] + [unit_vec(h, i) for i in range(h - 1)]
        return cls(tuple(rows), "positive-weight-lex", True)

    @classmethod
    def from_matrix(cls, rows) -> "AdditiveOrder":
        m = mat_from(rows)
        if m == mat_identity(len(m)):
            return cls.lex(len(m))
        dominating = all(c > 0 for c in m[0])
        kind = "positive-weight-lex" if dominating else "matrix"
        return cls(m, kind, dominating)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def key(self, v) -> Vec:
        return mat_vec(self.matrix, as_vec(v, self.dim))

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def min(self, vectors):
        items = list(vectors)
        if not items:
            raise PuiseuxError("minimum of an empty collection")
        return min(items, key=self.key)

    def sort(self, vectors) -> list:
        return sorted(vectors, key=self.key)

    def compose(self, q) -> "AdditiveOrder":
        """The order comparing a, b by comparing q(a), q(b) under self, where
        q acts on exponent vectors by the row convention v -> v·q."""
        q = mat_from(q)
        if mat_det(q) == 0:
            raise OrderError("singular substitution matrix")
        matrix = mat_mul(self.matrix, mat_transpose(q))
        dominating = self.dominating and all(c >= 0 for row in q for c in row)
        return AdditiveOrder(matrix, "composed", dominating)

    def __eq__(self, other):
        return isinstance(other, AdditiveOrder) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AdditiveOrder({self.kind}, {_mat_json(self.matrix)})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "matrix": _mat_json(self.matrix), "dominating": self.dominating}

    @classmethod
    def from_json(cls, data: dict) -> "AdditiveOrder":
        return cls(mat_from(data["matrix"]), data["kind"], bool(data["dominating"]))
