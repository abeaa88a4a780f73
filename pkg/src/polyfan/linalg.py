"""Exact dense linear algebra over the package's scalar types.

Vectors are tuples of scalars, matrices are tuples of row tuples.  All
routines use plain Gaussian elimination with the first nonzero pivot in
column order, so results are deterministic functions of the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .scalars import Scalar

Vector = tuple  # tuple[Scalar, ...]
Matrix = tuple  # tuple[Vector, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec(entries: Sequence[Scalar]) -> Vector:
    return tuple(entries)


def mat(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    out = tuple(tuple(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows in matrix")
    return out


def zeros(n: int) -> Vector:
    return (_ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def vec_neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vec_dot(u: Vector, v: Vector) -> Scalar:
    total = _ZERO
    for a, b in zip(u, v):
        total = total + a * b
    return total


def is_zero_vector(u: Vector) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    cols = list(zip(*b))
    return tuple(tuple(vec_dot(row, col) for col in cols) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    rows = [list(r) for r in m]
    pivots = _rref_inplace(rows)
    return tuple(tuple(r) for r in rows[: len(pivots)]), pivots


def _rref_inplace(rows: list[list]) -> tuple[int, ...]:
    """Reduce ``rows`` in place; returns pivot columns.  Nonpivot rows are
    zeroed and moved to the bottom."""
    if not rows:
        return ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            inv = 1 / pv if not isinstance(pv, (int, Fraction)) else Fraction(1) / pv
            row = rows[r]
            for j in range(c, ncols):
                if row[j] != 0:
                    row[j] = row[j] * inv
        row = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f != 0:
                other = rows[i]
                for j in range(c, ncols):
                    if row[j] != 0:
                        other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> tuple[Vector, ...]:
    """Deterministic basis of the null space {x : m @ x = 0}.

    Each basis vector carries a 1 in one free column and 0 in the others,
    free columns taken in ascending order.
    """
    if not m:
        return ()
    ncols = len(m[0])
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of m @ x = b (free variables set to 0), or None."""
    if not m:
        return () if is_zero_vector(b) else None
    ncols = len(m[0])
    augmented = tuple(row + (bi,) for row, bi in zip(m, b))
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [_ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of a non-square matrix")
    augmented = tuple(row + unit(n, i) for i, row in enumerate(m))
    reduced, pivots = rref(augmented)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in reduced)


def quotient_projection(line: Vector, ambient_dim: int) -> Matrix:
    """Coordinate map R^k -> R^(k-1) whose kernel is the span of ``line``.

    The line is completed to a basis with standard unit vectors in index
    order; the returned (k-1) x k matrix reads off the unit-vector dual
    coordinates, so the result is a deterministic function of ``line``.
    """
    k = ambient_dim
    if len(line) != k:
        raise ValueError("line/ambient dimension mismatch")
    if is_zero_vector(line):
        raise ValueError("cannot project along the zero vector")
    basis = [tuple(line)]
    for i in range(k):
        candidate = basis + [unit(k, i)]
        if rank(mat(candidate)) == len(candidate):
            basis.append(unit(k, i))
        if len(basis) == k:
            break
    inv = inverse(mat(basis))
    # x = c0*line + sum_j c_j e_{i_j}; drop c0, keep the rest.
    return tuple(tuple(inv[i][j] for i in range(k)) for j in range(1, k))
