"""Exact Gauss-Jordan elimination over a field descriptor.

Matrices are sequences of rows; entries are FieldScalars of one field.
"""
from __future__ import annotations

from .errors import NotInvertible
from .scalars import FieldDescriptor, FieldScalar


def rref(rows, field: FieldDescriptor):
    """Reduced row-echelon form.

    Returns ``(basis, pivots)``: nonzero rows with leading entry 1, every
    pivot column cleared elsewhere, rows ordered by pivot column.
    """
    if field.d is None:
        return _rref_rational(rows, field)
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        row = [x * inv for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [mi[k] - f * row[k] if row[k] else mi[k] for k in range(ncols)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def _rref_rational(rows, field):
    # same elimination on bare gmpy2 rationals, wrapped back at the end
    m = [[x.a for x in r] for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        row = [x / piv for x in m[r]] if piv != 1 else m[r]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [mi[k] - f * row[k] if row[k] else mi[k] for k in range(ncols)]
        pivots.append(c)
        r += 1
    return tuple(tuple(FieldScalar(field, x) for x in row) for row in m[:r]), tuple(pivots)


def kernel(rows, ncols: int, field: FieldDescriptor):
    """Basis of ``{x : sum_j A[i][j] x[j] = 0 for every row i}``."""
    basis, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    zero, one = field.zero, field.one
    out = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, p in zip(basis, pivots):
            x[p] = -row[f]
        out.append(tuple(x))
    return out


def rank(rows, field: FieldDescriptor) -> int:
    return len(rref(rows, field)[0])


def det(matrix, field: FieldDescriptor) -> FieldScalar:
    m = [list(r) for r in matrix]
    n = len(m)
    result = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return field.zero
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [m[i][k] - f * m[c][k] for k in range(n)]
    return result


def leading_minors(matrix, field: FieldDescriptor) -> list[FieldScalar]:
    return [det([row[:k] for row in matrix[:k]], field) for k in range(1, len(matrix) + 1)]


def inverse(matrix, field: FieldDescriptor):
    n = len(matrix)
    zero, one = field.zero, field.one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    basis, pivots = rref(aug, field)
    if len(basis) < n or pivots[n - 1] != n - 1:
        raise NotInvertible("matrix is singular")
    return [list(row[n:]) for row in basis]


def solve(matrix, rhs, field: FieldDescriptor):
    """Unique solution of ``A x = b`` for square invertible ``A``."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    basis, pivots = rref(aug, field)
    if len(basis) != n or pivots != tuple(range(n)):
        raise NotInvertible("system has no unique solution")
    return [row[n] for row in basis]


def matmul(a, b, field: FieldDescriptor):
    cols = list(zip(*b))
    zero = field.zero
    return [[sum((x * y for x, y in zip(row, col)), zero) for col in cols] for row in a]


def matvec(a, v, field: FieldDescriptor):
    zero = field.zero
    return [sum((x * y for x, y in zip(row, v)), zero) for row in a]


def identity(n: int, field: FieldDescriptor):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
