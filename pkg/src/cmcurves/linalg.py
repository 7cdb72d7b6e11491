"""Exact dense linear algebra over any of the coefficient fields.

Matrices are lists of row lists.  Elimination always pivots on the first
nonzero entry in column order, so results are deterministic.
"""

from __future__ import annotations


def rref(field, rows):
    """Reduced row echelon form; returns (new_rows, pivot_column_list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not field.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, v) for v in m[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(field, rows):
    if not rows:
        return 0
    return len(rref(field, rows)[1])


def solve(field, a_rows, b):
    """One solution x of A x = b, or None if inconsistent (A in row form)."""
    if not a_rows:
        return [] if all(field.is_zero(v) for v in b) else None
    ncols = len(a_rows[0])
    aug = [list(r) + [v] for r, v in zip(a_rows, b)]
    m, pivots = rref(field, aug)
    for i, row in enumerate(m):
        if all(field.is_zero(v) for v in row[:-1]) and not field.is_zero(row[-1]):
            return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = m[i][-1]
    return x


def nullspace(field, rows):
    """Basis of the right kernel of A, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(field, rows)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.neg(m[i][free])
        basis.append(v)
    return basis


def in_row_span(field, rows, v):
    """Whether v is a linear combination of the given rows."""
    if all(field.is_zero(x) for x in v):
        return True
    if not rows:
        return False
    return rank(field, rows) == rank(field, list(rows) + [v])


def mat_mul_vec(field, rows, x):
    out = []
    for r in rows:
        acc = field.zero
        for a, b in zip(r, x):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def identity(field, n):
    return [
        [field.one if i == j else field.zero for j in range(n)] for i in range(n)
    ]


def mat_mul(field, a, b):
    n = len(b)
    cols = len(b[0]) if n else 0
    out = []
    for row in a:
        new = [field.zero] * cols
        for k, coeff in enumerate(row):
            if field.is_zero(coeff):
                continue
            brow = b[k]
            for j in range(cols):
                new[j] = field.add(new[j], field.mul(coeff, brow[j]))
        out.append(new)
    return out


def invert_matrix(field, rows):
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + ident for r, ident in zip(rows, identity(field, n))]
    m, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


def det(field, rows):
    """Determinant by fraction-free-ish elimination with exact division."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = field.one
    acc = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not field.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = field.neg(sign)
        acc = field.mul(acc, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            f = field.mul(m[i][c], inv)
            if field.is_zero(f):
                continue
            m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[c])]
    return field.mul(sign, acc)
