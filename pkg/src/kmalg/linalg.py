"""Exact dense linear algebra over Fraction or Scalar entries.

Everything here is plain Gaussian elimination with exact division; sizes in
this package stay small (a few dozen rows), so no fraction-free tricks are
needed. Matrices are lists of row lists; functions never mutate inputs.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar


def _clone(rows):
    return [list(r) for r in rows]


def rref(rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    m = _clone(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(a_rows, b):
    """One solution x of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    if not a_rows:
        return [] if not any(b) else None
    ncols = len(a_rows[0])
    aug = [list(row) + [bv] for row, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [_zero_like(aug[0][-1])] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def nullspace(a_rows):
    """Basis of the kernel of A, as a list of vectors."""
    if not a_rows:
        return []
    ncols = len(a_rows[0])
    red, pivots = rref(a_rows)
    zero = _zero_like(a_rows[0][0])
    one = zero + 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def coords_in_span(basis_vectors, target):
    """Coefficients expressing target as a combination of basis_vectors.

    Returns the coefficient list, or None when target is outside the span.
    Vectors are rows; the solve runs on the transpose.
    """
    if not basis_vectors:
        return [] if not any(target) else None
    ncols = len(basis_vectors)
    a = [[basis_vectors[j][i] for j in range(ncols)] for i in range(len(target))]
    return solve(a, list(target))


def determinant(rows):
    """Exact determinant by fraction Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = _clone(rows)
    det = _zero_like(m[0][0]) + 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return _zero_like(m[0][0])
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c]
        inv_rows = m[c]
        pv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], inv_rows)]
    return det


def leading_principal_minors(rows):
    """List [det(A_1), ..., det(A_n)] of leading principal minors."""
    n = len(rows)
    return [determinant([row[: k + 1] for row in rows[: k + 1]]) for k in range(n)]


def symmetric_signature(rows):
    """Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Congruence diagonalization: symmetric row/column operations preserve the
    signature, zero diagonals with a nonzero off-diagonal partner get repaired
    by adding the partner row/column, which creates a nonzero diagonal entry.
    """
    m = _clone(rows)
    n = len(m)
    pos = neg = zero = 0
    done = [False] * n
    for _ in range(n):
        idx = next((i for i in range(n) if not done[i] and m[i][i]), None)
        if idx is None:
            # repair: find i (not done) with some off-diagonal partner j
            repaired = False
            for i in range(n):
                if done[i]:
                    continue
                for j in range(n):
                    if j != i and not done[j] and m[i][j]:
                        for k in range(n):
                            m[i][k] = m[i][k] + m[j][k]
                        for k in range(n):
                            m[k][i] = m[k][i] + m[k][j]
                        repaired = True
                        break
                if repaired:
                    idx = i
                    break
            if not repaired:
                zero += sum(1 for i in range(n) if not done[i])
                break
        d = m[idx][idx]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(n):
            if i != idx and not done[i] and m[i][idx]:
                f = m[i][idx] / d
                for k in range(n):
                    m[i][k] = m[i][k] - f * m[idx][k]
                for k in range(n):
                    m[k][i] = m[k][i] - f * m[k][idx]
        done[idx] = True
    return pos, neg, zero


def _zero_like(x):
    if isinstance(x, Scalar):
        return Scalar(0)
    return Fraction(0)


# -- real flattening of complex vectors --------------------------------

def real_flatten(vec):
    """Scalar vector -> rational vector (all real parts, then all imag parts)."""
    out = [s.re for s in vec]
    out.extend(s.im for s in vec)
    return out


def real_unflatten(vec):
    """Inverse of real_flatten."""
    n = len(vec) // 2
    return tuple(Scalar(vec[i], vec[n + i]) for i in range(n))


def coords_in_real_span(basis_vectors, target):
    """Real (rational) coefficients expressing a Scalar vector in a basis.

    basis_vectors and target are Scalar vectors; coefficients are sought in Q,
    i.e. membership in the real span.
    """
    flat_basis = [real_flatten(v) for v in basis_vectors]
    return coords_in_span(flat_basis, real_flatten(target))
