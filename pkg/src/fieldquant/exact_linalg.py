"""Dense linear algebra over exact fields (Fraction or CQ entries).

Matrices are plain lists of rows.  Every routine copies its input.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import CQ

__all__ = ["rref", "rank", "nullspace", "solve", "inverse", "hermitian_inertia", "matmul", "conj_transpose"]


def _conj(x):
    return x.conj() if isinstance(x, CQ) else x


def _copy(M):
    return [list(row) for row in M]


def rref(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = _copy(M)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, zero=0, one=1) -> list[list]:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    R, pivots = rref(M)
    ncols = len(M[0]) if M else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A, b):
    """Solve the square system ``A x = b``; ``b`` may be a vector or a matrix."""
    n = len(A)
    vector = not isinstance(b[0], (list, tuple))
    B = [[x] for x in b] if vector else _copy(b)
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    X = [row[n:] for row in R[:n]]
    return [x[0] for x in X] if vector else X


def inverse(A):
    n = len(A)
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return solve(A, eye)


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in zip(*B)] for row in A]


def conj_transpose(A):
    return [[_conj(x) for x in col] for col in zip(*A)]


def hermitian_inertia(H) -> tuple[int, int, int]:
    """Inertia ``(n_pos, n_neg, n_zero)`` of an exact Hermitian matrix.

    Congruence elimination: a nonzero diagonal pivot is removed by a Schur
    complement; when every remaining diagonal entry vanishes, a nonzero
    off-diagonal ``h_ij`` is folded into the diagonal with the congruence
    ``e_i -> e_i + conj(h_ij) e_j``, which makes ``h_ii = 2|h_ij|^2 > 0``.
    """
    A = _copy(H)
    n = len(A)
    for i in range(n):
        for j in range(i, n):
            if A[i][j] != _conj(A[j][i]):
                raise ValueError("matrix is not Hermitian")
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            t = _conj(A[i][j])
            for r in range(n):
                A[r][i] = A[r][i] + t * A[r][j]
            tc = _conj(t)
            for c in range(n):
                A[i][c] = A[i][c] + tc * A[j][c]
            piv = i
        d = A[piv][piv]
        d_real = d.re if isinstance(d, CQ) else d
        if d_real > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        col = {r: A[r][piv] for r in active}
        row = {c: A[piv][c] for c in active}
        for r in active:
            if not col[r]:
                continue
            f = col[r] / d
            Ar = A[r]
            for c in active:
                if row[c]:
                    Ar[c] = Ar[c] - f * row[c]
    return pos, neg, n - pos - neg
