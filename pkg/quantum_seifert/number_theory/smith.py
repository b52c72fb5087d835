"""Smith normal form of integer matrices with unimodular transforms."""
from itertools import product
from typing import List, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def _least_position(matr: Matrix, s: int):
    best = None
    for i in range(s, matr.rows):
        for j in range(s, matr.cols):
            if matr[i, j] != 0 and (best is None or abs(matr[i, j]) < abs(matr[best])):
                best = (i, j)
    return best


def smith_form(matr) -> Tuple[Matrix, Matrix, Matrix]:
    """Returns (D, P, Q) with D = P * matr * Q diagonal and d_1 | d_2 | ...

    P and Q are unimodular; the diagonal entries are non-negative.
    """
    D = Matrix(matr).copy()
    rows, cols = D.rows, D.cols
    P, Q = Matrix.eye(rows), Matrix.eye(cols)
    for s in range(min(rows, cols)):
        while True:
            pos = _least_position(D, s)
            if pos is None:
                return D, P, Q
            i, j = pos
            D.row_swap(s, i)
            P.row_swap(s, i)
            D.col_swap(s, j)
            Q.col_swap(s, j)
            pivot = D[s, s]
            clean = True
            for k in range(s + 1, rows):
                q = D[k, s] // pivot
                if q:
                    D.row_op(k, lambda val, col: val - q * D[s, col])
                    P.row_op(k, lambda val, col: val - q * P[s, col])
                clean = clean and D[k, s] == 0
            for k in range(s + 1, cols):
                q = D[s, k] // pivot
                if q:
                    D.col_op(k, lambda val, row: val - q * D[row, s])
                    Q.col_op(k, lambda val, row: val - q * Q[row, s])
                clean = clean and D[s, k] == 0
            if not clean:
                continue
            # pivot must divide the remaining block
            bad = next(
                ((k, m) for k in range(s + 1, rows) for m in range(s + 1, cols) if D[k, m] % pivot != 0),
                None,
            )
            if bad is None:
                break
            k = bad[0]
            D.row_op(s, lambda val, col: val + D[k, col])
            P.row_op(s, lambda val, col: val + P[k, col])
        if D[s, s] < 0:
            D.row_op(s, lambda val, col: -val)
            P.row_op(s, lambda val, col: -val)
    return D, P, Q


def invariant_factors(matr) -> List[int]:
    """Diagonal of sympy's Smith normal form, as positive integers."""
    snf = smith_normal_form(Matrix(matr), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.rows, snf.cols))]


def quotient_reps(matr) -> List[Tuple[int, ...]]:
    """Representatives of Z^n / M Z^n for a nonsingular integer matrix M.

    With D = P M Q the quotient is P^{-1} applied to the box prod_i [0, d_i).
    """
    D, P, _ = smith_form(matr)
    n = D.rows
    diag = [int(D[i, i]) for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("matrix is singular; the quotient is infinite")
    P_inv = P.inv()
    reps = []
    for z in product(*(range(d) for d in diag)):
        y = P_inv * Matrix(z)
        reps.append(tuple(int(v) for v in y))
    return reps
