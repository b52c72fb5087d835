from sympy import Matrix

from quantum_seifert.number_theory.smith import invariant_factors, quotient_reps, smith_form


def test_smith_form_is_diagonal_and_unimodular():
    M = Matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    D, P, Q = smith_form(M)
    assert P * M * Q == D
    assert abs(P.det()) == 1
    assert abs(Q.det()) == 1
    diag = [D[i, i] for i in range(3)]
    assert all(D[i, j] == 0 for i in range(3) for j in range(3) if i != j)
    assert diag[1] % diag[0] == 0 and diag[2] % diag[1] == 0
    assert diag == invariant_factors(M)


def test_invariant_factors():
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]


def test_quotient_reps_cover_each_class_once():
    M = Matrix([[2, 1], [1, 2]])
    reps = quotient_reps(M)
    assert len(reps) == 3
    M_inv = M.inv()
    # two representatives are equivalent iff their difference is in M Z^2
    for i, x in enumerate(reps):
        for y in reps[i + 1:]:
            diff = M_inv * Matrix([a - b for a, b in zip(x, y)])
            assert not all(v.is_integer for v in diff)
