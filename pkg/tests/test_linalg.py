from fractions import Fraction

from kmalg import linalg
from kmalg.scalars import Scalar

from oracles import bareiss_determinant

F = Fraction


def test_rref_and_rank():
    m = [[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]]
    red, pivots = linalg.rref(m)
    assert pivots == [0, 1]
    assert linalg.rank(m) == 2


def test_solve_and_nullspace():
    a = [[F(2), F(-1)], [F(-1), F(2)]]
    x = linalg.solve(a, [F(1), F(1)])
    assert x == [F(1), F(1)]
    assert linalg.solve([[F(1), F(1)], [F(1), F(1)]], [F(0), F(1)]) is None
    null = linalg.nullspace([[F(1), F(1)]])
    assert len(null) == 1
    assert null[0][0] + null[0][1] == 0


def test_solve_over_scalars():
    a = [[Scalar(0, 1)]]
    x = linalg.solve(a, [Scalar(1)])
    assert x == [Scalar(0, -1)]


def test_coords_in_span():
    basis = [[F(1), F(0), F(1)], [F(0), F(1), F(1)]]
    assert linalg.coords_in_span(basis, [F(2), F(3), F(5)]) == [F(2), F(3)]
    assert linalg.coords_in_span(basis, [F(0), F(0), F(1)]) is None


def test_determinant_against_bareiss():
    m = [[F(2), F(-1), F(0)], [F(-1), F(2), F(-1)], [F(0), F(-1), F(2)]]
    assert linalg.determinant(m) == bareiss_determinant(m) == 4
    s = [[F(1, 2), F(3)], [F(-2), F(5, 7)]]
    assert linalg.determinant(s) == bareiss_determinant(s)


def test_leading_minors():
    m = [[F(2), F(-1)], [F(-1), F(2)]]
    assert linalg.leading_principal_minors(m) == [2, 3]


def test_signatures():
    assert linalg.symmetric_signature([[F(2), F(0)], [F(0), F(3)]]) == (2, 0, 0)
    assert linalg.symmetric_signature([[F(-1), F(0)], [F(0), F(-5)]]) == (0, 2, 0)
    # hyperbolic plane: zero diagonal, repaired by a symmetric row/col add
    assert linalg.symmetric_signature([[F(0), F(1)], [F(1), F(0)]]) == (1, 1, 0)
    assert linalg.symmetric_signature([[F(0), F(0)], [F(0), F(0)]]) == (0, 0, 2)
    assert linalg.symmetric_signature([[F(1), F(1)], [F(1), F(1)]]) == (1, 0, 1)


def test_real_flatten_round_trip():
    vec = (Scalar(1, 2), Scalar(F(-1, 3), 0))
    assert linalg.real_unflatten(linalg.real_flatten(vec)) == vec


def test_coords_in_real_span():
    # i*v is not in the real span of v
    v = (Scalar(1), Scalar(0, 1))
    assert linalg.coords_in_real_span([v], v) == [F(1)]
    iv = (Scalar(0, 1), Scalar(-1))
    assert linalg.coords_in_real_span([v], iv) is None
