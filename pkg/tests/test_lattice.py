from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from swcalc.lattice import (
    ClassTable,
    Lattice,
    LatticeError,
    QuadraticSolver,
    SingularMatrixError,
    determinant,
    format_class,
    gram_of,
    is_characteristic,
    is_characteristic_pairings,
    orthogonal_check,
    pair,
    parse_class_expression,
    solve_linear,
    solve_pairings,
    standard_lattice,
)

P11 = standard_lattice(11)
F_EXPR = "3H-E1-E2-E3-E4-E5-E6-E7-E8-E9"


def test_standard_lattice_shape():
    lat = standard_lattice(3)
    assert lat.name == "P3"
    assert lat.basis_labels == ("H", "E1", "E2", "E3")
    assert lat.gram == ((1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1))


def test_lattice_rejects_asymmetric_gram():
    with pytest.raises(LatticeError):
        Lattice("bad", [[1, 2], [0, 1]], ["a", "b"])


def test_fiber_class():
    table = ClassTable(P11, {"F": F_EXPR})
    f = table["F"]
    assert f.square() == 0
    assert pair(f, table["H"]) == 3
    assert pair(f, table["E1"]) == 1
    assert is_characteristic(f) is False


def test_paired_values():
    t = ClassTable(P11, {"F": F_EXPR, "V8": "2H-3E11", "u0": "F+E6-2E10-2E11"})
    assert t["V8"].square() == -5
    assert t["u0"].square() == -7
    assert pair(t["V8"], t["u0"]) == 0


def test_characteristic_iff_odd_coordinates():
    lat = standard_lattice(2)
    assert is_characteristic(lat.vector([3, 1, -1]))
    assert not is_characteristic(lat.vector([3, 2, -1]))


@given(st.integers(0, 12), st.data())
def test_van_der_blij(m, data):
    coords = [2 * data.draw(st.integers(-6, 6)) + 1 for _ in range(m + 1)]
    k = standard_lattice(m).vector(coords)
    assert is_characteristic(k)
    assert (k.square() - (1 - m)) % 8 == 0


def test_parse_class_expression():
    assert parse_class_expression("2F+H-E3") == [(2, "F"), (1, "H"), (-1, "E3")]
    assert parse_class_expression("-E1") == [(-1, "E1")]
    with pytest.raises(LatticeError):
        parse_class_expression("2F+*H")


def test_undefined_label():
    with pytest.raises(LatticeError, match="undefined class label 'Q'"):
        ClassTable(P11, {"X": "H+Q"})


def test_format_class_round_trip():
    t = ClassTable(P11, {"F": F_EXPR})
    text = format_class(t["F"] + t["E10"])
    assert text == "3H-E1-E2-E3-E4-E5-E6-E7-E8-E9+E10"
    assert t.evaluate(text) == t["F"] + t["E10"]


def test_orthogonal_check():
    t = ClassTable(P11, {"F": F_EXPR})
    assert orthogonal_check(t["E10"], [t["E1"], t["H"]])
    assert not orthogonal_check(t["E10"], [t["E10"]])


def test_gram_of_empty():
    with pytest.raises(ValueError):
        gram_of([])


def test_determinant_examples():
    assert determinant([[2, 1], [1, 2]]) == 3
    assert determinant([[-7, 1, 0, 0], [1, -2, 1, 0], [0, 1, -2, 1], [0, 0, 1, -2]]) == 25
    assert determinant([[1, 2], [2, 4]]) == 0


def test_singular_system():
    with pytest.raises(SingularMatrixError):
        solve_linear([[1, 2], [2, 4]], [1, 1])


def test_solve_pairings_simple():
    c, q = solve_pairings([[-2, 1], [1, -2]], [1, 1])
    assert c == [Fraction(-1), Fraction(-1)]
    assert q == -2


@st.composite
def invertible_symmetric(draw):
    n = draw(st.integers(1, 5))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(-6, 6))
    if sympy.Matrix(m).det() == 0:
        for i in range(n):
            m[i][i] += 13 * (i + 1)
    if sympy.Matrix(m).det() == 0:
        m = [[int(i == j) for j in range(n)] for i in range(n)]
    return m


@given(invertible_symmetric(), st.data())
def test_solve_pairings_round_trip(gram, data):
    n = len(gram)
    v = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    c, q = solve_pairings(gram, v)
    # G c = v
    assert [sum(gram[i][j] * c[j] for j in range(n)) for i in range(n)] == v
    oracle = sympy.Matrix([v]) * sympy.Matrix(gram).inv() * sympy.Matrix(v)
    assert q == Fraction(int(oracle[0].p), int(oracle[0].q))


@given(invertible_symmetric())
def test_determinant_matches_sympy(gram):
    assert determinant(gram) == int(sympy.Matrix(gram).det())


@given(invertible_symmetric(), st.data())
def test_quadratic_solver_agrees(gram, data):
    n = len(gram)
    v = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    s = QuadraticSolver(gram)
    c, q = solve_pairings(gram, v)
    assert s.square(v) == q
    assert s.coords(v) == c


def test_characteristic_pairings():
    g = [[-7, 1], [1, -2]]
    assert is_characteristic_pairings([3, 0], g)
    assert not is_characteristic_pairings([2, 0], g)


def test_solve_pairings_examples():
    c, q = solve_pairings([[-5, 1], [1, -2]], [3, 0])
    assert c == [Fraction(-2, 3), Fraction(-1, 3)] and q == -2
    assert solve_pairings([[-5, 1], [1, -2]], [1, 0])[1] == Fraction(-2, 9)
    c, q = solve_pairings([[-5, 1], [1, -2]], [0, 0])
    assert c == [0, 0] and q == 0


def test_gram_examples():
    t = ClassTable(standard_lattice(10), {"C": "E9-2E10", "S": "E8-E9"})
    assert gram_of([t["C"], t["S"]]) == [[-5, 1], [1, -2]]
    assert gram_of([standard_lattice(1).basis_vector("E1")]) == [[-1]]


vectors = st.lists(st.integers(-9, 9), min_size=6, max_size=6).map(standard_lattice(5).vector)


@given(vectors, vectors, vectors, st.integers(-5, 5))
def test_pairing_is_symmetric_bilinear(a, b, c, k):
    assert pair(a, b) == pair(b, a)
    assert pair(a + b, c) == pair(a, c) + pair(b, c)
    assert pair(k * a, b) == k * pair(a, b)


@given(invertible_symmetric(), st.data())
def test_round_trip_from_coordinates(gram, data):
    n = len(gram)
    c0 = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    v = [sum(gram[i][j] * c0[j] for j in range(n)) for i in range(n)]
    c, q = solve_pairings(gram, v)
    assert c == c0
    assert q == sum(c0[i] * gram[i][j] * c0[j] for i in range(n) for j in range(n))


@st.composite
def unimodular(draw, n):
    m = sympy.eye(n)
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            e = sympy.eye(n)
            e[i, j] = draw(st.integers(-2, 2))
            m = m * e
    return m


@given(invertible_symmetric(), st.data())
def test_square_is_basis_invariant(gram, data):
    n = len(gram)
    u = data.draw(unimodular(n))
    v = data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
    # new generators g'_i = sum_j u_ij g_j: G' = U G U^T, v' = U v
    g2 = u * sympy.Matrix(gram) * u.T
    v2 = u * sympy.Matrix(v)
    q2 = solve_pairings([[int(x) for x in g2.row(i)] for i in range(n)], [int(x) for x in v2])[1]
    assert q2 == solve_pairings(gram, v)[1]
