import random
from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan_toric import cartan_matrix, linalg
from cartan_toric import peterson as pt
from cartan_toric.fan import QuotientPoint, zero_pattern_fixed_point
from cartan_toric.weyl import all_subsets

a_, b_, c_, t_ = sympy.symbols("a b c t")
nonzero = st.fractions(min_value=-40, max_value=40, max_denominator=12).filter(lambda x: x != 0)


def sym_M(g):
    g = sympy.Matrix(g)
    size = g.shape[0]
    e = sympy.Matrix(size, size, lambda r, c: 1 if c == r + 1 else 0)
    return sympy.simplify(g.inv() * e * g)


def sym_u3():
    return [[1, 0, 0], [a_, 1, 0], [b_, c_, 1]]


def test_sl2_conjugation_oracle():
    M = sym_M([[1, 0], [t_, 1]])
    assert M == sympy.Matrix([[t_, 1], [-t_**2, -t_]])
    for t in (Fr(3), Fr(-2, 7)):
        assert pt.q_alpha(pt.sl2_cell(t), 1) == t**2
        assert pt.in_peterson(pt.sl2_cell(t))


def test_sl3_conjugation_oracle():
    M = sym_M(sym_u3())
    assert sympy.expand(-M[1, 0]) == sympy.expand(a_**2 - b_)
    assert sympy.expand(-M[2, 1]) == sympy.expand(b_ + c_**2 - a_ * c_)
    assert sympy.factor(M[2, 0]) in (sympy.factor(a_**2 * c_ - a_ * b_ - b_ * c_),
                                     sympy.factor(-(a_**2 * c_ - a_ * b_ - b_ * c_)))


@given(nonzero, nonzero, nonzero)
@settings(max_examples=60, deadline=None)
def test_sl3_q_values_match_sympy(a, b, c):
    g = pt.lower_unipotent({(1, 0): a, (2, 0): b, (2, 1): c}, 3)
    M = sym_M(sym_u3()).subs({a_: sympy.Rational(a.numerator, a.denominator),
                              b_: sympy.Rational(b.numerator, b.denominator),
                              c_: sympy.Rational(c.numerator, c.denominator)})
    for i in (1, 2):
        assert pt.q_alpha(g, i) == Fr(str(-M[i, i - 1]))
    assert pt.in_peterson(g) == (a * a * c - a * b - b * c == 0)


def test_sl3_closed_forms_by_elimination():
    bsol = sympy.solve(a_**2 * c_ - a_ * b_ - b_ * c_, b_)[0]
    q1 = sympy.simplify((a_**2 - b_).subs(b_, bsol))
    q2 = sympy.simplify((b_ + c_**2 - a_ * c_).subs(b_, bsol))
    assert sympy.simplify(q1 - a_**3 / (a_ + c_)) == 0
    assert sympy.simplify(q2 - c_**3 / (a_ + c_)) == 0


def test_cell_examples():
    p = pt.sl3_cell(1, 1)
    assert p.g[2][0] == Fr(1, 2)
    assert (pt.q_alpha(p, 1), pt.q_alpha(p, 2)) == (Fr(1, 2), Fr(1, 2))
    p = pt.sl3_cell(2, -1)
    assert p.g[2][0] == -4
    assert (pt.q_alpha(p, 1), pt.q_alpha(p, 2)) == (8, -1)
    with pytest.raises(ZeroDivisionError):
        pt.sl3_cell(1, -1)
    u = pt.sl2_cell(3)
    assert u.g == ((1, 0), (3, 1)) and pt.q_alpha(u, 1) == 9


@pytest.mark.parametrize("n", [1, 2])
def test_samples_are_on_y_and_match_closed_forms(n):
    for params, p in pt.sample_peterson_cell(n, 100, seed=4):
        assert pt.in_peterson(p)
        q = tuple(pt.q_alpha(p, i) for i in range(1, n + 1))
        assert q == ((params[0] ** 2,) if n == 1 else pt.sl3_closed_form(*params))
        assert all(pt.delta(p, i) == 1 for i in range(1, n + 1))


def test_jacobian_matches_sympy():
    J = sympy.Matrix([a_**3 / (a_ + c_), c_**3 / (a_ + c_)]).jacobian([a_, c_])
    rng = random.Random(2)
    for _ in range(30):
        a, c = pt.random_rational(rng), pt.random_rational(rng)
        if a + c == 0:
            continue
        ref = J.subs({a_: sympy.Rational(a.numerator, a.denominator), c_: sympy.Rational(c.numerator, c.denominator)})
        ours = pt.cell_jacobian((a, c))
        assert all(ours[i][j] == Fr(str(ref[i, j])) for i in range(2) for j in range(2))
    assert pt.cell_jacobian((Fr(1),)) == [[2]]
    assert linalg.rank(pt.cell_jacobian((1, 1))) == 2


@pytest.mark.parametrize("n", [1, 2])
def test_jacobian_rank(n):
    r = pt.jacobian_rank_check(n, 10, seed=0)
    assert r["status"] == "pass" and r["rank"] == n


@pytest.mark.parametrize("size", [2, 3, 4, 5])
def test_signed_longest_representative(size):
    n = size - 1
    w0 = pt.signed_longest(size)
    assert linalg.det(w0) == 1
    w0inv = linalg.inverse(w0)
    for i in range(1, n + 1):
        istar = n + 1 - i
        e = [[Fr(int(r == istar - 1 and c == istar)) for c in range(size)] for r in range(size)]
        f = [[Fr(int(r == i and c == i - 1)) for c in range(size)] for r in range(size)]
        # f_i = -Ad(w0^{-1}) e_{i*}
        assert linalg.matmul(linalg.matmul(w0inv, e), w0) == [[-x for x in row] for row in f]
    assert all(pt.q_alpha(pt.PetersonPoint(w0), i) == 1 for i in range(1, size))
    if size == 2:
        assert w0 == [[0, -1], [1, 0]]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fixed_points(n):
    for J in all_subsets(n):
        w = pt.signed_w(n, J)
        assert pt.in_peterson(w)
        assert pt.fixed_point_image_check(n, J)
        assert pt.psi(w).zero_pattern == zero_pattern_fixed_point(J, n).zero_pattern


def test_fixed_point_examples():
    assert pt.psi(pt.signed_w(2, {0, 1})).zero_pattern == (frozenset({0, 1}), frozenset())
    p = pt.psi(pt.signed_w(2, set()))
    assert p == QuotientPoint((1, 1), (0, 0))
    assert pt.psi(pt.signed_w(1, {0})).zero_pattern == (frozenset({0}), frozenset())


def test_psi_of_cell_point():
    assert pt.psi(pt.sl2_cell(5)) == QuotientPoint((1,), (25,))


def test_delta_examples():
    assert pt.delta([[1, 0, 0], [4, 1, 0], [2, 3, 1]], 2) == 1
    assert pt.delta([[Fr(1, 3), -1], [1, 0]], 1) == Fr(1, 3)
    b = [[2, 5, 1], [0, 3, 7], [0, 0, Fr(1, 6)]]
    assert [pt.delta(b, i) for i in (1, 2, 3)] == [2, 6, 1]


@pytest.mark.parametrize("n", [1, 2])
def test_right_borel_laws(n):
    rng = random.Random(9)
    size = n + 1
    for _, g in pt.sample_peterson_cell(n, 30, seed=8):
        diag = [pt.random_rational(rng) or Fr(1) for _ in range(n)]
        diag.append(1 / pt.varpi_of_diag(diag, n))
        b = [[diag[r] if r == c else (pt.random_rational(rng) if c > r else Fr(0)) for c in range(size)]
             for r in range(size)]
        gb = pt.PetersonPoint(linalg.matmul(g.g, b))
        for i in range(1, n + 1):
            assert pt.delta(gb, i) == pt.varpi_of_diag(diag, i) * pt.delta(g, i)
            assert pt.q_alpha(gb, i) == pt.alpha_of_diag(diag, i) * pt.q_alpha(g, i)


def test_point_equal_mod_T():
    A1 = cartan_matrix("A1")
    p = QuotientPoint((1,), (4,))
    assert pt.point_equal_mod_T(p, p, A1)
    assert pt.point_equal_mod_T(p, QuotientPoint((2,), (16,)), A1)
    assert not pt.point_equal_mod_T(p, QuotientPoint((1,), (5,)), A1)
    A2 = cartan_matrix("A2")
    # x = 0 everywhere: y moves by alpha(t) = prod s_j^{c_ij}, which reaches any (y1, y2)
    assert pt.point_equal_mod_T(QuotientPoint((0, 0), (1, 1)), QuotientPoint((0, 0), (3, 5)), A2)


@pytest.mark.parametrize("n", [1, 2])
def test_equivariance(n):
    rng = random.Random(1)
    pts = pt.sample_peterson_cell(n, 20, seed=2)
    for _, g in pts:
        assert pt.equivariance_check(n, 1, g)["pass"]
        z = pt.random_rational(rng) or Fr(2)
        assert pt.equivariance_check(n, z, g)["pass"]
    for J in all_subsets(n):
        w = pt.signed_w(n, J)
        assert pt.equivariance_check(n, Fr(3, 2), w)["pass"]


def test_kostant():
    C = cartan_matrix("A2")
    for _, u in pt.sample_peterson_cell(2, 50, seed=6):
        r = pt.kostant_check(u, C)
        assert r["status"] in ("pass", "skipped")
    assert pt.kostant_check(pt.sl2_cell(0))["status"] == "skipped"
    fac = pt.bruhat_factor(pt.sl2_cell(3))
    assert fac[1] == [[Fr(1, 3), -1], [1, 0]]
    r = pt.kostant_check(pt.sl2_cell(3))
    assert r["status"] == "pass" and r["delta_prime"] == [Fr(1, 3)] and r["q"] == [9]


def test_kostant_sl2_symbolic():
    # u~ w0 = [[1/t, -1], [1, 0]] lies in u B, Delta' = 1/t and q = Delta'^{-2}
    t = sympy.symbols("t", nonzero=True)
    u = sympy.Matrix([[1, 0], [t, 1]])
    uw0 = sympy.Matrix([[1 / t, -1], [1, 0]])
    b = sympy.simplify(uw0.inv() * u)
    assert b[1, 0] == 0
    assert sympy.simplify((1 / uw0[0, 0]) ** 2 - t**2) == 0


def test_nonvanishing_negative_control():
    # a Hessenberg point with delta_1 = q_1 = 0 would be a falsification; psi refuses it
    g = [[0, 1], [-1, 0]]
    p = pt.PetersonPoint(g)
    assert pt.delta(p, 1) == 0 and pt.q_alpha(p, 1) != 0
    with pytest.raises(ValueError):
        QuotientPoint((0,), (0,))


def test_report_rank_one_and_two():
    r = pt.peterson_report(1, 20, seed=0)
    assert r["pass"] and r["worked_example"]["delta_prime"] == "1/3"
    r = pt.peterson_report(2, 100, seed=11)
    assert r["pass"] and r["kostant_factorized"] >= 95


def test_sampler_guard():
    with pytest.raises(ValueError):
        pt.sample_peterson_cell(3, 5, seed=0)


def test_numeric_sl4():
    r = pt.sl4_numeric_check(20, seed=3)
    assert r["pass"]


def test_fiber_count_is_exploratory():
    assert pt.cell_fiber_count(1, [Fr(4)]) == 2
    assert pt.cell_fiber_count(2, [3.0, 5.0]) > 0
