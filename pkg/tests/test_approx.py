import io
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import linprog

from smoothop.approx import best_approx, best_approx_sequence, sequence_to_csv
from smoothop.orthopoly import gauss_legendre
from smoothop.weighted_space import WeightedSpace, sup_grid, weighted_norm

INF = math.inf
SP2 = WeightedSpace(2.0, 1.0)
SPINF = WeightedSpace(INF, 1.0)
SP1 = WeightedSpace(1.0, 0.75)


def minimax_lp(f, n, alpha, grid):
    """Discrete weighted minimax via linear programming, as an independent
    check on the exchange solver.  Variables: Chebyshev coefficients and the
    level h; minimize h subject to |W (f - P)| <= h on the grid."""
    W = (1 - grid**2) ** alpha
    V = np.polynomial.chebyshev.chebvander(grid, n - 1)
    A = V * W[:, None]
    b = f(grid) * W
    m = grid.size
    # rows: +(b - A c) - h <= 0 and -(b - A c) - h <= 0
    A_ub = np.block([[-A, -np.ones((m, 1))], [A, -np.ones((m, 1))]])
    b_ub = np.concatenate([-b, b])
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    # dual simplex: the default interior-point path stops at ~1e-7 without
    # crossover, which is too loose to certify the exchange solver
    res = linprog(
        cost, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * (n + 1),
        method="highs-ds",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    assert res.status == 0
    return res.x[-1]


class TestProjection:
    def test_linear_function_best_constant(self):
        r = best_approx(lambda x: x, 1, SP2)
        assert_allclose(r.value, math.sqrt(16 / 105), rtol=1e-8)
        assert r.solver == "projection"
        assert abs(r.coefficients[0]) < 1e-14  # odd function, zero constant

    def test_quadratic_projection_constant(self):
        r = best_approx(lambda x: x**2, 1, SP2)
        assert_allclose(r.coefficients[0], 1 / 7, rtol=1e-8)
        assert_allclose(r.value, math.sqrt(64 / 2205), rtol=1e-8)

    def test_residual_orthogonal_to_basis(self):
        r = best_approx(np.abs, 6, SP2)
        rule = gauss_legendre(256)
        xs, qw = rule.nodes, rule.weights
        resid = np.abs(xs) - r.polynomial()(xs)
        w2 = (1 - xs**2) ** (2 * SP2.alpha)
        for k in range(6):
            tk = np.polynomial.chebyshev.Chebyshev.basis(k)(xs)
            assert abs(np.sum(qw * w2 * resid * tk)) < 1e-9

    def test_feasible_polynomial_gives_zero(self):
        f = np.polynomial.chebyshev.Chebyshev([0.3, -1.0, 0.25, 0.5])
        for sp in (SP2, SPINF, SP1):
            r = best_approx(f, 4, sp)
            assert r.value <= 1e-10


class TestExchange:
    def test_matches_linear_program(self):
        # same grid, same discrete problem, independent solver
        fs = {"abs": np.abs, "absshift": lambda x: np.abs(x - 0.25)}
        grid = sup_grid(4097)
        for name, f in fs.items():
            for n in (1, 2, 3, 5, 6):
                lp = minimax_lp(f, n, 1.0, grid)
                r = best_approx(f, n, SPINF)
                assert_allclose(r.value, lp, rtol=1e-9, err_msg=f"{name}, n={n}")

    def test_equioscillation_certificate(self):
        r = best_approx(np.abs, 5, SPINF)
        assert r.equioscillation is True
        assert r.residual_norm_gap <= 1e-9 * r.value + 1e-12
        assert not r.flags

    def test_even_function_degree_parity_plateau(self):
        r1 = best_approx(np.abs, 1, SPINF)
        r2 = best_approx(np.abs, 2, SPINF)
        assert_allclose(r1.value, r2.value, rtol=1e-9)

    def test_value_bounded_by_function_norm(self):
        for f in (np.abs, lambda x: np.sign(x) * np.abs(x) ** 1.5):
            r = best_approx(f, 1, SPINF)
            assert r.value <= weighted_norm(f, SPINF) + 1e-10


class TestIRLS:
    def test_median_like_constant_for_abs(self):
        # reference from golden-section + 400k-point midpoint rule
        r = best_approx(np.abs, 1, SP1)
        assert r.solver == "irls"
        assert_allclose(r.value, 0.3085245805, atol=2e-4)

    def test_sequences_monotone(self):
        for f in (np.abs, lambda x: np.abs(x - 0.25)):
            seq = best_approx_sequence(f, 12, SP1)
            vals = [r.value for r in seq]
            assert all(b <= a + 1e-9 for a, b in zip(vals, vals[1:]))
            assert not any("monotonicity_violation" in r.flags for r in seq)

    def test_general_p(self):
        sp = WeightedSpace(3.0, 1.0)
        r = best_approx(np.abs, 4, sp)
        assert r.solver == "irls"
        assert 0 < r.value < weighted_norm(np.abs, sp)


class TestSequences:
    def test_zero_function(self):
        seq = best_approx_sequence(lambda x: np.zeros_like(x), 4, SP2)
        assert all(r.value <= 1e-14 for r in seq)

    def test_polynomial_tail_vanishes(self):
        f = np.polynomial.chebyshev.Chebyshev([0.1, 0.2, -0.4, 1.0])  # degree 3
        seq = best_approx_sequence(f, 6, SP2)
        assert all(seq[nu - 1].value <= 1e-10 for nu in (4, 5, 6))
        assert seq[0].value > 1e-3

    def test_abs_p2_sequence_decreases(self):
        seq = best_approx_sequence(np.abs, 32, SP2)
        vals = np.array([r.value for r in seq])
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) <= 1e-9)

    def test_scale_equivariance(self):
        c = -3.7
        for sp in (SP2, SPINF, SP1):
            base = best_approx(np.abs, 3, sp).value
            scaled = best_approx(lambda x: c * np.abs(x), 3, sp).value
            assert_allclose(scaled, abs(c) * base, rtol=1e-9)

    def test_csv_export_columns(self):
        seq = best_approx_sequence(np.abs, 3, SP2)
        buf = io.StringIO()
        sequence_to_csv(seq, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "ν,E_ν,solver,iterations,gap"
        assert len(lines) == 4
        assert lines[1].split(",")[2] == "projection"

    def test_validation_errors(self):
        with pytest.raises(ValueError):
            best_approx(np.abs, 0, SP2)
        with pytest.raises(ValueError, match="admissible"):
            best_approx(np.abs, 2, WeightedSpace(2.0, 0.3))
        with pytest.raises(ValueError):
            best_approx_sequence(np.abs, 0, SP2)
