import numpy as np
import pytest

from leftdef import (
    InitKind,
    Sequence,
    SolverOverflowError,
    ValidationError,
    apply_L,
    make_preset,
    solve_recurrence,
    wronskian,
    wronskian_constancy_report,
    wronskian_sequence,
)
from leftdef.verify import solution_residual_ratio


def constant_coeffs(p=1.0, q=0.0, w=1.0, length=16):
    return make_preset("constant", {"p": p, "q": q, "w": w}, length=length)


class TestApplyL:
    def test_constant_u_zero_q(self):
        c = constant_coeffs()
        out = apply_L(c, Sequence(0, np.full(10, 3.0)))
        assert out.offset == 1
        np.testing.assert_allclose(out.values, 0.0)

    def test_constant_u_general_q(self):
        c = make_preset("power", {"q_scale": 2.0, "q_exp": 1.0}, length=10)
        out = apply_L(c, Sequence(0, np.full(8, 5.0)))
        # Du = 0 leaves q(n) * u(n) = 2n * 5
        expect = [2 * n * 5.0 for n in range(1, 7)]
        np.testing.assert_allclose(out.values.real, expect)

    def test_second_difference_of_squares(self):
        c = constant_coeffs()
        u = Sequence(0, np.arange(5, dtype=float) ** 2)
        out = apply_L(c, u)
        np.testing.assert_allclose(out.values.real, [-2.0, -2.0, -2.0])

    def test_window_too_short(self):
        c = constant_coeffs(length=2)
        with pytest.raises(Exception):
            apply_L(c, Sequence(0, [1.0, 2.0]))


class TestSolveRecurrence:
    def test_linear_solution_at_lambda_zero(self):
        c = constant_coeffs()
        sol = solve_recurrence(c, 0.0, InitKind.VALUE_PAIR, 0.0, 1.0, 10)
        np.testing.assert_allclose(sol.values.values.real, np.arange(12))

    def test_period_six_at_lambda_one(self):
        c = constant_coeffs()
        sol = solve_recurrence(c, 1.0, InitKind.VALUE_PAIR, 0.0, 1.0, 8)
        np.testing.assert_allclose(
            sol.values.values.real, [0, 1, 1, 0, -1, -1, 0, 1, 1, 0], atol=1e-14)

    def test_residual_against_apply_L_oracle(self):
        c = make_preset("random", length=102, rng_seed=5)
        sol = solve_recurrence(c, 2 + 1j, InitKind.VALUE_PAIR, 1.0, 0.5 - 0.25j, 100)
        assert solution_residual_ratio(c, sol) <= 1.0

    def test_quasiderivative_init(self):
        c = constant_coeffs(p=2.0)
        sol = solve_recurrence(c, 0.5, InitKind.VALUE_AND_QUASIDERIVATIVE,
                               1.0, 3.0, 6)
        # u(0) = u(1) - b/p(0)
        assert sol.values.at(0) == pytest.approx(1.0 - 3.0 / 2.0)
        assert sol.values.at(1) == pytest.approx(1.0)

    def test_linearity_of_solution_space(self):
        c = make_preset("random", length=40, rng_seed=8)
        lam = 1.5
        a = solve_recurrence(c, lam, InitKind.VALUE_PAIR, 1.0, 0.0, 30)
        b = solve_recurrence(c, lam, InitKind.VALUE_PAIR, 0.0, 1.0, 30)
        al, be = 2.0 - 1.0j, -0.5 + 3.0j
        combo = solve_recurrence(c, lam, InitKind.VALUE_PAIR, al, be, 30)
        mix = al * a.values.values + be * b.values.values
        scale = max(1.0, np.max(np.abs(mix)))
        assert np.max(np.abs(combo.values.values - mix)) <= 1e-10 * scale

    def test_overflow_raises(self):
        c = constant_coeffs(length=80)
        with pytest.raises(SolverOverflowError):
            solve_recurrence(c, -1e8, InitKind.VALUE_PAIR, 0.0, 1.0, 78)

    def test_nonfinite_lambda_rejected(self):
        c = constant_coeffs()
        with pytest.raises(ValidationError):
            solve_recurrence(c, np.nan, InitKind.VALUE_PAIR, 0.0, 1.0, 5)


class TestWronskian:
    def test_equal_arguments_vanish(self):
        c = constant_coeffs()
        u = Sequence(0, np.arange(8, dtype=float) ** 2 + 1)
        for n in range(6):
            assert wronskian(c, u, u, n).value == 0

    def test_direct_substitution(self):
        c = constant_coeffs()
        one = Sequence(0, np.ones(8))
        n_seq = Sequence(0, np.arange(8, dtype=float))
        for n in range(6):
            assert wronskian(c, one, n_seq, n).value == pytest.approx(1.0)

    def test_antisymmetry_exact(self):
        c = make_preset("random", length=12, rng_seed=3)
        rng = np.random.default_rng(4)
        u = Sequence(0, rng.normal(size=10) + 1j * rng.normal(size=10))
        v = Sequence(0, rng.normal(size=10) + 1j * rng.normal(size=10))
        w_uv = wronskian_sequence(c, u, v).values
        w_vu = wronskian_sequence(c, v, u).values
        np.testing.assert_array_equal(w_uv, -w_vu)

    def test_constancy_for_lambda_zero_pair(self):
        c = constant_coeffs()
        phi = solve_recurrence(c, 0.0, InitKind.VALUE_PAIR, 1.0, 1.0, 12)
        theta = solve_recurrence(c, 0.0, InitKind.VALUE_PAIR, 0.0, 1.0, 12)
        w = wronskian_sequence(c, phi.values, theta.values)
        np.testing.assert_allclose(w.values.real, 1.0, atol=1e-12)
        rep = wronskian_constancy_report(c, phi, theta)
        assert rep.holds

    def test_self_pair_reports_zero(self):
        c = constant_coeffs()
        phi = solve_recurrence(c, 0.25, InitKind.VALUE_PAIR, 1.0, 2.0, 10)
        rep = wronskian_constancy_report(c, phi, phi)
        assert rep.lhs == 0.0 and rep.holds

    def test_mismatched_lambda_rejected(self):
        c = constant_coeffs()
        phi = solve_recurrence(c, 0.0, InitKind.VALUE_PAIR, 1.0, 1.0, 8)
        theta = solve_recurrence(c, 1.0, InitKind.VALUE_PAIR, 0.0, 1.0, 8)
        with pytest.raises(ValidationError):
            wronskian_constancy_report(c, phi, theta)
