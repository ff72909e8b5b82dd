import math
from dataclasses import replace

import numpy as np
import pytest

from alleewaves.algebraic import (closed_form_targets, coeff_residuals,
                                  match_root, solve_families)
from alleewaves.errors import NoConvergenceError
from alleewaves.exact import derive_set_a, derive_set_b


class TestCoeffResiduals:
    def test_set_a_is_exact_root(self):
        co = derive_set_a(1.2, 0.2, 5.9, 3.0, "upper")
        assert coeff_residuals(co).max_abs < 1e-12

    def test_set_b_is_exact_root(self):
        co = derive_set_b(1.0, 0.5, 1.0, 1.0, "upper")
        assert coeff_residuals(co).max_abs < 1e-12

    def test_violated_cubic_row(self):
        co = replace(derive_set_a(1.2, 0.2, 5.9, 3.0, "upper"), alpha1=1.0)
        r = coeff_residuals(co).r
        assert r[0] == 1.0  # 2*1 - 1**3

    def test_random_closure_both_families(self):
        rng = np.random.RandomState(21)
        for _ in range(250):
            a0 = rng.uniform(-5, 5)
            mu = rng.uniform(-5, 5)
            k = rng.uniform(0.01, 10)
            d = rng.uniform(0.1, 10)
            for br in ("upper", "lower"):
                assert coeff_residuals(derive_set_a(a0, mu, k, d, br)).max_abs < 1e-12
                if abs(a0) >= 0.1:
                    assert coeff_residuals(derive_set_b(a0, mu, k, d, br)).max_abs < 1e-12

    def test_nonfinite_rejected(self):
        co = replace(derive_set_a(1.2, 0.2, 5.9, 3.0, "upper"), c=math.nan)
        with pytest.raises(ValueError):
            coeff_residuals(co)


class TestSolveFamilies:
    def test_figure1_inputs_recover_set_a(self):
        roots = solve_families(5.9, 3.0, 0.2, 1.2)
        target = derive_set_a(1.2, 0.2, 5.9, 3.0, "upper")
        assert match_root(roots, target, tol=1e-6) is not None

    def test_unit_inputs_recover_both_families(self):
        roots = solve_families(1.0, 1.0, 0.5, 1.0)
        for _, target in closed_form_targets(1.0, 1.0, 0.5, 1.0):
            assert match_root(roots, target, tol=1e-6) is not None

    def test_alpha0_zero_set_b_not_applicable(self):
        targets = closed_form_targets(1.0, 1.0, 0.2, 0.0)
        assert all(name.startswith("Set A") for name, _ in targets)
        roots = solve_families(1.0, 1.0, 0.2, 0.0)
        for _, target in targets:
            assert match_root(roots, target, tol=1e-6) is not None

    def test_all_roots_pass_residuals(self):
        for r in solve_families(5.9, 3.0, 0.2, 1.2):
            assert coeff_residuals(r).max_abs < 1e-10

    def test_deterministic(self):
        a = solve_families(1.0, 1.0, 0.5, 1.0)
        b = solve_families(1.0, 1.0, 0.5, 1.0)
        assert len(a) == len(b)
        for ra, rb in zip(a, b):
            assert ra.as_tuple() == rb.as_tuple()

    def test_bad_delta(self):
        with pytest.raises(ValueError):
            solve_families(1.0, -1.0, 0.5, 1.0)

    def test_no_convergence_reports_best(self):
        # a start grid far from any root with no iterations allowed
        grid = [np.array([100.0, 100.0, 100.0, 100.0, 100.0, 100.0])]
        import alleewaves.algebraic as alg
        old = alg.least_squares

        def crippled(fun, x0, **kw):
            kw["max_nfev"] = 1
            return old(fun, x0, **kw)

        alg.least_squares = crippled
        try:
            with pytest.raises(NoConvergenceError) as exc:
                solve_families(1.0, 1.0, 0.5, 1.0, init_grid=grid)
            assert math.isfinite(exc.value.best_residual)
        finally:
            alg.least_squares = old
