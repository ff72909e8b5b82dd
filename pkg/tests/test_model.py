import math

import numpy as np
import pytest

from alleewaves.model import (CaseKind, ModelParams, classify_case,
                              discriminant, validate_model_params)

SQRT2 = math.sqrt(2.0)


class TestValidateModelParams:
    def test_consistent_closure(self):
        beta = 5.9 + 1.0 / math.sqrt(3.0) - 1.0  # ~5.47735
        rep = validate_model_params(5.9, 3.0, beta, beta)
        assert rep.closure_consistent
        assert rep.closure_gap == pytest.approx(0.0, abs=1e-12)
        assert rep.mortality_gap == 0.0

    def test_unit_parameters(self):
        rep = validate_model_params(1.0, 1.0, 1.0, 1.0)
        assert rep.closure_gap == 0.0
        assert rep.mortality_gap == 0.0
        assert rep.closure_consistent

    def test_figure1_regime_is_inconsistent(self):
        # beta implied by the family at the figure-1 inputs violates closure
        rep = validate_model_params(5.9, 3.0, 6.04, 6.04)
        assert rep.closure_gap == pytest.approx(0.56265, abs=1e-5)
        assert rep.mortality_gap == 0.0
        assert not rep.closure_consistent

    def test_nonfinite_raises(self):
        with pytest.raises(ValueError):
            validate_model_params(math.nan, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            validate_model_params(1.0, math.inf, 1.0, 1.0)

    def test_negative_reported_not_fatal(self):
        rep = validate_model_params(-1.0, 1.0, 1.0, 1.0)
        assert not rep.positive["k"]
        assert not rep.closure_consistent

    def test_monotone_in_tol(self):
        rng = np.random.RandomState(7)
        for _ in range(100):
            k, d, m, b = rng.uniform(0.1, 5.0, 4)
            t1, t2 = sorted(rng.uniform(1e-6, 2.0, 2))
            r1 = validate_model_params(k, d, m, b, tol=t1)
            r2 = validate_model_params(k, d, m, b, tol=t2)
            if r1.closure_consistent:
                assert r2.closure_consistent


class TestModelParams:
    def test_requires_positive(self):
        with pytest.raises(ValueError):
            ModelParams(k=0.0, delta=1.0, m=1.0, beta=1.0)

    def test_gaps(self):
        p = ModelParams(k=1.0, delta=1.0, m=1.0, beta=1.0)
        assert p.closure_gap() == 0.0
        assert p.mortality_gap() == 0.0


class TestDiscriminant:
    def test_figure1_value(self):
        lam = (5.9 - 2.4) / SQRT2
        assert discriminant(lam, 0.2) == pytest.approx(5.325, abs=1e-12)

    def test_degenerate_value(self):
        assert discriminant(2.0, 1.0) == 0.0

    def test_figure2_value(self):
        lam = (12.2 - 6.0) / SQRT2
        assert discriminant(lam, 5.0) == pytest.approx(-0.78, abs=1e-12)

    def test_even_in_lambda(self):
        rng = np.random.RandomState(1)
        for _ in range(200):
            lam, mu = rng.uniform(-10, 10, 2)
            assert discriminant(lam, mu) == discriminant(-lam, mu)

    def test_nonfinite_raises(self):
        with pytest.raises(ValueError):
            discriminant(math.nan, 0.0)


class TestClassifyCase:
    def test_examples(self):
        assert classify_case(2.47487, 0.2) is CaseKind.HYPERBOLIC
        assert classify_case(4.38406, 5.0) is CaseKind.TRIGONOMETRIC
        assert classify_case(2.0, 1.0) is CaseKind.DEGENERATE

    def test_zero_tolerance_requires_exact_tie(self):
        rng = np.random.RandomState(3)
        for _ in range(500):
            lam, mu = rng.uniform(-5, 5, 2)
            got = classify_case(lam, mu, eps_disc=0.0)
            if got is CaseKind.DEGENERATE:
                assert lam * lam == 4.0 * mu

    def test_exhaustive_and_exclusive(self):
        rng = np.random.RandomState(4)
        for _ in range(500):
            lam, mu = rng.uniform(-5, 5, 2)
            assert classify_case(lam, mu) in CaseKind

    def test_negative_eps_rejected(self):
        with pytest.raises(ValueError):
            classify_case(1.0, 1.0, eps_disc=-1.0)
