"""Closed-form traveling-wave solutions and their building blocks.

The solution fields are linear in the logarithmic derivative phi = G'/G of
the auxiliary oscillator G'' + lam*G' + mu*G = 0:

    u(xi) = alpha1*phi(xi) + alpha0,   v(xi) = beta1*phi(xi) + beta0,

with xi = x - c*t.  Two coefficient families close the algebraic system:

Set A:  alpha1 = +-sqrt(2), beta1 = +-sqrt(2/delta), beta0 = alpha0/sqrt(delta),
        c = -+k/sqrt(2), lam = -+(k - 2*alpha0)/sqrt(2),
        beta = k*alpha0 - alpha0**2 + 2*mu

Set B:  alpha1 = +-sqrt(2), beta1 = +-sqrt(2/delta), beta0 = alpha0/sqrt(delta),
        lam = +-(alpha0**2 + 2*mu)/(sqrt(2)*alpha0),
        c = +-(2*k - 3*alpha0 + 6*mu/alpha0)/sqrt(2),
        beta = -(alpha0**2 - 2*mu)*(-k*alpha0 + alpha0**2 - 2*mu)/alpha0**2

The "upper" branch takes the top sign throughout; "lower" the bottom one.

Note: Set B's discriminant is (alpha0**2 - 2*mu)**2 / (2*alpha0**2) >= 0,
so Set B admits only the hyperbolic and degenerate regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .errors import CaseMismatchError, PoleError, SingularParameterError
from .model import DEFAULT_EPS_DISC, CaseKind, classify_case, discriminant

SQRT2 = math.sqrt(2.0)

# Relative denominator floor triggering PoleError (times |c1|+|c2|)
POLE_FLOOR = 1e-6

_BRANCH_SIGN = {"upper": 1.0, "lower": -1.0}


def _branch_sign(branch: str) -> float:
    try:
        return _BRANCH_SIGN[branch]
    except KeyError:
        raise ValueError(f"branch must be 'upper' or 'lower', got {branch!r}") from None


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Full parameterization of one traveling-wave solution.

    No invariants are enforced here: the residual machinery must accept
    deliberately inconsistent coefficients.  Outputs of derive_set_a /
    derive_set_b satisfy alpha1**2 = 2, delta*beta1**2 = 2 and
    beta0 = alpha0/sqrt(delta).
    """

    alpha1: float
    alpha0: float
    beta1: float
    beta0: float
    lam: float
    mu: float
    c: float
    beta_model: float
    k: float
    delta: float

    def as_tuple(self):
        return (
            self.alpha1, self.alpha0, self.beta1, self.beta0,
            self.lam, self.mu, self.c, self.beta_model, self.k, self.delta,
        )


def derive_set_a(alpha0, mu, k, delta, branch="upper") -> ExpansionCoeffs:
    """Family (a): wave speed c = -+k/sqrt(2)."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    sg = _branch_sign(branch)
    sd = math.sqrt(delta)
    return ExpansionCoeffs(
        alpha1=sg * SQRT2,
        alpha0=alpha0,
        beta1=sg * SQRT2 / sd,
        beta0=alpha0 / sd,
        lam=-sg * (k - 2.0 * alpha0) / SQRT2,
        mu=mu,
        c=-sg * k / SQRT2,
        beta_model=k * alpha0 - alpha0 * alpha0 + 2.0 * mu,
        k=k,
        delta=delta,
    )


def derive_set_b(alpha0, mu, k, delta, branch="upper") -> ExpansionCoeffs:
    """Family (b): wave speed c = +-(2k - 3*alpha0 + 6*mu/alpha0)/sqrt(2)."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if alpha0 == 0:
        raise SingularParameterError("Set B requires alpha0 != 0 (it divides)")
    sg = _branch_sign(branch)
    sd = math.sqrt(delta)
    a0sq = alpha0 * alpha0
    return ExpansionCoeffs(
        alpha1=sg * SQRT2,
        alpha0=alpha0,
        beta1=sg * SQRT2 / sd,
        beta0=alpha0 / sd,
        lam=sg * (a0sq + 2.0 * mu) / (SQRT2 * alpha0),
        mu=mu,
        c=sg * (2.0 * k - 3.0 * alpha0 + 6.0 * mu / alpha0) / SQRT2,
        beta_model=-(a0sq - 2.0 * mu) * (-k * alpha0 + a0sq - 2.0 * mu) / a0sq,
        k=k,
        delta=delta,
    )


def set_a_reference_alpha0(mu, k) -> float:
    """Reference alpha0 selection for family (a): -(2*sqrt(2*mu) + k)/2.

    Note it forces a strictly positive discriminant for k > 0, so it
    cannot produce the trigonometric or degenerate regimes.
    """
    if mu < 0:
        raise ValueError("mu must be >= 0 for this selection")
    return -(2.0 * math.sqrt(2.0 * mu) + k) / 2.0


def set_b_reference_alpha0(mu) -> float:
    """Reference alpha0 selection for family (b): sqrt(2*mu) (degenerate, lam=2*sqrt(mu))."""
    if mu < 0:
        raise ValueError("mu must be >= 0 for this selection")
    return math.sqrt(2.0 * mu)


@dataclass(frozen=True)
class SolutionSpec:
    """One fully-specified solution: family, sign branch, case, c1/c2, coefficients."""

    family: str          # 'A' or 'B'
    branch: str          # 'upper' or 'lower'
    case: CaseKind
    c1: float
    c2: float
    coeffs: ExpansionCoeffs

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise ValueError(f"family must be 'A' or 'B', got {self.family!r}")
        _branch_sign(self.branch)
        if self.c1 == 0 and self.c2 == 0:
            raise ValueError("(c1, c2) must not both be zero")
        actual = classify_case(self.coeffs.lam, self.coeffs.mu)
        if actual is not self.case:
            raise CaseMismatchError(
                f"case {self.case.value} inconsistent with lambda^2-4mu="
                f"{discriminant(self.coeffs.lam, self.coeffs.mu):.6g} ({actual.value})"
            )


def make_spec(family, alpha0, mu, k, delta, branch="upper", c1=1.0, c2=0.0,
              eps_disc=DEFAULT_EPS_DISC) -> SolutionSpec:
    """Derive the family coefficients and classify the case in one step."""
    if family == "A":
        coeffs = derive_set_a(alpha0, mu, k, delta, branch)
    elif family == "B":
        coeffs = derive_set_b(alpha0, mu, k, delta, branch)
    else:
        raise ValueError(f"family must be 'A' or 'B', got {family!r}")
    case = classify_case(coeffs.lam, coeffs.mu, eps_disc)
    return SolutionSpec(family=family, branch=branch, case=case,
                        c1=float(c1), c2=float(c2), coeffs=coeffs)


def flip_branch(spec: SolutionSpec) -> SolutionSpec:
    """The other sign branch of the same family instance."""
    other = "lower" if spec.branch == "upper" else "upper"
    if spec.family == "A":
        coeffs = derive_set_a(spec.coeffs.alpha0, spec.coeffs.mu,
                              spec.coeffs.k, spec.coeffs.delta, other)
    else:
        coeffs = derive_set_b(spec.coeffs.alpha0, spec.coeffs.mu,
                              spec.coeffs.k, spec.coeffs.delta, other)
    return replace(spec, branch=other, coeffs=coeffs)


def _check_case(case: CaseKind, lam, mu, eps_disc=DEFAULT_EPS_DISC):
    actual = classify_case(lam, mu, eps_disc)
    if actual is not case:
        raise CaseMismatchError(
            f"case {case.value} inconsistent with lambda^2-4mu="
            f"{discriminant(lam, mu):.6g} ({actual.value})"
        )


def eval_G(case: CaseKind, lam, mu, c1, c2, xi):
    """The auxiliary solution G and its derivative G' at xi (vectorized).

    Hyperbolic:     G = exp(-lam*xi/2) * (c1*sinh(r*xi/2) + c2*cosh(r*xi/2))
    Trigonometric:  G = exp(-lam*xi/2) * (c1*cos(w*xi) + c2*sin(w*xi))
    Degenerate:     G = (c1 + c2*xi) * exp(-lam*xi/2)

    with r = sqrt(lam^2-4mu), w = sqrt(4mu-lam^2)/2.
    """
    _check_case(case, lam, mu)
    xi = np.asarray(xi, dtype=float)
    E = np.exp(-0.5 * lam * xi)
    if case is CaseKind.HYPERBOLIC:
        r = math.sqrt(lam * lam - 4.0 * mu)
        th = 0.5 * r * xi
        A = c1 * np.sinh(th) + c2 * np.cosh(th)
        Ap = 0.5 * r * (c1 * np.cosh(th) + c2 * np.sinh(th))
    elif case is CaseKind.TRIGONOMETRIC:
        w = 0.5 * math.sqrt(4.0 * mu - lam * lam)
        A = c1 * np.cos(w * xi) + c2 * np.sin(w * xi)
        Ap = w * (-c1 * np.sin(w * xi) + c2 * np.cos(w * xi))
    else:
        A = c1 + c2 * xi
        Ap = np.full_like(xi, float(c2))
    G = E * A
    Gp = E * (Ap - 0.5 * lam * A)
    return G, Gp


def _phi_den(case: CaseKind, lam, mu, c1, c2, xi):
    """phi = G'/G via the case-specific closed ratio, plus a bounded denominator.

    The exponential prefactor of G cancels analytically; the hyperbolic ratio
    is rewritten through tanh so intermediates stay bounded for large |xi|
    (cosh overflows near |theta| ~ 710 otherwise).

    Returns (phi, den) where den is the scaled denominator whose zeros are
    the poles of phi; entries of phi where den ~ 0 are unreliable.
    """
    xi = np.asarray(xi, dtype=float)
    if case is CaseKind.HYPERBOLIC:
        r = math.sqrt(lam * lam - 4.0 * mu)
        T = np.tanh(0.5 * r * xi)
        num = c1 + c2 * T
        den = c1 * T + c2
        with np.errstate(divide="ignore", invalid="ignore"):
            phi = -0.5 * lam + 0.5 * r * num / den
    elif case is CaseKind.TRIGONOMETRIC:
        w = 0.5 * math.sqrt(4.0 * mu - lam * lam)
        s, co = np.sin(w * xi), np.cos(w * xi)
        num = -c1 * s + c2 * co
        den = c1 * co + c2 * s
        with np.errstate(divide="ignore", invalid="ignore"):
            phi = -0.5 * lam + w * num / den
    elif case is CaseKind.DEGENERATE:
        den = c1 + c2 * xi
        with np.errstate(divide="ignore", invalid="ignore"):
            phi = c2 / den - 0.5 * lam
    else:
        raise ValueError(f"unknown case {case!r}")
    return phi, den


def phi_with_mask(case: CaseKind, lam, mu, c1, c2, xi, eps_disc=DEFAULT_EPS_DISC):
    """phi and a validity mask (False where the pole floor is hit)."""
    _check_case(case, lam, mu, eps_disc)
    phi, den = _phi_den(case, lam, mu, c1, c2, xi)
    ok = np.abs(den) >= POLE_FLOOR * (abs(c1) + abs(c2))
    return phi, ok


def eval_phi(case: CaseKind, lam, mu, c1, c2, xi):
    """phi = G'/G; raises PoleError if any sample hits the pole floor."""
    phi, ok = phi_with_mask(case, lam, mu, c1, c2, xi)
    if not np.all(ok):
        bad = float(np.atleast_1d(np.asarray(xi, float))[~np.atleast_1d(ok)][0])
        poles = find_singularities_raw(case, lam, mu, c1, c2, bad - 1.0, bad + 1.0)
        nearest = min(poles, key=lambda p: abs(p - bad)) if poles else None
        raise PoleError(bad, nearest)
    if np.ndim(xi) == 0:
        return float(phi)
    return phi


def phi_derivatives(case: CaseKind, lam, mu, c1, c2, xi):
    """(phi, phi', phi'') using the Riccati identity phi' = -(mu + lam*phi + phi^2)."""
    phi, ok = phi_with_mask(case, lam, mu, c1, c2, xi)
    if not np.all(ok):
        bad = float(np.atleast_1d(np.asarray(xi, float))[~np.atleast_1d(ok)][0])
        raise PoleError(bad)
    dphi = -(mu + lam * phi + phi * phi)
    d2phi = -(lam + 2.0 * phi) * dphi
    return phi, dphi, d2phi


def eval_uv(spec: SolutionSpec, x, t):
    """The solution fields (u, v) at (x, t); xi = x - c*t."""
    co = spec.coeffs
    xi = np.asarray(x, dtype=float) - co.c * np.asarray(t, dtype=float)
    phi = eval_phi(spec.case, co.lam, co.mu, spec.c1, spec.c2, xi)
    u = co.alpha1 * phi + co.alpha0
    v = co.beta1 * phi + co.beta0
    return u, v


def eval_uv_masked(spec: SolutionSpec, x, t):
    """(u, v, ok) with pole-adjacent samples masked out instead of raising."""
    co = spec.coeffs
    xi = np.asarray(x, dtype=float) - co.c * np.asarray(t, dtype=float)
    phi, ok = phi_with_mask(spec.case, co.lam, co.mu, spec.c1, spec.c2, xi)
    u = co.alpha1 * phi + co.alpha0
    v = co.beta1 * phi + co.beta0
    return u, v, ok


def find_singularities_raw(case: CaseKind, lam, mu, c1, c2, xi_lo, xi_hi):
    """All zeros of the case denominator in [xi_lo, xi_hi], sorted.

    Roots are located analytically and polished by bracketing on the bounded
    denominator; an empty list is a valid result.
    """
    if xi_lo >= xi_hi:
        raise ValueError("need xi_lo < xi_hi")
    scale = abs(c1) + abs(c2)
    roots = []
    if case is CaseKind.HYPERBOLIC:
        # c1*sinh(th) + c2*cosh(th) = 0  <=>  tanh(th) = -c2/c1, |c2| < |c1|
        r = math.sqrt(lam * lam - 4.0 * mu)
        if c1 != 0 and abs(c2) < abs(c1):
            roots.append(2.0 * math.atanh(-c2 / c1) / r)

        def den(xi):
            return c1 * math.tanh(0.5 * r * xi) + c2

    elif case is CaseKind.TRIGONOMETRIC:
        # c1*cos(w xi) + c2*sin(w xi) = R*cos(w xi - p0): zeros at
        # w xi = p0 + pi/2 + n pi
        w = 0.5 * math.sqrt(4.0 * mu - lam * lam)
        p0 = math.atan2(c2, c1)
        n_lo = math.floor((w * xi_lo - p0 - 0.5 * math.pi) / math.pi) - 1
        n_hi = math.ceil((w * xi_hi - p0 - 0.5 * math.pi) / math.pi) + 1
        for n in range(n_lo, n_hi + 1):
            roots.append((p0 + 0.5 * math.pi + n * math.pi) / w)

        def den(xi):
            return c1 * math.cos(w * xi) + c2 * math.sin(w * xi)

    elif case is CaseKind.DEGENERATE:
        if c2 != 0:
            roots.append(-c1 / c2)

        def den(xi):
            return c1 + c2 * xi

    else:
        raise ValueError(f"unknown case {case!r}")

    out = []
    width = xi_hi - xi_lo
    for x0 in roots:
        if not (xi_lo <= x0 <= xi_hi):
            continue
        # polish inside a small bracket when the sign change is resolvable
        h = max(1e-9, 1e-12 * max(1.0, abs(x0)))
        a, b = x0 - h, x0 + h
        if den(a) * den(b) < 0:
            x0 = brentq(den, a, b, xtol=1e-15, rtol=8.9e-16)
        if abs(den(x0)) > 1e-10 * scale:  # analytic root must check out
            continue
        out.append(x0)
    out.sort()
    # collapse duplicates from bracket overlap
    dedup = []
    for x0 in out:
        if not dedup or abs(x0 - dedup[-1]) > 1e-12 * max(1.0, width):
            dedup.append(x0)
    return dedup


def find_singularities(spec: SolutionSpec, xi_lo, xi_hi):
    """Poles of the solution profile (zeros of G) in [xi_lo, xi_hi]."""
    co = spec.coeffs
    return find_singularities_raw(spec.case, co.lam, co.mu, spec.c1, spec.c2,
                                  xi_lo, xi_hi)


def period_case2(lam, mu) -> float:
    """Period of phi in the trigonometric regime: 2*pi/sqrt(4*mu - lam^2)."""
    d = 4.0 * mu - lam * lam
    if d <= 0:
        raise ValueError(f"4*mu - lam^2 must be positive, got {d:.6g}")
    return 2.0 * math.pi / math.sqrt(d)
