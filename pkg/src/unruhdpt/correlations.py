"""Vacuum two-point functions along the accelerated worldlines.

SI inputs are converted once to dimensionless form: a_tilde = alpha/(c*omega0),
ell = omega0*L/c.  All rates are expressed in units of the base rate
Gamma0 = lambda^2 * omega0 / (8 pi), which also sets the simulation time unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import NoLocalizedPhaseError, OracleFailureError

C_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class PhysicalParams:
    """SI parameters of the accelerated detector pair."""

    alpha: float      # proper acceleration, m/s^2
    separation: float  # proper inter-atomic distance L, m
    omega0: float     # Zeeman angular frequency, rad/s
    coupling: float = 0.1  # dimensionless coupling constant

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.separation <= 0:
            raise ValueError("separation must be > 0")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be > 0")
        if self.coupling <= 0:
            raise ValueError("coupling must be > 0")

    def dimensionless(self) -> "DimensionlessParams":
        return DimensionlessParams.from_physical(self)


@dataclass(frozen=True)
class DimensionlessParams:
    a_tilde: float  # alpha / (c * omega0)
    ell: float      # omega0 * L / c
    M0: float       # tanh(pi / a_tilde)
    Gamma0: float   # lambda^2 omega0 / (8 pi), rad/s

    @classmethod
    def from_physical(cls, p: PhysicalParams) -> "DimensionlessParams":
        a_tilde = p.alpha / (C_LIGHT * p.omega0)
        ell = p.omega0 * p.separation / C_LIGHT
        M0 = 1.0 if a_tilde == 0 else math.tanh(math.pi / a_tilde)
        Gamma0 = p.coupling**2 * p.omega0 / (8.0 * math.pi)
        return cls(a_tilde=a_tilde, ell=ell, M0=M0, Gamma0=Gamma0)


def f_factor(a_tilde: float, ell: float) -> float:
    """Cross-atom cooperativity factor; the same-atom case is the constant 1.

    Continuous at a_tilde = 0 where it reduces to sin(ell)/ell.
    """
    if ell <= 0:
        raise ValueError("ell must be > 0")
    if a_tilde == 0.0:
        return math.sin(ell) / ell
    phase = (2.0 / a_tilde) * math.asinh(a_tilde * ell / 2.0)
    return math.sin(phase) / (ell * math.sqrt(1.0 + (a_tilde * ell / 2.0) ** 2))


@dataclass(frozen=True)
class DissipationCoefficients:
    """Even/odd response combinations, same-atom (11) and cross-atom (12)."""

    A11: float
    B11: float
    A12: float
    B12: float
    zero_temperature_limit: bool = False

    def as_dict(self) -> dict:
        return {"A11": self.A11, "B11": self.B11, "A12": self.A12, "B12": self.B12}


def dissipation_coefficients(
    p: PhysicalParams, dimensionless: bool = True
) -> DissipationCoefficients:
    """Dissipation rates A^ab, B^ab.

    In dimensionless mode everything is expressed in units of Gamma0, so
    B11 = 1 exactly.  alpha = 0 is the zero-temperature limit where
    coth -> 1 and A = B.
    """
    d = p.dimensionless()
    scale = 1.0 if dimensionless else d.Gamma0
    f = f_factor(d.a_tilde, d.ell)
    if d.a_tilde == 0.0:
        coth = 1.0
        zero_t = True
    else:
        coth = 1.0 / math.tanh(math.pi / d.a_tilde)
        zero_t = False
    return DissipationCoefficients(
        A11=scale * coth,
        B11=scale,
        A12=scale * f * coth,
        B12=scale * f,
        zero_temperature_limit=zero_t,
    )


def wightman(
    dtau: float, p: PhysicalParams, same_atom: bool, epsilon: float
) -> complex:
    """Positive-frequency vacuum correlator along the hyperbolic worldlines.

    `dtau` is the proper-time difference in seconds, `epsilon` the regulator
    in seconds.  Stationary: depends only on dtau.  Units 1/m^2.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    c = C_LIGHT
    arg = p.alpha * (dtau - 1j * epsilon) / (2.0 * c)
    r2 = (4.0 * c**4 / p.alpha**2) * np.sinh(arg) ** 2
    if not same_atom:
        r2 = r2 - p.separation**2
    return -1.0 / (4.0 * math.pi**2 * r2)


def _wightman_dimensionless(
    x: float, a_tilde: float, ell: float, same_atom: bool, eps: float
) -> complex:
    """Correlator in units of omega0^2, x = omega0 * dtau, eps = omega0 * epsilon."""
    arg = a_tilde * (x - 1j * eps) / 2.0
    r2 = (4.0 / a_tilde**2) * np.sinh(arg) ** 2
    if not same_atom:
        r2 = r2 - ell**2
    return -1.0 / (4.0 * math.pi**2 * r2)


def fourier_closed_form(
    a_tilde: float, ell: float, same_atom: bool, frequency_sign: int = +1
) -> float:
    """Closed-form response, in units of omega0.

    frequency_sign = -1 evaluates the transform at -omega0, which obeys the
    detailed-balance relation exp(-2 pi / a_tilde) relative to +omega0.
    """
    if a_tilde <= 0:
        raise ValueError("a_tilde must be > 0")
    f = 1.0 if same_atom else f_factor(a_tilde, ell)
    s = float(frequency_sign)
    return (1.0 / (2.0 * math.pi)) * s / (1.0 - math.exp(-2.0 * math.pi * s / a_tilde)) * f


def fourier_transform_oracle(
    p: PhysicalParams,
    same_atom: bool,
    regulator_steps: tuple = (1e-2, 5e-3, 2.5e-3),
    rel_imag_tol: float = 1e-3,
) -> float:
    """Numerical Fourier transform of the regulated correlator, in units of omega0.

    Integrates exp(i x) G(x) over the proper-time difference at each regulator
    value (units 1/omega0) and Richardson-extrapolates to eps -> 0.  Used only
    to validate the closed-form response.
    """
    d = p.dimensionless()
    a, ell = d.a_tilde, d.ell
    if a <= 0:
        raise ValueError("oracle requires alpha > 0")
    # integrand decays like exp(-a |x|); cut where the envelope is ~1e-14
    x_max = 35.0 / a + 10.0
    # light-cone crossings of the cross-atom correlator sit on the real axis
    breakpoints = [0.0]
    if not same_atom:
        x0 = (2.0 / a) * math.asinh(a * ell / 2.0)
        breakpoints = [-x0, 0.0, x0]

    def integrate_at(eps: float) -> complex:
        def re_part(x):
            return (np.exp(1j * x) * _wightman_dimensionless(x, a, ell, same_atom, eps)).real

        def im_part(x):
            return (np.exp(1j * x) * _wightman_dimensionless(x, a, ell, same_atom, eps)).imag

        total = 0.0 + 0.0j
        for part, setter in ((re_part, 1.0), (im_part, 1.0j)):
            val, err = integrate.quad(
                part, -x_max, x_max, points=breakpoints, limit=800,
            )
            if not np.isfinite(val) or err > 1e-6 + 1e-4 * abs(val):
                raise OracleFailureError(
                    f"quadrature failed (eps={eps}, value={val}, err={err})"
                )
            total += setter * val
        return total

    eps_values = np.array(regulator_steps, dtype=float)
    samples = np.array([integrate_at(e) for e in eps_values])
    # quadratic polynomial extrapolation to eps = 0
    coeffs_re = np.polyfit(eps_values, samples.real, 2)
    coeffs_im = np.polyfit(eps_values, samples.imag, 2)
    value = np.polyval(coeffs_re, 0.0)
    resid_im = np.polyval(coeffs_im, 0.0)
    if abs(resid_im) > rel_imag_tol * max(abs(value), 1e-12):
        raise OracleFailureError(
            f"non-real transform: re={value:.6e}, im={resid_im:.6e}"
        )
    return float(value)


def critical_acceleration(
    p: PhysicalParams, epsilon_loc: float = 0.01, rel_tol: float = 1e-6
) -> float:
    """Smallest acceleration with 1 - f = epsilon_loc, by bisection (m/s^2).

    Raises if the localized window does not exist at this geometry, i.e. the
    alpha -> 0 deficit 1 - sin(ell)/ell already exceeds the threshold.
    """
    d = p.dimensionless()
    ell = d.ell
    deficit0 = 1.0 - f_factor(0.0, ell)
    if deficit0 >= epsilon_loc:
        raise NoLocalizedPhaseError(
            f"no localized window: minimum achievable 1-f is {deficit0:.6e} "
            f">= epsilon_loc={epsilon_loc}",
            min_deficit=deficit0,
        )

    def h(a_tilde: float) -> float:
        return (1.0 - f_factor(a_tilde, ell)) - epsilon_loc

    # expand upward from a scale where the deficit is tiny to bracket the
    # first crossing
    lo = 1e-6
    hi = 1e-3
    while h(hi) < 0:
        lo, hi = hi, hi * 2.0
        if hi > 1e12:
            raise NoLocalizedPhaseError(
                "1 - f never reaches epsilon_loc on the search range",
                min_deficit=deficit0,
            )
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if h(mid) < 0:
            lo = mid
        else:
            hi = mid
    a_tilde_c = 0.5 * (lo + hi)
    return a_tilde_c * C_LIGHT * p.omega0
