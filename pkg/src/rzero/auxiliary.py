"""Evaluation of the auxiliary function

    R(s) = integral over the line 0\\swarrow1 of x^{-s} e^{i pi x^2} /
           (e^{i pi x} - e^{-i pi x}) dx,

by trapezoidal quadrature on a slope-one line through q + 1/2 (collecting the
residues n^{-s} of the poles crossed while sliding the line right), by the
asymptotic factorisation valid far left of the critical strip, and by
cross-checks against an Euler-Maclaurin zeta evaluator through the identity

    zeta(s) = R(s) + chi(s) * conj(R(1 - conj(s))).

Everything here is a pure function; repeated evaluations at the same point
are served from a cache.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DomainError,
    NearZeroDenominatorError,
    NonConvergenceError,
    PathThroughPoleError,
    PoleOfGammaError,
    RegionError,
)
from .special_functions import (
    TWO_PI,
    _BERNOULLI_2K,
    as_complex,
    chi,
    eta,
    log_chi,
)

EPS_TARGET = 1e-9          # relative accuracy goal of automatic evaluation
FAIL_THRESHOLD = 1e-6      # relative error_estimate beyond which we refuse

# Direction of traversal of the integration line.  The line has slope one
# (direction e^{i pi/4}); the sign fixes the down-left traversal and was
# calibrated once against the zeta identity at s = 2.
_LINE_DIR = cmath.exp(1j * math.pi / 4.0)
_ORIENTATION = -1.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Discretisation of the line integral.

    crossing     -- integer q >= 0; the path crosses the real axis at q + 1/2
    half_length  -- truncation of the line parameter (nodes span +-half_length)
    step         -- trapezoidal node spacing
    precision_mode -- "standard" (numpy sum) or "compensated" (exact fsum)
    """

    crossing: int
    half_length: float
    step: float
    precision_mode: str = "standard"

    def __post_init__(self):
        if self.crossing < 0:
            raise DomainError(f"crossing must be >= 0, got {self.crossing}")
        if not self.step > 0.0:
            raise DomainError(f"step must be positive, got {self.step}")
        if self.step > self.half_length:
            raise DomainError("step exceeds half_length")
        min_half = math.sqrt(math.log(1.0 / EPS_TARGET) / math.pi)
        if self.half_length < min_half:
            raise DomainError(
                f"half_length {self.half_length} below minimum {min_half:.3f}"
            )
        if self.precision_mode not in ("standard", "compensated"):
            raise DomainError(f"unknown precision mode {self.precision_mode!r}")


@dataclass(frozen=True)
class EvaluationResult:
    """Value of R(s) (or of its asymptotic surrogate) with error metadata.

    ``log_value`` is a logarithm of ``value`` (any branch); it stays finite
    and meaningful even when ``value`` itself overflows the double range,
    which happens deep in the left half-plane.  ``u_proxy`` is only set for
    the asymptotic method when a quadrature reference was requested.
    """

    value: complex
    method: str
    error_estimate: float
    u_proxy: float | None = None
    log_value: complex | None = None


def dirichlet_sum(s: complex, q: int) -> complex:
    """sum_{n=1}^{q} n^{-s} (empty sum for q = 0)."""
    if q == 0:
        return 0.0 + 0.0j
    n = np.arange(1, q + 1, dtype=float)
    return complex(np.sum(np.exp(-s * np.log(n))))


def dirichlet_sum_derivative(s: complex, q: int) -> complex:
    """d/ds of dirichlet_sum: sum_{n=1}^{q} -log(n) n^{-s}."""
    if q == 0:
        return 0.0 + 0.0j
    n = np.arange(1, q + 1, dtype=float)
    ln = np.log(n)
    return complex(np.sum(-ln * np.exp(-s * ln)))


def _log_integrand(x: np.ndarray, s: complex) -> np.ndarray:
    """Pointwise log of x^{-s} e^{i pi x^2} / (e^{i pi x} - e^{-i pi x}).

    Logs are principal per point; the results are only ever exponentiated, so
    no branch tracking is needed.  The denominator log factors out whichever
    exponential dominates to avoid overflow off the real axis.
    """
    num = -s * np.log(x) + 1j * math.pi * x * x
    den = np.empty_like(num)
    up = x.imag >= 0.0
    xu = x[up]
    # e^{i pi x} - e^{-i pi x} = e^{-i pi x} (e^{2 i pi x} - 1), |e^{2 i pi x}| <= 1
    den[up] = -1j * math.pi * xu + np.log(np.exp(2j * math.pi * xu) - 1.0)
    xd = x[~up]
    # ... = e^{i pi x} (1 - e^{-2 i pi x}), |e^{-2 i pi x}| < 1
    den[~up] = 1j * math.pi * xd + np.log(1.0 - np.exp(-2j * math.pi * xd))
    return num - den


def _csum(values: np.ndarray, compensated: bool) -> complex:
    if compensated:
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return complex(np.sum(values))


def _quadrature(s: complex, spec: QuadratureSpec):
    """Core trapezoid pass.

    Returns (log_total | None, rel_disc, rel_tail, noise_rel) where
    log_total is a log of the combined value (Dirichlet sum plus line
    integral) and the relative figures are against that value.
    """
    c = spec.crossing + 0.5
    if abs(c - round(c)) < 1e-6:
        raise PathThroughPoleError(f"crossing parameter {c} sits on a pole")
    h = spec.step
    half = spec.half_length
    m_half = 2 * int(math.ceil(half / (2.0 * h)))  # even so the coarse grid nests
    v = h * np.arange(-m_half, m_half + 1)
    x = c + v * _LINE_DIR
    # The path must stay clear of the branch cut of log x (negative reals).
    if not np.all((x.imag != 0.0) | (x.real > 0.0)):
        raise PathThroughPoleError("integration path touched the logarithm cut")

    lg = _log_integrand(x, s)
    m = float(np.max(lg.real))
    g = np.exp(lg - m)
    compensated = spec.precision_mode == "compensated"
    t_h = h * _csum(g, compensated)
    t_2h = 2.0 * h * _csum(g[::2], compensated)

    sum_part = dirichlet_sum(s, spec.crossing)
    # Everything is combined in units of e^{m} ("reduced" scale).
    if abs(sum_part) == 0.0:
        sum_red = 0.0 + 0.0j
    elif m < math.log(abs(sum_part)) + 650.0:
        sum_red = cmath.exp(cmath.log(sum_part) - m)
    else:  # Dirichlet part negligible against the integral at scale e^m
        sum_red = 0.0 + 0.0j
    direction = _ORIENTATION * _LINE_DIR
    total_red = direction * t_h + sum_red

    disc = abs(t_h - t_2h)
    tail = (abs(g[0]) + abs(g[-1])) * (h + 1.0 / (TWO_PI * half)) * 2.0
    noise = 1e-16 * (h * float(np.sum(np.abs(g))) + abs(sum_red))

    scale_red = max(abs(total_red), noise, 5e-324)
    rel_disc = disc / scale_red
    rel_tail = tail / scale_red
    noise_rel = noise / scale_red

    if total_red == 0.0:
        log_total = None
    else:
        log_total = m + cmath.log(total_red)
    return log_total, rel_disc, rel_tail, noise_rel


def _value_from_log(log_total: complex | None) -> complex:
    if log_total is None:
        return 0.0 + 0.0j
    if log_total.real > 709.0:
        # out of double range; saturate (log_value stays exact)
        return cmath.rect(1.7e308, log_total.imag)
    return cmath.exp(log_total)


def r_integral(s, spec: QuadratureSpec) -> EvaluationResult:
    """R(s) by residue-collected trapezoidal quadrature with the given spec.

    The finite Dirichlet sum collects the residues n^{-s} crossed while the
    line slides from (0,1) to (q, q+1); the remaining integral runs through
    q + 1/2 where the integrand is pole-free.  The error estimate combines
    the step-halving discrepancy with the truncation tails and is absolute;
    evaluation is rejected when it exceeds FAIL_THRESHOLD relative to the
    value.
    """
    z = as_complex(s)
    if z.imag < 0.0:
        raise DomainError(f"evaluation requires Im(s) >= 0, got {z}")
    log_total, rel_disc, rel_tail, _ = _quadrature(z, spec)
    value = _value_from_log(log_total)
    rel_err = rel_disc + rel_tail
    if not math.isfinite(rel_err) or rel_err > FAIL_THRESHOLD:
        raise NonConvergenceError(
            f"quadrature error {rel_err:.2e} (relative) at s = {z} exceeds "
            f"{FAIL_THRESHOLD}"
        )
    err = rel_err * abs(value) if abs(value) < 1e300 else rel_err * 1e300
    return EvaluationResult(
        value=value, method="quadrature", error_estimate=err, log_value=log_total
    )


def default_crossing(t: float) -> int:
    """q placing the crossing near the integrand saddle sqrt(t/2pi)."""
    return max(0, int(math.floor(math.sqrt(max(t, 0.0) / TWO_PI))))


def auto_spec(s, crossing: int | None = None, step: float = 0.125,
              precision_mode: str = "standard") -> QuadratureSpec:
    """Spec with the default sizing rules for the point s.

    half_length = sqrt(log(1/eps)/pi) + sqrt(t)/4, widened when the crossing
    is moved off the saddle (the integrand hump shifts along the line).
    """
    z = as_complex(s)
    t = z.imag
    q = default_crossing(t) if crossing is None else crossing
    saddle = math.sqrt(max(t, 0.0) / TWO_PI)
    half = math.sqrt(math.log(1.0 / EPS_TARGET) / math.pi) + 0.25 * math.sqrt(max(t, 0.0))
    half += math.sqrt(2.0) * abs(q + 0.5 - saddle) + 1.0
    return QuadratureSpec(crossing=q, half_length=half, step=step,
                          precision_mode=precision_mode)


@lru_cache(maxsize=400_000)
def _r_eval_cached(sigma: float, t: float, precision_mode: str) -> EvaluationResult:
    z = complex(sigma, t)
    base = auto_spec(z, precision_mode=precision_mode)
    half = base.half_length
    step = 0.25
    prev_rel = None
    best = None  # (rel_err, log_total)
    for _ in range(16):
        spec = QuadratureSpec(crossing=base.crossing, half_length=half,
                              step=step, precision_mode=precision_mode)
        log_total, rel_disc, rel_tail, noise_rel = _quadrature(z, spec)
        rel_err = rel_disc + rel_tail
        if rel_tail > max(0.25 * rel_disc, 0.1 * EPS_TARGET, noise_rel):
            half *= 1.5
            continue
        if best is None or rel_err < best[0]:
            best = (rel_err, log_total)
        if rel_err <= max(EPS_TARGET, 4.0 * noise_rel):
            break
        # Halving the step squares the trapezoid error, so once the estimate
        # is small and stops shrinking we are at the rounding plateau (the
        # value is a near-cancellation, e.g. next to a zero); further nodes
        # cannot help.  The reported absolute estimate stays honest.
        if (rel_err < 1e-3 and prev_rel is not None
                and rel_err > 0.35 * prev_rel):
            break
        if step <= 1.0 / 1024.0:
            break
        prev_rel = rel_err
        step *= 0.5
    # No raise here: at a zero of R the value is pure cancellation and the
    # relative figure is meaningless.  The absolute error_estimate is honest
    # and downstream integrality guards fail loudly on bad phases.
    rel_err, log_total = best
    value = _value_from_log(log_total)
    err = rel_err * abs(value) if abs(value) < 1e300 else rel_err * 1e300
    return EvaluationResult(
        value=value, method="quadrature", error_estimate=err, log_value=log_total
    )


def r_eval(s, precision_mode: str = "standard") -> EvaluationResult:
    """R(s) with automatic crossing choice and step/length refinement.

    The crossing is q = floor(sqrt(t/2pi)); step and half-length are refined
    until two successive grids agree to EPS_TARGET relative (or the noise
    floor of the accumulation, whichever is larger).  All zero counting uses
    this quadrature route; the asymptotic surrogate is for comparison
    studies only.
    """
    z = as_complex(s)
    if z.imag < 0.0:
        raise DomainError(f"evaluation requires Im(s) >= 0, got {z}")
    return _r_eval_cached(z.real, z.imag, precision_mode)


def r_value(s) -> complex:
    """Convenience accessor: the complex value of r_eval(s)."""
    return r_eval(s).value


def r_eval_cache_clear() -> None:
    _r_eval_cached.cache_clear()


def r_asymptotic(s, t_min: float = 50.0, slope: float = 1.0,
                 with_reference: bool = False) -> EvaluationResult:
    """Left-region surrogate for R(s):

        -chi(s) eta^{s-1} e^{-i pi eta^2} sqrt(2) e^{3 i pi/8}
            sin(pi eta) / (2 cos(2 pi eta)),

    admissible for t >= t_min and sigma <= 1 - slope * t^{2/5} log t.  All
    factors are combined in the log domain (the value can exceed the double
    range; ``log_value`` is then the meaningful field).  With
    ``with_reference=True`` the quadrature value is also computed and
    u_proxy = |R/surrogate - 1| is reported.
    """
    z = as_complex(s)
    t = z.imag
    if t < t_min:
        raise RegionError(f"surrogate requires t >= {t_min}, got {t}")
    sigma_max = 1.0 - slope * t ** 0.4 * math.log(t)
    if z.real > sigma_max:
        raise RegionError(
            f"surrogate requires sigma <= {sigma_max:.3f} at t = {t}, got {z.real}"
        )
    ev = eta(z).value
    log_eta = cmath.log(ev)  # principal; Re(ev) > 0 in the region
    # sin(pi eta) = e^{-i pi eta} (1 - e^{2 i pi eta}) * (i/2): Im(eta) > 0
    log_sin = -1j * math.pi * ev + cmath.log(1.0 - cmath.exp(2j * math.pi * ev)) \
        + complex(-math.log(2.0), 0.5 * math.pi)
    # 2 cos(2 pi eta) = e^{-2 i pi eta} (1 + e^{4 i pi eta})
    log_cos2 = -2j * math.pi * ev + cmath.log(1.0 + cmath.exp(4j * math.pi * ev))
    if log_cos2.real - math.log(2.0) < math.log(1e-8):
        raise NearZeroDenominatorError(f"|cos 2 pi eta| below tolerance at s = {z}")
    log_total = (
        log_chi(z)
        + (z - 1.0) * log_eta
        - 1j * math.pi * ev * ev
        + 0.5 * math.log(2.0)
        + 3j * math.pi / 8.0
        + log_sin
        - log_cos2
    ) + 1j * math.pi  # overall minus sign
    value = _value_from_log(log_total)
    u_proxy = None
    if with_reference:
        quad = r_eval(z)
        if quad.log_value is None:
            u_proxy = 1.0
        else:
            u_proxy = abs(cmath.exp(quad.log_value - log_total) - 1.0)
    return EvaluationResult(
        value=value, method="asymptotic", error_estimate=0.0,
        u_proxy=u_proxy, log_value=log_total,
    )


def _r_value_any(z: complex) -> complex:
    """R(z) including slightly negative Im(z).

    The defining integral is entire in s and the quadrature converges for
    moderately negative t (the Gaussian factor dominates); only derivative
    rings around low points ever reach below the axis, so the public t >= 0
    contract of r_eval is kept narrow.
    """
    if z.imag < -2.0:
        raise DomainError(f"evaluation requires Im(s) >= -2, got {z}")
    return _r_eval_cached(z.real, z.imag, "standard").value


def r_derivative(s, radius: float = 1e-2, with_estimate: bool = False):
    """R'(s) by the 16-point Cauchy ring mean of R(s + r e^{i theta}).

    With ``with_estimate=True`` returns ``(value, error_estimate)`` where the
    estimate is the discrepancy against the ring of half radius.
    """
    z = as_complex(s)

    def ring(r: float) -> complex:
        acc = 0.0 + 0.0j
        for k in range(16):
            w = cmath.exp(2j * math.pi * k / 16.0)
            acc += _r_value_any(z + r * w) / w
        return acc / (16.0 * r)

    d1 = ring(radius)
    if not with_estimate:
        return d1
    d2 = ring(0.5 * radius)
    return d2, abs(d1 - d2)


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta reference
# ---------------------------------------------------------------------------

_ZETA_BERNOULLI_TERMS = 10


def zeta_reference(s) -> complex:
    """Independent Euler-Maclaurin evaluation of zeta(s), s != 1.

    Shift point N = max(20, 4 ceil(|t|/2pi)) with 10 Bernoulli corrections;
    good to ~1e-12 relative for sigma >= -2 and |t| <= 1e4.
    """
    z = as_complex(s)
    if z == 1.0:
        raise PoleOfGammaError("zeta pole at s = 1")
    big_n = max(20, 4 * int(math.ceil(abs(z.imag) / TWO_PI)))
    n = np.arange(1, big_n, dtype=float)
    total = complex(np.sum(np.exp(-z * np.log(n))))
    ninv = 1.0 / big_n
    npow = cmath.exp(-z * math.log(big_n))  # N^{-s}
    total += big_n * npow / (z - 1.0) + 0.5 * npow
    poch = z  # s (s+1) ... running product
    scale = npow * ninv  # N^{-s-1}
    fact = 2.0
    for k in range(1, _ZETA_BERNOULLI_TERMS + 1):
        total += _BERNOULLI_2K[k - 1] / fact * poch * scale
        poch *= (z + (2 * k - 1)) * (z + 2 * k)
        scale *= ninv * ninv
        fact *= (2 * k + 1) * (2 * k + 2)
    return total


def zeta_from_r(s) -> complex:
    """zeta reconstructed from the auxiliary function:

        zeta(s) = R(s) + chi(s) * conj(R(1 - conj(s))).

    This identity is the principal correctness oracle of the evaluator.
    For Im(s) < 0 it is applied at the conjugate point (zeta commutes with
    conjugation; R itself is not conjugate-symmetric).
    """
    z = as_complex(s)
    if z == 1.0:
        raise PoleOfGammaError("zeta pole at s = 1")
    if z.imag < 0.0:
        return zeta_from_r(z.conjugate()).conjugate()
    # Im(1 - conj(z)) = Im(z) >= 0, so both evaluations stay in the domain.
    first = r_eval(z).value
    second = r_eval(1.0 - z.conjugate()).value.conjugate()
    return first + chi(z) * second
