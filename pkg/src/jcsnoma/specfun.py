"""Special functions and adaptive quadrature shared by the analytic modules.

All routines are scalar, pure, and stable over the ranges that arise in
link-budget work: the exponentially scaled complementary error function for
very large arguments, the cascaded-echo Laplace kernel in an overflow-free
form, a generalized Marcum Q of real order >= 1/2 built on the regularized
incomplete gamma, its inverse in the threshold argument, and a small
adaptive-quadrature front end for finite and semi-infinite intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _sciint
from scipy import special as _sc

__all__ = [
    "QuadratureSpec",
    "ConvergenceError",
    "erfc",
    "erfcx",
    "echo_kernel",
    "exp_integral_ei",
    "marcum_q",
    "marcum_q_inv_b",
    "integrate",
]


class ConvergenceError(RuntimeError):
    """An iterative routine hit its subdivision or bracketing cap.

    Carries the best estimate and its error bound when available.
    """

    def __init__(self, message: str, estimate: float | None = None,
                 error_bound: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and workload cap for adaptive quadrature."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def erfc(z: float) -> float:
    """Complementary error function (2/sqrt(pi)) * int_z^inf exp(-t^2) dt."""
    if not math.isfinite(z):
        raise ValueError(f"erfc requires finite argument, got {z!r}")
    return float(_sc.erfc(z))


def erfcx(z: float) -> float:
    """Scaled complementary error function exp(z^2)*erfc(z) for z >= 0.

    Stays finite for arbitrarily large z where the unscaled product would
    overflow/underflow; tends to 1/(z*sqrt(pi)) as z grows.
    """
    if not (math.isfinite(z) and z >= 0):
        raise ValueError(f"erfcx requires finite z >= 0, got {z!r}")
    return float(_sc.erfcx(z))


def echo_kernel(b: float, c: float) -> float:
    """Laplace kernel of the cascaded echo gain: 2*int_0^inf exp(-t/b - c*t^2) dt.

    This single integral underlies every closed form involving the squared
    exponential echo gain. For c > 0 it is evaluated in the scaled form
    sqrt(pi/c) * erfcx(1/(2*b*sqrt(c))), which is immune to the overflow of
    the naive exp(...)*erfc(...) product; for c = 0 it degenerates to 2*b.
    The c -> 0 limit being 2*b is what pins the sign convention of the
    erfc bracket in the closed forms built on top of this kernel.
    """
    if not (math.isfinite(b) and b > 0):
        raise ValueError(f"echo_kernel requires b > 0, got {b!r}")
    if not (math.isfinite(c) and c >= 0):
        raise ValueError(f"echo_kernel requires c >= 0, got {c!r}")
    if c == 0.0:
        return 2.0 * b
    sc_ = math.sqrt(c)
    return math.sqrt(math.pi / c) * float(_sc.erfcx(1.0 / (2.0 * b * sc_)))


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x) for strictly negative x."""
    if not (math.isfinite(x) and x < 0):
        raise ValueError(f"exp_integral_ei requires x < 0, got {x!r}")
    return float(_sc.expi(x))


# Poisson-mixture window half width: tail mass outside lam +/- half is
# below 1e-16 by a Chernoff bound for this choice.
def _poisson_window(lam: float) -> np.ndarray:
    half = 40.0 + 10.0 * math.sqrt(lam)
    lo = max(0, int(lam - half))
    hi = int(lam + half) + 1
    return np.arange(lo, hi + 1)


def marcum_q(nu: float, a: float, b: float) -> float:
    """Generalized Marcum Q_nu(a, b) for real order nu >= 1/2.

    Equals the survival probability at b^2 of a noncentral chi-square
    variable with 2*nu degrees of freedom and noncentrality a^2. Computed
    as a Poisson(a^2/2) mixture of regularized upper incomplete gammas,
    truncated once the neglected Poisson mass is below 1e-16.
    """
    if not (math.isfinite(nu) and nu >= 0.5):
        raise ValueError(f"marcum_q requires order nu >= 0.5, got {nu!r}")
    if not (math.isfinite(a) and a >= 0 and math.isfinite(b) and b >= 0):
        raise ValueError("marcum_q requires finite nonnegative a, b")
    if b == 0.0:
        return 1.0
    lam = 0.5 * a * a
    x = 0.5 * b * b
    if lam == 0.0:
        return float(_sc.gammaincc(nu, x))
    n = _poisson_window(lam)
    log_w = n * math.log(lam) - lam - _sc.gammaln(n + 1.0)
    w = np.exp(log_w)
    covered = float(w.sum())
    if 1.0 - covered > 1e-12:
        raise ConvergenceError(
            f"Poisson mixture window lost {1.0 - covered:.3e} mass")
    q = float(np.dot(w, _sc.gammaincc(nu + n, x)))
    return min(1.0, max(0.0, q))


def marcum_q_inv_b(nu: float, a: float, p: float) -> float:
    """Threshold argument b solving marcum_q(nu, a, b) = p for p in (0, 1).

    Q_nu(a, .) is continuous and strictly decreasing from 1 to 0, so the
    root is unique; it is located by doubling a bracket and bisecting.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"target probability must lie in (0,1), got {p!r}")
    lo = 0.0
    hi = max(1.0, 2.0 * a)
    doublings = 0
    while marcum_q(nu, a, hi) > p:
        hi *= 2.0
        doublings += 1
        if doublings > 200:
            raise ConvergenceError("failed to bracket the Marcum-Q inverse")
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        q = marcum_q(nu, a, mid)
        if abs(q - p) <= 1e-12:
            return mid
        if q > p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def integrate(f: Callable[[float], float], lo: float, hi: float,
              spec: QuadratureSpec | None = None) -> float:
    """Adaptive quadrature of f over (lo, hi); hi may be math.inf.

    Semi-infinite intervals are folded onto (0, 1) through w = u/(1-u)
    before the adaptive pass. Raises ConvergenceError (carrying the best
    estimate and its error bound) if the subdivision cap is exhausted.
    """
    spec = spec or QuadratureSpec()
    if math.isinf(hi):
        def folded(u: float) -> float:
            w = u / (1.0 - u)
            val = f(lo + w)
            if val == 0.0:
                return 0.0
            return val / (1.0 - u) ** 2

        return integrate(folded, 0.0, 1.0, spec)
    out = _sciint.quad(f, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                       limit=spec.max_subdivisions, full_output=True)
    value, err = out[0], out[1]
    if len(out) > 3:
        raise ConvergenceError(str(out[3]), estimate=value, error_bound=err)
    return float(value)
