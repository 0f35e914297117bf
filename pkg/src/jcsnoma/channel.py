"""Rayleigh channel sampling and the cascaded-echo gain distribution.

Coefficients are circularly symmetric complex Gaussians, so each power gain
is exponential with its link variance as mean. The echo travels relay ->
target -> relay over one slowly varying leg; its round-trip coefficient is
the squared one-way coefficient, making the echo power gain the square of
an exponential variable with survival function exp(-sqrt(x)/beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scenario import LinkVariances

__all__ = [
    "ChannelRealization",
    "GainSet",
    "sample",
    "mean_gains",
    "rho_rr_cdf",
    "rho_rr_pdf",
    "substream",
]


@dataclass(frozen=True)
class GainSet:
    """Power gains of one channel state (or mean-value surrogates)."""

    rho_sr: float
    rho_sdf: float
    rho_sdn: float
    rho_rdf: float
    rho_rdn: float
    rho_rr: float
    rho_li: float

    def __post_init__(self):
        for name in ("rho_sr", "rho_sdf", "rho_sdn", "rho_rdf", "rho_rdn",
                     "rho_rr", "rho_li"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class ChannelRealization:
    """One random draw of all link coefficients.

    h_rt is the one-way relay-target coefficient; the round-trip echo
    coefficient is its square, so the echo power gain rho_rr is exactly
    rho_rt squared (slowly moving target, reciprocal legs).
    """

    h_sr: complex
    h_sdf: complex
    h_sdn: complex
    h_rdf: complex
    h_rdn: complex
    h_rt: complex
    h_li: complex

    @property
    def h_rr(self) -> complex:
        return self.h_rt * self.h_rt

    @property
    def rho_sr(self) -> float:
        return abs(self.h_sr) ** 2

    @property
    def rho_sdf(self) -> float:
        return abs(self.h_sdf) ** 2

    @property
    def rho_sdn(self) -> float:
        return abs(self.h_sdn) ** 2

    @property
    def rho_rdf(self) -> float:
        return abs(self.h_rdf) ** 2

    @property
    def rho_rdn(self) -> float:
        return abs(self.h_rdn) ** 2

    @property
    def rho_rt(self) -> float:
        return abs(self.h_rt) ** 2

    @property
    def rho_rr(self) -> float:
        return self.rho_rt ** 2

    @property
    def rho_li(self) -> float:
        return abs(self.h_li) ** 2

    def gains(self) -> GainSet:
        return GainSet(self.rho_sr, self.rho_sdf, self.rho_sdn, self.rho_rdf,
                       self.rho_rdn, self.rho_rr, self.rho_li)


def _cn(rng: np.random.Generator, variance: float, n: int | None = None):
    s = math.sqrt(variance / 2.0)
    return rng.normal(0.0, s, n) + 1j * rng.normal(0.0, s, n)


def sample(link_vars: LinkVariances, rng: np.random.Generator) -> ChannelRealization:
    """Draw one realization; the draw order is fixed for reproducibility."""
    return ChannelRealization(
        h_sr=complex(_cn(rng, link_vars.beta_sr)),
        h_sdf=complex(_cn(rng, link_vars.beta_sdf)),
        h_sdn=complex(_cn(rng, link_vars.beta_sdn)),
        h_rdf=complex(_cn(rng, link_vars.beta_rdf)),
        h_rdn=complex(_cn(rng, link_vars.beta_rdn)),
        h_rt=complex(_cn(rng, link_vars.beta_rr)),
        h_li=complex(_cn(rng, link_vars.beta_li)),
    )


def sample_gain_block(link_vars: LinkVariances, rng: np.random.Generator,
                      n: int) -> dict[str, np.ndarray]:
    """Vectorized power-gain draws for n trials (no phases).

    Exponential draws match the law of |h|^2 under sample(); the echo gain
    squares a single one-way exponential draw.
    """
    rho = {
        "rho_sr": rng.exponential(link_vars.beta_sr, n),
        "rho_sdf": rng.exponential(link_vars.beta_sdf, n),
        "rho_sdn": rng.exponential(link_vars.beta_sdn, n),
        "rho_rdf": rng.exponential(link_vars.beta_rdf, n),
        "rho_rdn": rng.exponential(link_vars.beta_rdn, n),
        "rho_li": rng.exponential(link_vars.beta_li, n),
    }
    rho["rho_rr"] = rng.exponential(link_vars.beta_rr, n) ** 2
    return rho


def sample_coeff_block(link_vars: LinkVariances, rng: np.random.Generator,
                       n: int) -> dict[str, np.ndarray]:
    """Vectorized complex draws of the coefficients the detector needs."""
    return {
        "h_sr": _cn(rng, link_vars.beta_sr, n),
        "h_li": _cn(rng, link_vars.beta_li, n),
        "h_rt": _cn(rng, link_vars.beta_rr, n),
    }


def mean_gains(link_vars: LinkVariances) -> GainSet:
    """Mean-value surrogate gains: each link's first moment.

    The echo mean is the second moment of the one-way exponential gain,
    i.e. twice the squared leg variance.
    """
    return GainSet(
        rho_sr=link_vars.beta_sr,
        rho_sdf=link_vars.beta_sdf,
        rho_sdn=link_vars.beta_sdn,
        rho_rdf=link_vars.beta_rdf,
        rho_rdn=link_vars.beta_rdn,
        rho_rr=2.0 * link_vars.beta_rr ** 2,
        rho_li=link_vars.beta_li,
    )


def rho_rr_cdf(x, beta_rr: float):
    """Distribution function of the round-trip echo gain."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("echo gain is nonnegative")
    out = 1.0 - np.exp(-np.sqrt(x) / beta_rr)
    return float(out) if out.ndim == 0 else out


def rho_rr_pdf(x, beta_rr: float):
    """Density of the round-trip echo gain (integrable pole at zero)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("echo gain is nonnegative")
    with np.errstate(divide="ignore"):
        root = np.sqrt(x)
        out = np.where(x > 0,
                       np.exp(-root / beta_rr) / (2.0 * beta_rr * np.maximum(root, 1e-300)),
                       np.inf)
    return float(out) if out.ndim == 0 else out


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for work unit `index` under `seed`.

    Streams are spaced 2^128 states apart, so any partition of trials into
    indexed units draws from non-overlapping portions of one keyed cycle.
    """
    if index < 0:
        raise ValueError("substream index must be nonnegative")
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))
