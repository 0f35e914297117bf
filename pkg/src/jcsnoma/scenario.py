"""Scenario constants, node geometry, and per-link channel variances.

Everything downstream consumes linear quantities; decibel values are
converted exactly once, at the configuration boundary (the ``*_db`` keys of
the JSON config and the CLI flags).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path

__all__ = [
    "Mode",
    "SystemParams",
    "Geometry",
    "LinkVariances",
    "derive_variances",
    "paper_defaults",
    "config_from_dict",
    "load_config",
]

_REL_TOL = 1e-12


class Mode(str, Enum):
    """Relay operating mode.

    FD: the relay senses and forwards in the same slot and suffers loop
    self-interference. HD: no self-interference, but the relayed stream
    costs a second time slot. NONCOOP: direct links only, no relay.
    """

    FD = "fd"
    HD = "hd"
    NONCOOP = "noncoop"


@dataclass(frozen=True)
class SystemParams:
    """All scenario constants, in linear units normalized to the noise floor.

    a_f / a_n: power split between the far and near device signals.
    p_com / p_sen: downlink and sensing transmit powers; p_max bounds both.
    gamma_th_f / gamma_th_n: decode-SINR thresholds of the two devices.
    delta: target power reflection factor in [0, 1] (0 means no target).
    omega: duplex switch, 1 for FD and 0 for HD.
    rho_li_mean: mean residual loop self-interference gain.
    omega_var: variance scale of the small-scale fading.
    alpha: path loss exponent.
    kappa: sensing-SINR floor used by the communication-centric optimizer.
    """

    a_f: float
    a_n: float
    p_com: float
    p_sen: float
    p_max: float
    gamma_th_f: float
    gamma_th_n: float
    delta: float
    omega: float
    n0: float
    rho_li_mean: float
    omega_var: float
    alpha: float
    kappa: float
    mode: Mode = Mode.FD

    def __post_init__(self):
        if abs(self.a_f + self.a_n - 1.0) > _REL_TOL:
            raise ValueError("power split must satisfy a_f + a_n = 1")
        if not (0.0 < self.a_n < self.a_f < 1.0):
            raise ValueError("power split must satisfy 0 < a_n < a_f < 1")
        if not (0.0 <= self.delta <= 1.0):
            raise ValueError("delta must lie in [0, 1]")
        if self.omega not in (0.0, 1.0):
            raise ValueError("omega must be 0 or 1")
        for name in ("p_com", "p_sen", "p_max"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.p_com > self.p_max * (1 + _REL_TOL) or \
                self.p_sen > self.p_max * (1 + _REL_TOL):
            raise ValueError("transmit powers must not exceed p_max")
        if self.n0 <= 0:
            raise ValueError("noise power must be positive")
        if self.rho_li_mean <= 0:
            raise ValueError("rho_li_mean must be positive")
        if self.omega_var <= 0:
            raise ValueError("omega_var must be positive")
        if self.alpha < 0:
            raise ValueError("path loss exponent must be nonnegative")
        if self.gamma_th_f <= 0 or self.gamma_th_n <= 0:
            raise ValueError("SINR thresholds must be positive")
        if self.kappa < 0:
            raise ValueError("kappa must be nonnegative")
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        # The duplex switch is what distinguishes FD from HD; the
        # non-cooperative mode never exercises the relay terms.
        if mode is Mode.HD and self.omega != 0.0:
            raise ValueError("HD mode requires omega = 0")
        if mode is Mode.FD and self.omega != 1.0:
            raise ValueError("FD mode requires omega = 1")

    @property
    def gamma_c(self) -> float:
        """Transmit SNR of the downlink source."""
        return self.p_com / self.n0

    @property
    def gamma_r(self) -> float:
        """Transmit SNR of the sensing relay."""
        return self.p_sen / self.n0


@dataclass(frozen=True)
class Geometry:
    """Node distances in meters; the two echo legs share one distance."""

    d_sr: float
    d_sdf: float
    d_sdn: float
    d_rdf: float
    d_rdn: float
    d_rt: float
    d_tr: float

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"{f.name} must be positive")
        if abs(self.d_rt - self.d_tr) > _REL_TOL * max(self.d_rt, self.d_tr):
            raise ValueError("echo legs must satisfy d_rt = d_tr")


@dataclass(frozen=True)
class LinkVariances:
    """Mean power gain of each fading link plus the self-interference mean."""

    beta_sr: float
    beta_sdf: float
    beta_sdn: float
    beta_rdf: float
    beta_rdn: float
    beta_rr: float
    beta_li: float

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"{f.name} must be strictly positive")


def _beta(omega_var: float, alpha: float, d: float) -> float:
    return omega_var / math.sqrt(1.0 + d ** alpha)


def derive_variances(params: SystemParams, geo: Geometry) -> LinkVariances:
    """Distance-dependent link variances beta = omega_var / sqrt(1 + d^alpha).

    The echo-leg variance comes from the relay-target distance; the loop
    self-interference mean is a hardware figure, not a geometric one.
    """
    ov, al = params.omega_var, params.alpha
    return LinkVariances(
        beta_sr=_beta(ov, al, geo.d_sr),
        beta_sdf=_beta(ov, al, geo.d_sdf),
        beta_sdn=_beta(ov, al, geo.d_sdn),
        beta_rdf=_beta(ov, al, geo.d_rdf),
        beta_rdn=_beta(ov, al, geo.d_rdn),
        beta_rr=_beta(ov, al, geo.d_rt),
        beta_li=params.rho_li_mean,
    )


def paper_defaults() -> tuple[SystemParams, Geometry]:
    """Reference scenario: the simulation constants used throughout.

    Transmit powers default to 20 dB over noise with a 30 dB budget and a
    unit sensing floor; sweeps replace these per point.
    """
    params = SystemParams(
        a_f=0.7,
        a_n=0.3,
        p_com=100.0,
        p_sen=100.0,
        p_max=1000.0,
        gamma_th_f=1.0,
        gamma_th_n=2.0,
        delta=0.2,
        omega=1.0,
        n0=1.0,
        rho_li_mean=10.0 ** (-25.0 / 10.0),
        omega_var=5.0,
        alpha=4.0,
        kappa=1.0,
        mode=Mode.FD,
    )
    geo = Geometry(d_sr=10.0, d_sdf=25.0, d_sdn=20.0, d_rdf=20.0,
                   d_rdn=15.0, d_rt=12.0, d_tr=12.0)
    return params, geo


_PARAM_FIELDS = {f.name for f in fields(SystemParams)}
_GEO_FIELDS = {f.name for f in fields(Geometry)}
_DB_FIELDS = {"p_com", "p_sen", "p_max", "rho_li_mean"}


def config_from_dict(doc: dict) -> tuple[SystemParams, Geometry]:
    """Build a scenario from a flat mapping of field names.

    Keys mirror the dataclass fields. Powers and the self-interference mean
    additionally accept a ``*_db`` variant; giving both forms of one field,
    or any unknown key, is rejected.
    """
    known = _PARAM_FIELDS | _GEO_FIELDS | {k + "_db" for k in _DB_FIELDS}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ValueError(f"unknown configuration keys: {unknown}")
    base_p, base_g = paper_defaults()
    pvals = {f.name: getattr(base_p, f.name) for f in fields(SystemParams)}
    gvals = {f.name: getattr(base_g, f.name) for f in fields(Geometry)}
    for key, val in doc.items():
        if key.endswith("_db") and key[:-3] in _DB_FIELDS:
            base = key[:-3]
            if base in doc:
                raise ValueError(f"both {base} and {key} given")
            pvals[base] = 10.0 ** (float(val) / 10.0)
        elif key in _PARAM_FIELDS:
            pvals[key] = Mode(val) if key == "mode" else float(val)
        else:
            gvals[key] = float(val)
    return SystemParams(**pvals), Geometry(**gvals)


def load_config(path: str | Path) -> tuple[SystemParams, Geometry]:
    """Read a JSON scenario file; see config_from_dict for the schema."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("configuration document must be a JSON object")
    return config_from_dict(doc)
