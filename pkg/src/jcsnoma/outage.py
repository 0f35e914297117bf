"""Closed-form outage probabilities, high-SNR asymptotes, diversity order.

Outage at each device combines the direct branch with the decode-and-forward
branch under selection combining: the relay forwards only when it decodes
(both signals, for the near device), otherwise the direct link alone decides.
Every cascaded-echo average goes through the validated Laplace kernel, so
the erfc-vs-(1-erfc) ambiguity of the naive closed form cannot reappear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .scenario import LinkVariances, Mode, SystemParams
from .specfun import echo_kernel

__all__ = [
    "OutageThresholds",
    "thresholds",
    "relay_decode_success",
    "outage_far",
    "outage_near",
    "outage_far_asymptotic",
    "outage_near_asymptotic",
    "diversity_order",
]


@dataclass(frozen=True)
class OutageThresholds:
    """Gain thresholds equivalent to the decode-SINR conditions.

    theta* / phi* are source-side / relay-side gain thresholds; the starred
    variants absorb the transmit SNR and stay finite in the high-SNR limit.
    Defined only while a_f > a_n * gamma_th_f; past that the far signal can
    never be separated and outage is identically one.
    """

    theta1: float
    theta2: float
    theta: float
    phi1: float
    phi2: float
    phi: float
    theta1_star: float
    theta2_star: float
    theta_star: float


def _sic_margin(params: SystemParams) -> float:
    return params.a_f - params.a_n * params.gamma_th_f


def thresholds(params: SystemParams) -> OutageThresholds:
    margin = _sic_margin(params)
    if margin <= 0:
        raise ValueError("thresholds undefined: a_f <= a_n * gamma_th_f")
    gc, gr = params.gamma_c, params.gamma_r
    t1s = params.gamma_th_f / margin
    t2s = params.gamma_th_n / params.a_n
    t1, t2 = t1s / gc, t2s / gc
    p1, p2 = t1s / gr, t2s / gr
    return OutageThresholds(
        theta1=t1, theta2=t2, theta=max(t1, t2),
        phi1=p1, phi2=p2, phi=max(p1, p2),
        theta1_star=t1s, theta2_star=t2s, theta_star=max(t1s, t2s),
    )


def relay_decode_success(th: float, params: SystemParams,
                         link_vars: LinkVariances) -> float:
    """Probability the source->relay gain clears th*(interference + 1).

    Averages the exponential source-relay gain over the echo (via the
    Laplace kernel) and the exponential self-interference.
    """
    gr = params.gamma_r
    lsi = link_vars.beta_sr / (link_vars.beta_sr
                               + link_vars.beta_li * params.omega * gr * th)
    c = params.delta * gr * th / link_vars.beta_sr
    echo = echo_kernel(link_vars.beta_rr, c) / (2.0 * link_vars.beta_rr)
    return lsi * math.exp(-th / link_vars.beta_sr) * echo


def _combine(direct_fail: float, decode_ok: float, relayed_fail: float) -> float:
    # Selection combining: outage needs the direct copy to fail and, when
    # the relay decoded, the relayed copy to fail as well.
    return direct_fail * ((1.0 - decode_ok) + decode_ok * relayed_fail)


def outage_far(params: SystemParams, link_vars: LinkVariances) -> float:
    """Exact outage probability of the far device."""
    if _sic_margin(params) <= 0:
        return 1.0
    th = thresholds(params)
    direct_fail = -math.expm1(-th.theta1 / link_vars.beta_sdf)
    if params.mode is Mode.NONCOOP:
        return direct_fail
    decode_ok = relay_decode_success(th.theta1, params, link_vars)
    relayed_fail = -math.expm1(-th.phi1 / link_vars.beta_rdf)
    return _combine(direct_fail, decode_ok, relayed_fail)


def outage_near(params: SystemParams, link_vars: LinkVariances) -> float:
    """Exact outage probability of the near device."""
    if _sic_margin(params) <= 0:
        return 1.0
    th = thresholds(params)
    direct_fail = -math.expm1(-th.theta / link_vars.beta_sdn)
    if params.mode is Mode.NONCOOP:
        return direct_fail
    decode_ok = relay_decode_success(th.theta, params, link_vars)
    relayed_fail = -math.expm1(-th.phi / link_vars.beta_rdn)
    return _combine(direct_fail, decode_ok, relayed_fail)


def _asymptotic(params: SystemParams, link_vars: LinkVariances,
                theta_over_gc: float, theta_lim: float, phi: float,
                beta_sd: float, beta_rd: float) -> float:
    direct = theta_over_gc / beta_sd
    if params.mode is Mode.NONCOOP:
        return direct
    lsi = link_vars.beta_sr / (link_vars.beta_sr
                               + link_vars.beta_li * params.omega * theta_lim)
    c = params.delta * theta_lim / link_vars.beta_sr
    decode_ok = lsi * echo_kernel(link_vars.beta_rr, c) / (2.0 * link_vars.beta_rr)
    return direct * (1.0 - (1.0 - phi / beta_rd) * decode_ok)


def outage_far_asymptotic(params: SystemParams, link_vars: LinkVariances) -> float:
    """High-SNR outage of the far device.

    The product of transmit SNR and gain threshold stays finite in the
    limit, so it is evaluated at the configured SNR ratio rather than
    discarded.
    """
    th = thresholds(params)
    theta_lim = th.theta1_star * params.gamma_r / params.gamma_c
    return _asymptotic(params, link_vars, th.theta1, theta_lim, th.phi1,
                       link_vars.beta_sdf, link_vars.beta_rdf)


def outage_near_asymptotic(params: SystemParams, link_vars: LinkVariances) -> float:
    """High-SNR outage of the near device."""
    th = thresholds(params)
    theta_lim = th.theta_star * params.gamma_r / params.gamma_c
    return _asymptotic(params, link_vars, th.theta, theta_lim, th.phi,
                       link_vars.beta_sdn, link_vars.beta_rdn)


def diversity_order(outage_fn: Callable[[SystemParams, LinkVariances], float],
                    params: SystemParams, link_vars: LinkVariances,
                    snr_lo_db: float, snr_hi_db: float) -> float:
    """Log-log outage slope over an SNR window, both transmit SNRs equal."""
    if snr_hi_db <= snr_lo_db:
        raise ValueError("snr_hi_db must exceed snr_lo_db")
    values = []
    for db in (snr_lo_db, snr_hi_db):
        p = params.n0 * 10.0 ** (db / 10.0)
        scaled = replace(params, p_com=p, p_sen=p, p_max=max(params.p_max, p))
        po = outage_fn(scaled, link_vars)
        if po <= 1e-12:
            raise ValueError("outage underflow inside the slope window")
        values.append(po)
    return -(math.log10(values[1]) - math.log10(values[0])) \
        / ((snr_hi_db - snr_lo_db) / 10.0)
