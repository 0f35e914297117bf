"""Achievable and ergodic rates, exact integrals and closed-form surrogates.

The relayed stream carries each signal end to end through the weakest hop,
while the direct stream arrives in parallel; the two contributions add.
In HD mode the relayed contribution pays a factor one half for the extra
time slot, and the non-cooperative variant drops it entirely. Ergodic
values integrate the channel-averaged survival functions; the far-device
integrand vanishes past the power-split ceiling a_f/a_n, the near-device
direct term reduces to an exponential-integral closed form.
"""

from __future__ import annotations

import math

from .scenario import LinkVariances, Mode, SystemParams
from .sinr import evaluate
from .specfun import QuadratureSpec, echo_kernel, exp_integral_ei, integrate

__all__ = [
    "achievable_rates",
    "ergodic_rate_far",
    "ergodic_rate_near",
    "ergodic_rate_far_approx",
    "ergodic_rate_near_approx",
    "ergodic_sum_approx",
]

_LN2 = math.log(2.0)


def _relayed_weight(mode: Mode) -> float:
    if mode is Mode.NONCOOP:
        return 0.0
    return 0.5 if mode is Mode.HD else 1.0


def achievable_rates(params: SystemParams, gains) -> tuple[float, float]:
    """Per-realization rates (bits/s/Hz) of the far and near devices."""
    s = evaluate(params, gains)
    w = _relayed_weight(params.mode)
    relayed_f = math.log2(1.0 + min(s.sr_xf, s.rdf_xf, s.rdn_xf))
    direct_f = math.log2(1.0 + min(s.sdf_xf, s.sdn_xf))
    relayed_n = math.log2(1.0 + min(s.sr_xn, s.rdn_xn))
    direct_n = math.log2(1.0 + s.sdn_xn)
    return w * relayed_f + direct_f, w * relayed_n + direct_n


def _relay_chain_survival(params: SystemParams, link_vars: LinkVariances,
                          g_src: float, hop_terms: float) -> float:
    """P(relayed-path SINR > w) expressed through the source-gain scale g_src.

    hop_terms collects the exponential decode margins of the relay-to-device
    hops; the source hop averages over the echo (Laplace kernel) and the
    loop self-interference.
    """
    b_sr = link_vars.beta_sr
    gr = params.gamma_r
    lsi = b_sr * g_src / (b_sr * g_src + link_vars.beta_li * params.omega * gr)
    c = params.delta * gr / (g_src * b_sr)
    echo = echo_kernel(link_vars.beta_rr, c) / (2.0 * link_vars.beta_rr)
    return lsi * echo * math.exp(-1.0 / (b_sr * g_src) + hop_terms)


def ergodic_rate_far(params: SystemParams, link_vars: LinkVariances,
                     spec: QuadratureSpec | None = None) -> float:
    """Channel-averaged rate of the far device."""
    a_f, a_n = params.a_f, params.a_n
    gc, gr = params.gamma_c, params.gamma_r
    w_max = a_f / a_n
    weight = _relayed_weight(params.mode)

    def g_c(w: float) -> float:
        return (a_f * gc - a_n * gc * w) / w

    def g_r(w: float) -> float:
        return (a_f * gr - a_n * gr * w) / w

    def relayed(w: float) -> float:
        if w <= 0.0 or w >= w_max:
            return 0.0
        hop = -1.0 / (link_vars.beta_rdf * g_r(w)) \
            - 1.0 / (link_vars.beta_rdn * g_r(w))
        return _relay_chain_survival(params, link_vars, g_c(w), hop) / (1.0 + w)

    def direct(w: float) -> float:
        if w <= 0.0 or w >= w_max:
            return 0.0
        g = g_c(w)
        return math.exp(-1.0 / (link_vars.beta_sdf * g)
                        - 1.0 / (link_vars.beta_sdn * g)) / (1.0 + w)

    out = integrate(direct, 0.0, w_max, spec) / _LN2
    if weight > 0.0:
        out += weight * integrate(relayed, 0.0, w_max, spec) / _LN2
    return out


def ergodic_rate_near(params: SystemParams, link_vars: LinkVariances,
                      spec: QuadratureSpec | None = None) -> float:
    """Channel-averaged rate of the near device."""
    a_n = params.a_n
    gc, gr = params.gamma_c, params.gamma_r
    weight = _relayed_weight(params.mode)

    def relayed(w: float) -> float:
        if w <= 0.0:
            return 0.0
        q_c = a_n * gc / w
        q_r = a_n * gr / w
        hop = -1.0 / (link_vars.beta_rdn * q_r)
        return _relay_chain_survival(params, link_vars, q_c, hop) / (1.0 + w)

    s = 1.0 / (link_vars.beta_sdn * a_n * gc)
    out = -math.exp(s) * exp_integral_ei(-s) / _LN2
    if weight > 0.0:
        out += weight * integrate(relayed, 0.0, math.inf, spec) / _LN2
    return out


def _ratio(num: float, den: float) -> float:
    return num / den


def ergodic_rate_far_approx(params: SystemParams, link_vars: LinkVariances) -> float:
    """Mean-gain surrogate for the far-device ergodic rate.

    Replaces each gain by its first moment inside the rate expression (the
    echo by its second-moment mean); accurate only once every decode SINR
    is well above one, and optimistic below that.
    """
    a_f, a_n = params.a_f, params.a_n
    gc, gr = params.gamma_c, params.gamma_r
    v = link_vars
    echo_li = (2.0 * v.beta_rr ** 2 * params.delta * gr
               + v.beta_li * params.omega * gr)
    direct = math.log2(1.0 + min(
        _ratio(a_f * v.beta_sdf * gc, a_n * v.beta_sdf * gc + 1.0),
        _ratio(a_f * v.beta_sdn * gc, a_n * v.beta_sdn * gc + 1.0)))
    relayed = math.log2(1.0 + min(
        _ratio(a_f * v.beta_sr * gc, a_n * v.beta_sr * gc + echo_li + 1.0),
        _ratio(a_f * v.beta_rdf * gr, a_n * v.beta_rdf * gr + 1.0),
        _ratio(a_f * v.beta_rdn * gr, a_n * v.beta_rdn * gr + 1.0)))
    return _relayed_weight(params.mode) * relayed + direct


def ergodic_rate_near_approx(params: SystemParams, link_vars: LinkVariances) -> float:
    """Mean-gain surrogate for the near-device ergodic rate."""
    a_n = params.a_n
    gc, gr = params.gamma_c, params.gamma_r
    v = link_vars
    echo_li = (2.0 * v.beta_rr ** 2 * params.delta * gr
               + v.beta_li * params.omega * gr)
    direct = math.log2(1.0 + a_n * v.beta_sdn * gc)
    relayed = math.log2(1.0 + min(
        _ratio(a_n * v.beta_sr * gc, echo_li + 1.0),
        a_n * v.beta_rdn * gr))
    return _relayed_weight(params.mode) * relayed + direct


def ergodic_sum_approx(params: SystemParams, link_vars: LinkVariances) -> float:
    """Mean-gain surrogate for the ergodic sum rate."""
    return (ergodic_rate_far_approx(params, link_vars)
            + ergodic_rate_near_approx(params, link_vars))
