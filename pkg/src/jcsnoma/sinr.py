"""Deterministic decode and sensing SINRs for a given set of power gains.

The near device first decodes the far signal (treating the near signal as
interference) and cancels it; the relay additionally sees the target echo
and, in FD mode, its own loop self-interference. Gains may come from a
sampled realization or from mean-value surrogates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scenario import SystemParams

__all__ = ["SinrSet", "evaluate", "received_power", "estimate_target_info"]


@dataclass(frozen=True)
class SinrSet:
    """Every decode SINR plus the sensing SINR, all linear."""

    sdn_xf: float   # near device decoding the far signal, direct link
    sdn_xn: float   # near device decoding its own signal after cancellation
    sdf_xf: float   # far device decoding its own signal, direct link
    sr_xf: float    # relay decoding the far signal
    sr_xn: float    # relay decoding the near signal after cancellation
    rdf_xf: float   # far device decoding the relayed far signal
    rdn_xf: float   # near device decoding the relayed far signal
    rdn_xn: float   # near device decoding the relayed near signal
    sense: float    # echo SINR at the relay


def evaluate(params: SystemParams, gains) -> SinrSet:
    """Field-by-field SINR evaluation; `gains` needs only rho_* attributes."""
    a_f, a_n = params.a_f, params.a_n
    gc, gr = params.gamma_c, params.gamma_r
    echo_li = gains.rho_rr * params.delta * gr + gains.rho_li * params.omega * gr
    return SinrSet(
        sdn_xf=a_f * gains.rho_sdn * gc / (a_n * gains.rho_sdn * gc + 1.0),
        sdn_xn=a_n * gains.rho_sdn * gc,
        sdf_xf=a_f * gains.rho_sdf * gc / (a_n * gains.rho_sdf * gc + 1.0),
        sr_xf=a_f * gains.rho_sr * gc / (a_n * gains.rho_sr * gc + echo_li + 1.0),
        sr_xn=a_n * gains.rho_sr * gc / (echo_li + 1.0),
        rdf_xf=a_f * gains.rho_rdf * gr / (a_n * gains.rho_rdf * gr + 1.0),
        rdn_xf=a_f * gains.rho_rdn * gr / (a_n * gains.rho_rdn * gr + 1.0),
        rdn_xn=a_n * gains.rho_rdn * gr,
        sense=params.delta * gains.rho_rr * gr
              / (gains.rho_sr * gc + gains.rho_li * params.omega * gr + 1.0),
    )


def received_power(params: SystemParams, gains) -> float:
    """Mean received power at the relay for one channel state.

    The expectation is over signals and noise with the channel held fixed;
    this is the quantity the relay can actually measure.
    """
    return (gains.rho_sr * params.p_com
            + gains.rho_rr * params.delta * params.p_sen
            + gains.rho_li * params.omega * params.p_sen
            + params.n0)


def estimate_target_info(params: SystemParams, gains, measured_power: float) -> float:
    """Recover the echo-gain/reflection product from a power measurement.

    Inverts the received-power map using the known self-interference,
    source contribution, and noise floor; clamped at zero since a gain
    product cannot be negative.
    """
    if measured_power < 0:
        raise ValueError("measured power must be nonnegative")
    if params.p_sen == 0:
        raise ValueError("inversion undefined with zero sensing power")
    est = (measured_power
           - gains.rho_li * params.omega * params.p_sen
           - gains.rho_sr * params.p_com
           - params.n0) / params.p_sen
    return max(0.0, est)
