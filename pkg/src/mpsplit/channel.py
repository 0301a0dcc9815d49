"""Large-scale fading radio model.

Pathloss (3GPP urban-macro NLOS with the LOS lower bound), lognormal
shadowing, thermal noise, received power and the Shannon rate of each
uplink. All SNR arithmetic is done in linear units (watts); dB values
appear only at the interfaces.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT_MPS = 299_792_458.0

# Validity floor of the urban-macro pathloss model; shorter links are
# extrapolated with a warning rather than rejected (a roaming UE may
# momentarily pass very close to a BS).
MIN_MODEL_DISTANCE_M = 10.0


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_watts: float) -> float:
    if p_watts < 0.0:
        raise ValueError(f"power must be >= 0 W, got {p_watts}")
    if p_watts == 0.0:
        return -math.inf
    return 10.0 * math.log10(p_watts) + 30.0


def noise_power_dbm(noise_psd_dbm_per_hz: float, bandwidth_hz: float) -> float:
    """Thermal noise integrated over the carrier bandwidth."""
    if bandwidth_hz <= 0.0:
        raise ValueError(f"bandwidth must be > 0 Hz, got {bandwidth_hz}")
    return noise_psd_dbm_per_hz + 10.0 * math.log10(bandwidth_hz)


def pathloss_uma_nlos(d2d_m: float, fc_hz: float, h_bs_m: float, h_ut_m: float) -> float:
    """Urban-macro NLOS pathloss in dB.

    NLOS pathloss is lower-bounded by the dual-slope LOS curve:
    PL = max(PL_LOS, PL'_NLOS) with

        PL'_NLOS = 13.54 + 39.08 log10(d3D) + 20 log10(fc_GHz) - 0.6 (h_UT - 1.5)

    and d3D the slant distance through the antenna-height difference.
    The LOS branch uses the standard breakpoint distance with an
    effective environment height of 1 m.
    """
    if d2d_m <= 0.0:
        raise ValueError(f"2-D distance must be > 0 m, got {d2d_m}")
    if h_bs_m <= 0.0 or h_ut_m <= 0.0:
        raise ValueError("antenna heights must be > 0 m")
    if d2d_m < MIN_MODEL_DISTANCE_M:
        # static text so the default warning filter reports it once, not
        # once per interval of a close-range run
        warnings.warn(
            f"pathloss model evaluated below its {MIN_MODEL_DISTANCE_M:g} m validity floor",
            stacklevel=2,
        )

    fc_ghz = fc_hz / 1e9
    d3d_m = math.hypot(d2d_m, h_bs_m - h_ut_m)

    # Breakpoint with effective environment height 1 m (urban macro).
    d_bp_m = 4.0 * (h_bs_m - 1.0) * (h_ut_m - 1.0) * fc_hz / SPEED_OF_LIGHT_MPS
    if d2d_m <= d_bp_m:
        pl_los = 28.0 + 22.0 * math.log10(d3d_m) + 20.0 * math.log10(fc_ghz)
    else:
        pl_los = (
            28.0
            + 40.0 * math.log10(d3d_m)
            + 20.0 * math.log10(fc_ghz)
            - 9.0 * math.log10(d_bp_m**2 + (h_bs_m - h_ut_m) ** 2)
        )

    pl_nlos = (
        13.54
        + 39.08 * math.log10(d3d_m)
        + 20.0 * math.log10(fc_ghz)
        - 0.6 * (h_ut_m - 1.5)
    )
    return max(pl_los, pl_nlos)


def sample_shadowing(sigma_db: float, rng: np.random.Generator) -> float:
    """Zero-mean Gaussian shadowing draw in dB."""
    if sigma_db < 0.0:
        raise ValueError(f"shadowing sigma must be >= 0 dB, got {sigma_db}")
    return float(rng.normal(0.0, sigma_db))


def rx_power_dbm(p_tx_dbm: float, pathloss_db: float, shadowing_db: float) -> float:
    """Received power: transmit power less pathloss plus shadowing gain."""
    return p_tx_dbm - pathloss_db + shadowing_db


@dataclass(frozen=True)
class LinkState:
    """Per-path radio state for one interval.

    `noise_power_dbm` is the integrated noise over `bandwidth_hz`; the
    achievable rate is exposed as a function of transmit power via
    :meth:`rate_bps`.
    """

    bandwidth_hz: float
    pathloss_db: float
    shadowing_db: float
    noise_power_dbm: float

    def rate_bps(self, p_tx_watts: float) -> float:
        return link_rate_bps(self, p_tx_watts)


def make_link_state(
    bandwidth_hz: float,
    pathloss_db: float,
    shadowing_db: float,
    noise_psd_dbm_per_hz: float,
) -> LinkState:
    return LinkState(
        bandwidth_hz=bandwidth_hz,
        pathloss_db=pathloss_db,
        shadowing_db=shadowing_db,
        noise_power_dbm=noise_power_dbm(noise_psd_dbm_per_hz, bandwidth_hz),
    )


def link_rate_bps(state: LinkState, p_tx_watts: float) -> float:
    """Shannon rate B * log2(1 + P_RX / N) in bits/s; zero power gives zero rate."""
    if p_tx_watts < 0.0:
        raise ValueError(f"transmit power must be >= 0 W, got {p_tx_watts}")
    if p_tx_watts == 0.0:
        return 0.0
    snr_linear = snr_per_watt(state) * p_tx_watts
    return state.bandwidth_hz * math.log2(1.0 + snr_linear)


def snr_per_watt(state: LinkState) -> float:
    """Linear SNR per transmit watt; SNR(P) = snr_per_watt * P."""
    p_rx_dbm_at_0dbw = 30.0 - state.pathloss_db + state.shadowing_db
    return 10.0 ** ((p_rx_dbm_at_0dbw - state.noise_power_dbm) / 10.0)
