"""Crosstalk budget through a shared microwave/flux signal chain.

Chains a room-temperature drive amplitude through line attenuation to the
current at the shorted on-chip termination, converts it to SQUID flux via
the mutual inductance, and evaluates the resulting spurious frequency
shift.  Peak (not RMS) amplitude convention throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modulation import second_order_shift
from .transmon import TransmonParams

__all__ = [
    "PHI0_WB",
    "LineBudget",
    "AttenuationChain",
    "ChainReport",
    "SpuriousShiftReport",
    "attenuation_factor",
    "drive_current",
    "flux_from_current",
    "spurious_shift_report",
    "chain_total",
]

# Magnetic flux quantum h/2e in webers.
PHI0_WB = 2.067833848e-15

DEFAULT_LINEWIDTH_HZ = 10_000.0


@dataclass(frozen=True)
class LineBudget:
    """Attenuation, impedance, mutual inductance and RT drive amplitude."""

    gamma_db: float
    v_p: float
    r_ohm: float = 50.0
    m_fH: float = 500.0

    def __post_init__(self):
        if self.gamma_db < 0:
            raise ValueError(f"gamma_db must be >= 0, got {self.gamma_db}")
        if self.r_ohm <= 0:
            raise ValueError(f"r_ohm must be > 0, got {self.r_ohm}")
        if self.m_fH <= 0:
            raise ValueError(f"m_fH must be > 0, got {self.m_fH}")


@dataclass(frozen=True)
class AttenuationChain:
    """Ordered attenuator stack, each entry (label, attenuation in dB)."""

    segments: tuple[tuple[str, float], ...]
    reference_frequency_mhz: float = 0.0

    def __post_init__(self):
        for label, db in self.segments:
            if db < 0:
                raise ValueError(f"segment {label!r}: attenuation {db} dB < 0")


@dataclass(frozen=True)
class ChainReport:
    total_db: float
    breakdown: tuple[tuple[str, float, float], ...]  # label, dB, cumulative dB
    reference_frequency_mhz: float


@dataclass(frozen=True)
class SpuriousShiftReport:
    phi_ac: float
    delta_f_hz: float
    detectable: bool


def attenuation_factor(gamma_db: float) -> float:
    """Voltage attenuation alpha = 10^(-gamma/20)."""
    if gamma_db < 0:
        raise ValueError(f"gamma_db must be >= 0, got {gamma_db}")
    return 10.0 ** (-gamma_db / 20.0)


def drive_current(budget: LineBudget) -> float:
    """Peak current in amperes at the shorted line termination.

    I = 2 alpha V_p / R; the factor of two is the current doubling at a
    short-circuit termination.
    """
    return 2.0 * attenuation_factor(budget.gamma_db) * budget.v_p / budget.r_ohm


def flux_from_current(m_fH: float, i_amp: float) -> float:
    """SQUID flux in units of Phi0 from a current through the line."""
    if m_fH <= 0:
        raise ValueError(f"m_fH must be > 0, got {m_fH}")
    return m_fH * 1e-15 * i_amp / PHI0_WB


def spurious_shift_report(
    params: TransmonParams,
    budget: LineBudget,
    linewidth_hz: float = DEFAULT_LINEWIDTH_HZ,
) -> SpuriousShiftReport:
    """Full budget: RT amplitude -> current -> flux -> frequency shift."""
    phi_ac = flux_from_current(budget.m_fH, drive_current(budget))
    delta_f = second_order_shift(params, phi_ac)
    return SpuriousShiftReport(
        phi_ac=phi_ac,
        delta_f_hz=delta_f,
        detectable=abs(delta_f) > linewidth_hz,
    )


def chain_total(chain: AttenuationChain) -> ChainReport:
    """Total attenuation of a chain with per-segment cumulative breakdown."""
    if not chain.segments:
        raise ValueError("attenuation chain has no segments")
    breakdown = []
    running = 0.0
    for label, db in chain.segments:
        running += db
        breakdown.append((label, db, running))
    return ChainReport(
        total_db=running,
        breakdown=tuple(breakdown),
        reference_frequency_mhz=chain.reference_frequency_mhz,
    )
