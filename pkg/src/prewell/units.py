"""Unit system: eV at the I/O boundary, nm^-2 / nm^-1 / nm internally.

All solver modules work in units with hbar^2/(2 m*) = 1, so energies are
wavenumbers squared (nm^-2). eV values appear only in configs, CLI flags
and file formats, and are converted on entry.
"""

import math
from dataclasses import dataclass

# nm^-2 per eV for an effective mass m* = 0.1 m_e
DEFAULT_EV_TO_INV_NM2 = 2.62464


@dataclass(frozen=True)
class UnitSystem:
    """Conversion factor between eV and the internal nm^-2 energy scale."""

    ev_to_inv_nm2: float = DEFAULT_EV_TO_INV_NM2

    def __post_init__(self):
        if not (math.isfinite(self.ev_to_inv_nm2) and self.ev_to_inv_nm2 > 0):
            raise ValueError(
                f"ev_to_inv_nm2 must be finite and positive, got {self.ev_to_inv_nm2}"
            )

    def to_internal(self, energy_ev: float) -> float:
        """eV -> nm^-2."""
        return energy_ev * self.ev_to_inv_nm2

    def to_ev(self, energy_internal: float) -> float:
        """nm^-2 -> eV."""
        return energy_internal / self.ev_to_inv_nm2


DEFAULT_UNITS = UnitSystem()


def to_internal(energy_ev: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    return units.to_internal(energy_ev)


def to_ev(energy_internal: float, units: UnitSystem = DEFAULT_UNITS) -> float:
    return units.to_ev(energy_internal)
