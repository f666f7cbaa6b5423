"""Transfer-matrix transmission and bound-state spectra for 1D layered
heterostructures, with the squeezed-prewell point-interaction limit."""

from .bilayer import (
    LimitTransmission,
    PeakValleyReport,
    limit_transmission,
    limit_uv,
    peak_valley_report,
    structure_transmission,
)
from .bound import (
    BoundSpectrum,
    LevelTrack,
    TrackEvent,
    bound_state_residual,
    find_bound_states,
    profile_bound_residual,
    track_levels,
    wall_limit_residual,
    wall_limit_states,
    wb_bound_residual,
    wb_bound_residual_explicit,
    wb_bound_states,
)
from .oracle import (
    NumerovConfig,
    OracleConvergenceError,
    numerov_profile_matrix,
    numerov_transmission,
    square_well_levels,
)
from .potential import (
    BilayerSpec,
    PotentialProfile,
    Segment,
    SqueezeSpec,
    bilayer_profile,
    load_profile,
    profile_from_dict,
    profile_to_dict,
    realize,
    rectangle,
    slabify,
)
from .scattering import (
    ScatteringResult,
    delta_barrier_transmission,
    is_resonant,
    profile_transmission,
    rectangle_transmission,
    resonance_index,
    resonance_thicknesses,
    scatter,
    squeezed_well_growth,
    squeezed_well_transmission,
    transmission,
)
from .transfer import (
    SaturationError,
    TransferMatrix,
    bilayer_matrix,
    closed_form_bilayer_matrix,
    compose,
    profile_matrix,
    segment_matrix,
)
from .units import DEFAULT_EV_TO_INV_NM2, DEFAULT_UNITS, UnitSystem, to_ev, to_internal

__version__ = "0.1.0"
