"""Relativistic Wigner rotations, EPR pair states and CHSH correlations."""

from .bell import (
    TSIRELSON,
    BranchObservable,
    CHSHSetting,
    anticorrelation_probability,
    chsh,
    compensated_setting_massive,
    compensated_setting_massless,
    fixed_setting_massive,
    fixed_setting_massless,
    polarization_observable,
    spin_observable,
)
from .errors import (
    ConditioningError,
    DomainError,
    InvalidTransformError,
    NotInLittleGroupError,
    ShellViolationError,
    UndefinedMaximumError,
)
from .little_group import (
    LittleGroupDecomposition,
    WignerAngles,
    decompose_iso2,
    delta_closed_form,
    delta_orthogonal,
    epsilon_argmax_phi,
    epsilon_closed_form,
    epsilon_orthogonal,
    extract_rotation_angle,
    momentum_rotation_angle,
    orthogonal_angles,
    wigner_matrix,
)
from .lorentz import (
    FourVector,
    LorentzTransform,
    apply,
    boost_x,
    boost_z,
    compose,
    observer_boost_general,
    observer_boost_massive,
    rot_x,
    rot_y,
    rot_z,
    standard_boost_massive,
    standard_boost_massless,
)
from .states import (
    PhotonPairAmplitudes,
    SpinHalfAmplitudes,
    entanglement_entropy,
    measure_correlation,
    post_measurement_partner,
    singlet,
    transform_pair_massive,
    transform_pair_massless,
    wigner_d_half,
)
from .sweep import SweepSpec, report_compensation, run_sweep

__version__ = "0.1.0"
