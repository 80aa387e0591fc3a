"""Two-particle spin and polarization states on a pair of momentum branches.

Each particle carries one discrete momentum label (the branch) and a
two-level internal space, so a pair state is four complex amplitudes.  The
product basis is ordered ``|s1 s2>`` with index ``2 * i1 + i2``:

* spin-1/2: ``i = 0`` is up (sigma_z = +1), ``i = 1`` is down;
* photon: ``i = 0`` is helicity +1, ``i = 1`` is helicity -1.

Momentum branches are treated as orthonormal labels, so the continuum
normalization of plane-wave states never appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .errors import ConditioningError
from .lorentz import FourVector, apply, massive_momentum, massless_momentum, observer_boost_general, observer_boost_massive
from .little_group import delta_orthogonal, epsilon_orthogonal

NORM_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)


@dataclass(frozen=True, eq=False)
class PairState:
    """Normalized amplitudes over the 2x2 product basis of two branches."""

    amplitudes: np.ndarray
    branch1: FourVector | None = None
    branch2: FourVector | None = None

    basis: ClassVar[str] = ""

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if a.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got {a.size}")
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as ``M[i1, i2]``."""
        return self.amplitudes.reshape(2, 2)

    def overlap(self, other: PairState) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def same_ray(self, other: PairState, tol: float = NORM_TOL) -> bool:
        """Equality up to a global phase."""
        return abs(abs(self.overlap(other)) - 1) <= tol


@dataclass(frozen=True, eq=False)
class SpinHalfAmplitudes(PairState):
    basis: ClassVar[str] = "spin"

    @property
    def a_uu(self) -> complex:
        return complex(self.amplitudes[0])

    @property
    def a_ud(self) -> complex:
        return complex(self.amplitudes[1])

    @property
    def a_du(self) -> complex:
        return complex(self.amplitudes[2])

    @property
    def a_dd(self) -> complex:
        return complex(self.amplitudes[3])


@dataclass(frozen=True, eq=False)
class PhotonPairAmplitudes(PairState):
    """Helicity-basis amplitudes; ``zeta1``/``zeta2`` are set when the state is
    the anti-correlated linear-polarization pair with those labels."""

    zeta1: float | None = None
    zeta2: float | None = None

    basis: ClassVar[str] = "helicity"


def _normalized(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def singlet(branch1=None, branch2=None) -> SpinHalfAmplitudes:
    return SpinHalfAmplitudes(_normalized([0, 1, -1, 0]), branch1, branch2)


def triplet(branch1=None, branch2=None) -> SpinHalfAmplitudes:
    """``(|up up> + |down down>) / sqrt 2``."""
    return SpinHalfAmplitudes(_normalized([1, 0, 0, 1]), branch1, branch2)


def product_state(u, v, cls=SpinHalfAmplitudes) -> PairState:
    return cls(np.kron(_normalized(u), _normalized(v)))


def spin_matrix(n) -> np.ndarray:
    """``n . sigma`` for a 3-vector ``n`` (not checked for unit length)."""
    n = np.asarray(n, dtype=float)
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def polarization_matrix(zeta: float) -> np.ndarray:
    """``P(zeta) = e^{2i zeta}|+><-| + e^{-2i zeta}|-><+|`` in the (+1, -1) helicity basis."""
    return np.array([[0, np.exp(2j * zeta)], [np.exp(-2j * zeta), 0]], dtype=complex)


def spin_eigenstate(n, outcome: int) -> np.ndarray:
    """Unit eigenvector of ``n . sigma`` with eigenvalue ``outcome``."""
    w, v = np.linalg.eigh(spin_matrix(n))
    return v[:, 1] if outcome > 0 else v[:, 0]


def linear_polarization_ket(zeta: float, parity: int) -> np.ndarray:
    """``|zeta>_+- = (e^{i zeta}|+1> +- e^{-i zeta}|-1>) / sqrt 2``."""
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity!r}")
    return np.array([np.exp(1j * zeta), parity * np.exp(-1j * zeta)]) / np.sqrt(2)


def wigner_d_half(delta: float) -> np.ndarray:
    """Spin-1/2 representation of ``R_y^-1(delta)``: ``exp(-i sigma_y delta / 2)``."""
    c, s = np.cos(delta / 2), np.sin(delta / 2)
    return np.array([[c, -s], [s, c]])


def apply_local(state: PairState, u1, u2) -> PairState:
    """Act with ``u1`` on the first particle and ``u2`` on the second."""
    amps = np.kron(np.asarray(u1), np.asarray(u2)) @ state.amplitudes
    return type(state)(amps, state.branch1, state.branch2)


def relativistic_epr_massive(delta: float, branch1=None, branch2=None) -> SpinHalfAmplitudes:
    """``(cos d (|ud> - |du>) + sin d (|uu> + |dd>)) / sqrt 2``."""
    c, s = np.cos(delta), np.sin(delta)
    return SpinHalfAmplitudes(np.array([s, c, -c, s]) / np.sqrt(2), branch1, branch2)


def photon_epr_state(zeta1: float, zeta2: float, branch1=None, branch2=None) -> PhotonPairAmplitudes:
    """``(|zeta1>_+ |zeta2>_- - |zeta1>_- |zeta2>_+) / sqrt 2``."""
    amps = (
        np.kron(linear_polarization_ket(zeta1, 1), linear_polarization_ket(zeta2, -1))
        - np.kron(linear_polarization_ket(zeta1, -1), linear_polarization_ket(zeta2, 1))
    ) / np.sqrt(2)
    return PhotonPairAmplitudes(amps, branch1, branch2, zeta1=zeta1, zeta2=zeta2)


def helicity_phase(gamma: float) -> np.ndarray:
    """``diag(e^{i gamma}, e^{-i gamma})``: the little-group phase on helicity +-1."""
    return np.diag([np.exp(1j * gamma), np.exp(-1j * gamma)])


def transform_pair_massive(xi: float, chi: float, tol: float = NORM_TOL) -> SpinHalfAmplitudes:
    """Singlet pair moving along +-x, seen by an observer moving along z.

    The result is built from the closed form and cross-checked against
    ``(D(delta) x D(-delta))`` applied to the singlet.
    """
    lam = observer_boost_massive(np.pi / 2, chi)
    b1 = apply(lam, massive_momentum(xi, 1))
    b2 = apply(lam, massive_momentum(xi, -1))
    delta = delta_orthogonal(xi, chi)
    closed = relativistic_epr_massive(delta, b1, b2)
    rotated = apply_local(singlet(b1, b2), wigner_d_half(delta), wigner_d_half(-delta))
    if np.max(np.abs(closed.amplitudes - rotated.amplitudes)) > tol:
        raise ArithmeticError("closed-form and rotated singlet amplitudes disagree")
    return closed


def transform_pair_massless(
    chi: float, phi: float, zeta: float = 0.0, xi: float = 0.0, kappa: float = 1.0, tol: float = NORM_TOL
) -> PhotonPairAmplitudes:
    """Photon EPR pair moving along +-x, seen by observers moving along ``(0, sin phi, cos phi)``.

    The polarization labels become ``(zeta + eps, zeta - eps)``; the helicity
    amplitudes only pick up the phases ``e^{+-i eps sigma}``, which is checked.
    """
    lam = observer_boost_general(np.pi / 2, phi, chi)
    b1 = apply(lam, massless_momentum(xi, 1, kappa))
    b2 = apply(lam, massless_momentum(xi, -1, kappa))
    eps = epsilon_orthogonal(chi, phi)
    closed = photon_epr_state(zeta + eps, zeta - eps, b1, b2)
    phased = apply_local(photon_epr_state(zeta, zeta), helicity_phase(eps), helicity_phase(-eps))
    if np.max(np.abs(closed.amplitudes - phased.amplitudes)) > tol:
        raise ArithmeticError("relabelled and phase-rotated photon amplitudes disagree")
    return closed


def condition_on_outcome(state: PairState, observable1: np.ndarray, outcome: int) -> np.ndarray:
    """Normalized state of particle 2 after measuring ``observable1`` on particle 1."""
    w, v = np.linalg.eigh(observable1)
    ket = v[:, int(np.argmin(np.abs(w - outcome)))]
    partner = ket.conj() @ state.matrix
    prob = float(np.vdot(partner, partner).real)
    if prob <= NORM_TOL:
        raise ConditioningError(f"outcome {outcome} has probability {prob!r}")
    return partner / np.sqrt(prob)


def post_measurement_partner(delta: float, outcome1: int) -> np.ndarray:
    """Second spin after an ``outcome1`` (+1 up, -1 down) sigma_z result on the first.

    For up this is ``cos d |down> + sin d |up>``, an eigenstate of spin along
    ``(-sin 2d, 0, cos 2d)`` with eigenvalue -1.
    """
    if outcome1 not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome1!r}")
    return condition_on_outcome(relativistic_epr_massive(delta), SIGMA_Z, outcome1)


def reduced_density_matrix(state: PairState) -> np.ndarray:
    """Particle-1 density matrix after tracing out the partner branch."""
    m = state.matrix
    return m @ m.conj().T


def entanglement_entropy(state: PairState) -> float:
    """Von Neumann entropy (nats) of the single-particle reduced state."""
    a = np.asarray(state.amplitudes)
    if abs(float(np.vdot(a, a).real) - 1) > NORM_TOL:
        raise ValueError("state is not normalized")
    p = np.linalg.eigvalsh(reduced_density_matrix(state))
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log(p)))


def _unit_direction(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1) > 1e-9:
        raise ValueError(f"direction must be a unit 3-vector, got {n!r}")
    return n


def local_observable(state: PairState, setting) -> np.ndarray:
    """2x2 matrix for a direction (spin) or angle (photon) on ``state``'s basis."""
    if isinstance(state, PhotonPairAmplitudes):
        if np.ndim(setting) != 0:
            raise ValueError("photon observables take a polarization angle")
        return polarization_matrix(float(setting))
    if np.ndim(setting) == 0:
        raise ValueError("spin observables take a unit 3-vector")
    return spin_matrix(_unit_direction(setting))


def expectation(state: PairState, op1: np.ndarray, op2: np.ndarray) -> float:
    """``<psi| op1 x op2 |psi>`` for Hermitian single-particle operators."""
    a = state.amplitudes
    return float(np.vdot(a, np.kron(op1, op2) @ a).real)


def measure_correlation(state: PairState, n1, n2) -> float:
    """Correlation ``E(n1, n2)`` of the two +-1 outcomes."""
    return expectation(state, local_observable(state, n1), local_observable(state, n2))
