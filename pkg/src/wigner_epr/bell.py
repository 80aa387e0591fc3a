"""CHSH combinations for relativistic EPR pairs.

The fixed settings are the ones that violate the inequality maximally for
the untransformed singlet (spin) or photon pair (polarization).  Seen by
moving observers they give ``2 sqrt2 cos^2 delta`` and
``2 sqrt2 cos 4 eps``.  Rotating the measurement axes with the Wigner
rotation restores ``2 sqrt2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .states import (
    PairState,
    PhotonPairAmplitudes,
    SpinHalfAmplitudes,
    expectation,
    local_observable,
    polarization_matrix,
    spin_matrix,
)

TSIRELSON = 2 * np.sqrt(2)

_S = np.array([0.0, -1.0, -1.0]) / np.sqrt(2)
_T = np.array([0.0, -1.0, 1.0]) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class BranchObservable:
    """A +-1 valued observable on one branch: spin along ``direction`` or
    linear polarization at angle ``zeta``."""

    kind: Literal["spin-direction", "polarization-angle"]
    branch: int
    matrix: np.ndarray
    direction: np.ndarray | None = None
    zeta: float | None = None

    def __post_init__(self):
        if self.branch not in (1, 2):
            raise ValueError(f"branch must be 1 or 2, got {self.branch!r}")


def spin_observable(n, branch: int) -> BranchObservable:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1) > 1e-9:
        raise ValueError(f"spin direction must be a unit 3-vector, got {n!r}")
    n = n / np.linalg.norm(n)
    return BranchObservable("spin-direction", branch, spin_matrix(n), direction=n)


def polarization_observable(zeta: float, branch: int) -> BranchObservable:
    if not np.isfinite(zeta):
        raise ValueError("polarization angle must be finite")
    return BranchObservable("polarization-angle", branch, polarization_matrix(zeta), zeta=float(zeta))


@dataclass(frozen=True)
class CHSHSetting:
    """``Q``, ``R`` act on branch 1; ``S``, ``T`` on branch 2."""

    Q: BranchObservable
    R: BranchObservable
    S: BranchObservable
    T: BranchObservable

    def __post_init__(self):
        if self.Q.branch != 1 or self.R.branch != 1:
            raise ValueError("Q and R must act on branch 1")
        if self.S.branch != 2 or self.T.branch != 2:
            raise ValueError("S and T must act on branch 2")
        if len({o.kind for o in (self.Q, self.R, self.S, self.T)}) != 1:
            raise ValueError("all four observables must be of the same kind")

    @property
    def kind(self) -> str:
        return self.Q.kind


def _check_basis(state: PairState, kind: str):
    want = PhotonPairAmplitudes if kind == "polarization-angle" else SpinHalfAmplitudes
    if not isinstance(state, want):
        raise ValueError(f"{kind} observables cannot act on a {type(state).__name__}")


def correlation(state: PairState, a: BranchObservable, b: BranchObservable) -> float:
    _check_basis(state, a.kind)
    _check_basis(state, b.kind)
    return expectation(state, a.matrix, b.matrix)


def chsh(state: PairState, setting: CHSHSetting) -> float:
    """``E(QS) + E(RS) + E(RT) - E(QT)``."""
    q, r, s, t = setting.Q, setting.R, setting.S, setting.T
    return (
        correlation(state, q, s)
        + correlation(state, r, s)
        + correlation(state, r, t)
        - correlation(state, q, t)
    )


def fixed_setting_massive() -> CHSHSetting:
    """``Q = sz``, ``R = sy`` on particle 1; ``S = (-sy - sz)/sqrt2``, ``T = (-sy + sz)/sqrt2`` on particle 2."""
    return compensated_setting_massive(0.0)


def _swap_z(n: np.ndarray, z_axis: np.ndarray) -> np.ndarray:
    # replace the sigma_z component of n by sigma . z_axis
    return n[0] * np.array([1.0, 0, 0]) + n[1] * np.array([0, 1.0, 0]) + n[2] * z_axis


def compensated_setting_massive(delta: float) -> CHSHSetting:
    """Fixed setting with ``sz -> sz cos d + sx sin d`` on particle 1 and
    ``sz -> sz cos d - sx sin d`` inside ``S`` and ``T`` on particle 2."""
    z1 = np.array([np.sin(delta), 0.0, np.cos(delta)])
    z2 = np.array([-np.sin(delta), 0.0, np.cos(delta)])
    ez, ey = np.array([0.0, 0, 1]), np.array([0.0, 1, 0])
    return CHSHSetting(
        Q=spin_observable(_swap_z(ez, z1), 1),
        R=spin_observable(_swap_z(ey, z1), 1),
        S=spin_observable(_swap_z(_S, z2), 2),
        T=spin_observable(_swap_z(_T, z2), 2),
    )


def fixed_setting_massless() -> CHSHSetting:
    """Polarization angles ``0, pi/4`` on photon 1 and ``-3pi/8, -pi/8`` on photon 2."""
    return compensated_setting_massless(0.0)


def compensated_setting_massless(epsilon: float) -> CHSHSetting:
    return CHSHSetting(
        Q=polarization_observable(epsilon, 1),
        R=polarization_observable(np.pi / 4 + epsilon, 1),
        S=polarization_observable(-3 * np.pi / 8 - epsilon, 2),
        T=polarization_observable(-np.pi / 8 - epsilon, 2),
    )


def _projectors(op: np.ndarray) -> dict[int, np.ndarray]:
    w, v = np.linalg.eigh(op)
    return {int(round(x)): np.outer(v[:, i], v[:, i].conj()) for i, x in enumerate(w)}


def anticorrelation_probability(state: PairState, setting) -> float:
    """Probability that both particles, measured along the same direction (or
    polarization angle), give opposite outcomes."""
    op = local_observable(state, setting)
    proj = _projectors(op)
    a = state.amplitudes
    total = 0.0
    for s1, p1 in proj.items():
        for s2, p2 in proj.items():
            if s1 != s2:
                total += float(np.vdot(a, np.kron(p1, p2) @ a).real)
    return total
