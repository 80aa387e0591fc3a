"""Wigner rotations and their closed-form angles.

``W(L, p) = L^-1(L p) L L(p)`` fixes the standard momentum: the rest
momentum for a massive particle (so ``W`` is a spatial rotation) or
``(kappa, 0, 0, kappa)`` for a massless one (so ``W = S(alpha, beta) R_z(gamma)``
lies in ISO(2)).

Angles use the same passive convention as the rotation matrices: a
decomposition reporting ``angle`` about ``axis`` means ``W = R_axis(angle)``,
so ``rot_y(-d)`` decomposes to axis ``y``, angle ``-d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, NotInLittleGroupError, UndefinedMaximumError
from .lorentz import (
    LD,
    FourVector,
    LorentzTransform,
    apply,
    inverse,
    massive_momentum,
    massless_momentum,
    observer_boost_general,
    observer_boost_massive,
    rot_z,
    standard_boost_massive,
    standard_boost_massless,
)

LITTLE_GROUP_TOL = 1e-9
# below this |sin(angle)| the rotation axis is read from the symmetric part
_NEAR_PI = 1e-6


def normalize_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = float(a)
    r = np.pi - (np.pi - a) % (2 * np.pi)
    return float(r)


@dataclass(frozen=True)
class LittleGroupDecomposition:
    kind: Literal["massive-rotation", "massless-iso2"]
    delta: float = 0.0
    axis: tuple[float, float, float] = (0.0, 1.0, 0.0)
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    ambiguous_axis: bool = False

    def reconstruct(self) -> LorentzTransform:
        if self.kind == "massive-rotation":
            return axis_rotation(self.axis, self.delta)
        return translation(self.alpha, self.beta) @ rot_z(self.gamma)


@dataclass(frozen=True)
class WignerAngles:
    """Spin (``delta``), momentum (``delta_p``) and polarization (``epsilon``) angles."""

    delta: float
    delta_p: float
    epsilon: float


def wigner_matrix(lam: LorentzTransform, p: FourVector, mass=1.0, kappa=1.0) -> LorentzTransform:
    """``L^-1(lam p) lam L(p)`` for ``mass > 0``, or the massless analogue for ``mass == 0``."""
    if mass == 0:
        def std(q):
            return standard_boost_massless(q, kappa)
    else:
        def std(q):
            return standard_boost_massive(q, mass)
    lp = apply(lam, p)
    return inverse(std(lp)) @ lam @ std(p)


def axis_rotation(axis, angle) -> LorentzTransform:
    """``R_n(angle)`` about the unit vector ``axis`` in the passive convention."""
    n = np.asarray(axis, dtype=LD)
    n = n / np.sqrt(n @ n)
    a = -LD(angle)  # passive R_n(t) is the active rotation by -t
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]], dtype=LD)
    r = np.eye(3, dtype=LD) + np.sin(a) * k + (1 - np.cos(a)) * (k @ k)
    m = np.eye(4, dtype=LD)
    m[1:, 1:] = r
    return LorentzTransform(m)


def translation(alpha, beta) -> LorentzTransform:
    """The ISO(2) "translation" ``S(alpha, beta)`` fixing ``(kappa, 0, 0, kappa)``."""
    a, b = LD(alpha), LD(beta)
    z = (a * a + b * b) / 2
    m = np.array(
        [
            [1 + z, a, b, -z],
            [a, 1, 0, -a],
            [b, 0, 1, -b],
            [z, a, b, 1 - z],
        ],
        dtype=LD,
    )
    return LorentzTransform(m)


def _canonical_axis(n: np.ndarray) -> tuple[np.ndarray, int]:
    # prefer +y, then +z, then +x; returns the axis and the sign applied
    for i in (1, 2, 0):
        if abs(n[i]) > 1e-12:
            s = 1 if n[i] > 0 else -1
            return n * s, s
    return n, 1


def extract_rotation_angle(w: LorentzTransform, tol: float = LITTLE_GROUP_TOL) -> LittleGroupDecomposition:
    """Axis and angle of a spatial rotation embedded in a Lorentz matrix."""
    m = w.m
    if abs(m[0, 0] - 1) > tol or np.max(np.abs(m[0, 1:])) > tol or np.max(np.abs(m[1:, 0])) > tol:
        raise NotInLittleGroupError("matrix does not fix the rest momentum")
    r = m[1:, 1:].astype(float)
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol:
        raise NotInLittleGroupError("spatial block is not orthogonal")
    # active axis-angle: r = exp(a [n]x), a in [0, pi]
    v = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    s = np.linalg.norm(v) / 2
    c = (np.trace(r) - 1) / 2
    a = float(np.arctan2(s, c))
    ambiguous = False
    if s < 1e-15 and c > 0:
        return LittleGroupDecomposition("massive-rotation", delta=0.0)
    if s < _NEAR_PI:
        # near pi: (r + I)/2 ~ n n^T
        ambiguous = True
        sym = (r + np.eye(3)) / 2
        col = int(np.argmax(np.diag(sym)))
        n = sym[:, col] / np.sqrt(sym[col, col])
        if s > 0:
            n = n if n @ v >= 0 else -n
    else:
        n = v / (2 * s)
    n, sign = _canonical_axis(n)
    # passive angle is minus the active one
    angle = normalize_angle(-a * sign)
    if ambiguous and angle == -np.pi:
        angle = np.pi
    return LittleGroupDecomposition(
        "massive-rotation", delta=angle, axis=tuple(float(x) + 0.0 for x in n), ambiguous_axis=ambiguous
    )


def decompose_iso2(w: LorentzTransform, tol: float = LITTLE_GROUP_TOL) -> LittleGroupDecomposition:
    """Factor ``W = S(alpha, beta) R_z(gamma)``; the (2,1), (2,2) entries are ``-sin gamma, cos gamma``."""
    m = w.m
    k = np.array([1, 0, 0, 1], dtype=LD)
    if np.max(np.abs(m @ k - k)) > tol:
        raise NotInLittleGroupError("matrix does not fix the standard momentum")
    gamma = float(np.arctan2(-m[2, 1], m[2, 2]))
    s = m @ rot_z(-gamma).m
    alpha, beta = float(s[1, 0]), float(s[2, 0])
    d = LittleGroupDecomposition("massless-iso2", alpha=alpha, beta=beta, gamma=normalize_angle(gamma))
    if np.max(np.abs(d.reconstruct().m - m)) > tol:
        raise NotInLittleGroupError("reconstruction S(alpha, beta) R_z(gamma) does not match")
    return d


def _sech(x) -> float:
    e = np.exp(-abs(x))
    return 2 * e / (1 + e * e)


def _one_minus_sech(x) -> float:
    # (cosh x - 1) / cosh x without cancellation for small x
    if abs(x) < 1:
        return 2 * np.sinh(x / 2) ** 2 / np.cosh(x)
    return 1 - _sech(x)


def delta_closed_form(xi: float, chi: float, theta: float) -> tuple[float, float]:
    """``(cos delta, sin delta)`` of ``W = R_y^-1(delta)`` for the observer at angle ``theta``.

    With ``A = cosh xi + cosh chi``, ``B = sinh xi sinh chi``,
    ``C = (cosh xi - 1)(cosh chi - 1)``, ``D = cosh xi cosh chi + 1``::

        cos delta = (A - B cos t + C cos^2 t) / (D - B cos t)
        sin delta = (B sin t - C sin t cos t) / (D - B cos t)

    Since ``D - A - C = 0`` the cosine numerator equals ``den - C sin^2 t``.
    Everything is divided by ``cosh xi cosh chi`` and the denominator is
    summed from non-negative pieces,
    ``cosh(xi - chi) + 1 + B (1 - cos t)``, so it stays positive and free of
    cancellation.  Intermediates are long double, which keeps the scaled
    terms representable up to rapidities of a few thousand.
    """
    for name, v in (("xi", xi), ("chi", chi), ("theta", theta)):
        if not np.isfinite(v):
            raise DomainError(f"{name} must be finite")
    xi, chi, theta = LD(xi), LD(chi), LD(theta)
    sx, sc = _sech(xi), _sech(chi)
    b = np.tanh(xi) * np.tanh(chi)
    c = _one_minus_sech(xi) * _one_minus_sech(chi)
    ct, st = np.cos(theta), np.sin(theta)
    den = np.cosh(xi - chi) * sx * sc + sx * sc + 2 * b * np.sin(theta / 2) ** 2
    if not den > 0:
        raise DomainError(f"denominator underflowed at xi={float(xi)!r}, chi={float(chi)!r}")
    cos_d = den - c * st * st
    sin_d = st * (b - c * ct)
    h = np.hypot(cos_d, sin_d)
    return float(cos_d / h), float(sin_d / h)


def delta_orthogonal(xi: float, chi: float) -> float:
    """Wigner angle for an observer moving perpendicular to the particle.

    ``tan delta = sinh xi sinh chi / (cosh xi + cosh chi)``, evaluated as
    ``atan2(tanh xi tanh chi, sech xi + sech chi)``.
    """
    return float(np.arctan2(np.tanh(xi) * np.tanh(chi), _sech(xi) + _sech(chi)))


def momentum_rotation_angle(xi: float, chi: float) -> float:
    """``delta_p = atan(sinh chi / tanh xi)``; pi/2 at ``xi = 0 < chi`` and 0 when both vanish."""
    with np.errstate(over="ignore"):
        return float(np.arctan2(abs(np.sinh(chi)), abs(np.tanh(xi))))


def epsilon_closed_form(chi: float, theta: float, phi: float, branch: int) -> float:
    """Polarization rotation ``epsilon_+-`` for a photon moving along ``+-x``.

    ``epsilon = atan2(E, D)`` with ``D = 1 -+ sinh chi cos t + (cosh chi - 1)(cos^2 t + sin^2 t sin^2 f)``
    and ``E = +-(cosh chi - 1) sin^2 t sin f cos f``, all scaled by ``sech chi``.
    """
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch!r}")
    sc = _sech(chi)
    k = _one_minus_sech(chi)
    ct, st = np.cos(theta), np.sin(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    d = sc - branch * np.tanh(chi) * ct + k * (ct * ct + st * st * sp * sp)
    e = branch * k * st * st * sp * cp
    return normalize_angle(np.arctan2(e, d))


def epsilon_orthogonal(chi: float, phi: float) -> float:
    """``tan eps = (cosh chi - 1) sin f cos f / (1 + (cosh chi - 1) sin^2 f)``."""
    sc = _sech(chi)
    k = _one_minus_sech(chi)
    sp, cp = np.sin(phi), np.cos(phi)
    return normalize_angle(np.arctan2(k * sp * cp, sc + k * sp * sp))


def epsilon_argmax_phi(chi: float) -> float:
    """Observer azimuth maximizing ``epsilon``: ``arccos(tanh^2(chi/2)) / 2``."""
    if chi == 0:
        raise UndefinedMaximumError("epsilon vanishes identically at chi = 0")
    return float(np.arccos(np.tanh(chi / 2) ** 2) / 2)


def orthogonal_angles(xi: float, chi: float, phi: float) -> WignerAngles:
    return WignerAngles(
        delta=delta_orthogonal(xi, chi),
        delta_p=momentum_rotation_angle(xi, chi),
        epsilon=epsilon_orthogonal(chi, phi),
    )


def massive_wigner(xi: float, chi: float, theta: float = np.pi / 2, branch: int = 1) -> LorentzTransform:
    """Matrix-path Wigner rotation for a particle along ``branch * x`` seen by the tilted observer."""
    return wigner_matrix(observer_boost_massive(theta, chi), massive_momentum(xi, branch))


def massless_wigner(
    chi: float, theta: float, phi: float, branch: int = 1, xi: float = 0.0, kappa: float = 1.0
) -> LorentzTransform:
    """Matrix-path little-group element for a photon along ``branch * x``."""
    lam = observer_boost_general(theta, phi, chi)
    return wigner_matrix(lam, massless_momentum(xi, branch, kappa), mass=0, kappa=kappa)
