"""Restricted Lorentz transformations, four-vectors and standard boosts.

Conventions: coordinates are ``(x0, x1, x2, x3) = (ct, x, y, z)`` and the
metric is ``eta = diag(-1, 1, 1, 1)``.  Rotation matrices follow the
passive sign convention, so ``rot_z(t)`` carries ``+sin t`` at (1, 2) and
``rot_y(t)`` carries ``-sin t`` at (1, 3).  Units are ``M = c = 1`` for
massive momenta and ``kappa = 1`` for the massless standard momentum unless
given explicitly.

Matrices are held in ``numpy.longdouble``.  Products of boosts with rapidity
of order 5 cancel entries of size ``cosh(xi)**2``; extended precision keeps
the pseudo-orthogonality and little-group residuals far below the float64
tolerances quoted throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidTransformError, ShellViolationError

LD = np.longdouble

ETA = np.diag(np.array([-1, 1, 1, 1], dtype=LD))

#: max-abs tolerance for ``L^T eta L = eta``, scaled as described on LorentzTransform
ORTHO_TOL = 1e-12
#: relative tolerance for mass-shell membership
SHELL_TOL = 1e-9


def _as_ld(value, name: str) -> np.longdouble:
    v = LD(value)
    if not np.isfinite(v):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return v


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector ``(t, x, y, z)``."""

    t: np.longdouble
    x: np.longdouble
    y: np.longdouble
    z: np.longdouble

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            object.__setattr__(self, name, _as_ld(getattr(self, name), name))

    @classmethod
    def from_array(cls, arr) -> FourVector:
        a = np.asarray(arr)
        if a.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {a.shape}")
        return cls(*a)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z], dtype=LD)

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=LD)

    @property
    def spatial_norm(self) -> np.longdouble:
        return np.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def minkowski_square(self) -> np.longdouble:
        return minkowski_dot(self, self)

    def to_floats(self) -> tuple[float, float, float, float]:
        return float(self.t), float(self.x), float(self.y), float(self.z)


def minkowski_dot(a: FourVector, b: FourVector) -> np.longdouble:
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z


def _det4(m: np.ndarray) -> np.longdouble:
    # numpy.linalg does not accept longdouble; plain partial-pivot LU
    a = np.array(m, dtype=LD)
    det = LD(1)
    for k in range(4):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0:
            return LD(0)
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        det *= a[k, k]
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return det


def pseudo_orthogonality_residual(m) -> float:
    """Return ``max |m^T eta m - eta|``."""
    m = np.asarray(m.m if isinstance(m, LorentzTransform) else m, dtype=LD)
    return float(np.max(np.abs(m.T @ ETA @ m - ETA)))


@dataclass(frozen=True, eq=False)
class LorentzTransform:
    """A 4x4 matrix in the restricted Lorentz group SO+(1,3).

    Construction validates ``m^T eta m = eta``, ``det m = +1`` and
    ``m00 >= 1`` to ``ORTHO_TOL`` scaled by ``max(1, m00**2, K * m00)``.
    ``K`` bounds the entries of the factors a product was formed from
    (``|L_ij| <= L00`` for any Lorentz matrix), since rounding in ``a @ b``
    grows with ``|a| |b|`` even when the product itself is small.
    """

    m: np.ndarray
    check: bool = field(default=True, repr=False)
    conditioning: float = field(default=1.0, repr=False)

    def __post_init__(self):
        arr = np.array(self.m, dtype=LD)
        if arr.shape != (4, 4):
            raise InvalidTransformError(f"expected a 4x4 matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidTransformError("matrix has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "m", arr)
        if self.check:
            self._validate()

    def _validate(self):
        m = self.m
        m00 = float(m[0, 0])
        scale = max(1.0, m00**2, self.conditioning * m00)
        res = pseudo_orthogonality_residual(m)
        if res > ORTHO_TOL * scale:
            raise InvalidTransformError(f"not pseudo-orthogonal (residual {res:.3e})")
        det = float(_det4(m))
        if abs(det - 1.0) > ORTHO_TOL * scale:
            raise InvalidTransformError(f"determinant {det!r} is not +1")
        if m[0, 0] < 1 - ORTHO_TOL * scale:
            raise InvalidTransformError("not orthochronous (m00 < 1)")

    @property
    def det(self) -> float:
        return float(_det4(self.m))

    @property
    def inv(self) -> LorentzTransform:
        return inverse(self)

    def as_float(self) -> np.ndarray:
        return self.m.astype(float)

    def __matmul__(self, other):
        if isinstance(other, LorentzTransform):
            return compose(self, other)
        if isinstance(other, FourVector):
            return apply(self, other)
        return NotImplemented

    def allclose(self, other: LorentzTransform, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.m - other.m)) <= atol)


def identity() -> LorentzTransform:
    return LorentzTransform(np.eye(4, dtype=LD), check=False)


def _boost(axis: int, xi) -> LorentzTransform:
    xi = _as_ld(xi, "rapidity")
    m = np.eye(4, dtype=LD)
    m[0, 0] = m[axis, axis] = np.cosh(xi)
    m[0, axis] = m[axis, 0] = np.sinh(xi)
    return LorentzTransform(m)


def boost_x(xi) -> LorentzTransform:
    return _boost(1, xi)


def boost_y(xi) -> LorentzTransform:
    return _boost(2, xi)


def boost_z(xi) -> LorentzTransform:
    return _boost(3, xi)


def _rotation(i: int, j: int, theta) -> LorentzTransform:
    theta = _as_ld(theta, "angle")
    c, s = np.cos(theta), np.sin(theta)
    m = np.eye(4, dtype=LD)
    m[i, i] = m[j, j] = c
    m[i, j] = s
    m[j, i] = -s
    return LorentzTransform(m)


def rot_x(theta) -> LorentzTransform:
    # cyclic continuation of rot_z: the (x, y) block becomes (y, z)
    return _rotation(2, 3, theta)


def rot_y(theta) -> LorentzTransform:
    return _rotation(3, 1, theta)


def rot_z(theta) -> LorentzTransform:
    return _rotation(1, 2, theta)


def compose(a: LorentzTransform, b: LorentzTransform) -> LorentzTransform:
    """Matrix product ``a @ b`` (apply ``b`` first)."""
    k = max(a.conditioning, float(a.m[0, 0])) * max(b.conditioning, float(b.m[0, 0]))
    return LorentzTransform(a.m @ b.m, conditioning=k)


def inverse(lam: LorentzTransform) -> LorentzTransform:
    """Exact inverse ``eta L^T eta``."""
    return LorentzTransform(ETA @ lam.m.T @ ETA, check=False, conditioning=lam.conditioning)


def apply(lam: LorentzTransform, p: FourVector) -> FourVector:
    return FourVector.from_array(lam.m @ p.array)


def rapidity_from_velocity(beta) -> float:
    """``atanh(v/c)``; ``v/c`` must lie in (-1, 1)."""
    beta = float(beta)
    if not -1.0 < beta < 1.0:
        raise ValueError(f"velocity v/c must lie in (-1, 1), got {beta!r}")
    return float(np.arctanh(beta))


def velocity_from_rapidity(xi) -> float:
    return float(np.tanh(float(_as_ld(xi, "rapidity"))))


def massive_momentum(xi, sign: int = 1, mass=1.0) -> FourVector:
    """``(M cosh xi, +-M sinh xi, 0, 0)``: a particle moving along +-x."""
    xi = _as_ld(xi, "rapidity")
    m = _as_ld(mass, "mass")
    return FourVector(m * np.cosh(xi), sign * m * np.sinh(xi), 0, 0)


def massless_momentum(xi, sign: int = 1, kappa=1.0) -> FourVector:
    """``(kappa e^xi, +-kappa e^xi, 0, 0)``: a photon moving along +-x."""
    e = _as_ld(kappa, "kappa") * np.exp(_as_ld(xi, "rapidity"))
    return FourVector(e, sign * e, 0, 0)


def rest_momentum(mass=1.0) -> FourVector:
    return FourVector(mass, 0, 0, 0)


def standard_momentum(kappa=1.0) -> FourVector:
    return FourVector(kappa, 0, 0, kappa)


def check_massive_shell(p: FourVector, mass) -> None:
    mass = _as_ld(mass, "mass")
    if mass <= 0:
        raise ValueError(f"mass must be positive, got {mass!r}")
    if p.t <= 0:
        raise ShellViolationError("energy component must be positive")
    viol = abs(p.minkowski_square() + mass * mass)
    if viol > SHELL_TOL * max(LD(1), p.t * p.t):
        raise ShellViolationError(f"p.p = {float(p.minkowski_square())!r}, expected {-float(mass)**2!r}")


def check_lightlike(p: FourVector) -> None:
    if p.t <= 0:
        raise ShellViolationError("energy component must be positive")
    if abs(p.minkowski_square()) > SHELL_TOL * p.t * p.t:
        raise ShellViolationError(f"p.p = {float(p.minkowski_square())!r}, expected 0")


def standard_boost_massive(p: FourVector, mass=1.0) -> LorentzTransform:
    """The pure boost ``L(p)`` taking the rest momentum ``(M, 0, 0, 0)`` to ``p``.

    The spatial block ``delta_ik + (gamma - 1) p^i p^k / |p|^2`` is written as
    ``delta_ik + p^i p^k / (M (M + p^0))``, equal on shell and regular at
    ``|p| = 0``.
    """
    check_massive_shell(p, mass)
    mass = LD(mass)
    v = p.spatial
    m = np.eye(4, dtype=LD)
    m[0, 0] = p.t / mass
    m[0, 1:] = m[1:, 0] = v / mass
    m[1:, 1:] += np.outer(v, v) / (mass * (mass + p.t))
    return LorentzTransform(m)


def momentum_angles(p: FourVector) -> tuple[np.longdouble, np.longdouble]:
    """Polar angle in [0, pi] and azimuth in [0, 2 pi) of the spatial part.

    On the z-axis the azimuth is fixed to 0.
    """
    rho = np.hypot(p.x, p.y)
    theta = np.arctan2(rho, p.z)
    if rho == 0:
        return theta, LD(0)
    phi = np.arctan2(p.y, p.x) % (2 * np.pi)
    return theta, LD(phi)


def standard_boost_massless(p: FourVector, kappa=1.0) -> LorentzTransform:
    """``L(p) = R_z^-1(phi) R_y^-1(theta) B_z(ln(|p|/kappa))``."""
    kappa = _as_ld(kappa, "kappa")
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa!r}")
    check_lightlike(p)
    theta, phi = momentum_angles(p)
    return rot_z(-phi) @ rot_y(-theta) @ boost_z(np.log(p.spatial_norm / kappa))


def observer_boost_massive(theta, chi) -> LorentzTransform:
    """Frame change to an observer moving along ``(cos theta, 0, sin theta)``.

    ``R_y(theta) B_x^-1(chi) R_y^-1(theta)``
    """
    r = rot_y(theta)
    return r @ inverse(boost_x(chi)) @ inverse(r)


def observer_boost_general(theta, phi, chi) -> LorentzTransform:
    """Observer moving along ``(cos theta, sin theta sin phi, sin theta cos phi)``."""
    r = rot_x(phi) @ rot_y(theta)
    return r @ inverse(boost_x(chi)) @ inverse(r)
