import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .basics import (
    IDENTITY,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    Y_HAT,
    BoostParams,
    InvalidKinematicsError,
    ParticleKinematics,
)


# Below this, sin(φ/2) is treated as zero and the axis falls back to ŷ
_AXIS_EPS = 1e-300


@dataclass(frozen=True)
class WignerRotation:
    """
    SU(2) element D(W(Λ,p)) = cos(φ/2) 1 + i sin(φ/2) (Σ·n̂).

    Attributes:
        cos_half (float): cos(φ/2).
        sin_half (float):
            sin(φ/2). Non-negative for wigner_general; wigner_1d keeps the axis
            fixed at ŷ and lets the sign follow the momentum.
        axis (tuple): Unit rotation axis n̂, ŷ by convention when sin_half = 0.
    """

    cos_half: float
    sin_half: float
    axis: Tuple[float, float, float] = Y_HAT

    @property
    def angle(self) -> float:
        return 2.0 * math.atan2(self.sin_half, self.cos_half)

    @property
    def rotation_vector(self) -> np.ndarray:
        """sin(φ/2) n̂, the vector part of the unit quaternion."""
        return self.sin_half * np.array(self.axis)

    def matrix(self) -> np.ndarray:
        sigma_n = sum(n_i * s_i for n_i, s_i in zip(self.axis, PAULI))
        return self.cos_half * IDENTITY + 1j * self.sin_half * sigma_n


def wigner_general(
    boost: BoostParams, kin: ParticleKinematics, beta: float
) -> WignerRotation:
    """
    Wigner rotation of a sharp momentum state under a pure boost.

    The particle moves with rapidity beta along kin.direction, the observer
    with rapidity boost.alpha along boost.axis.

    Args:
        boost (BoostParams): The observer boost.
        kin (ParticleKinematics): Mass and momentum direction f̂.
        beta (float): Particle rapidity, beta >= 0.

    Returns:
        WignerRotation: Angle and axis of the little-group element.
    """
    if beta < 0:
        raise InvalidKinematicsError(f"beta must be >= 0, got {beta}")
    alpha = boost.alpha
    e_hat = boost.axis_vector
    f_hat = np.array(kin.direction)
    e_dot_f = float(np.dot(e_hat, f_hat))
    e_cross_f = np.cross(e_hat, f_hat)

    denom = math.sqrt(
        0.5
        + 0.5 * math.cosh(alpha) * math.cosh(beta)
        + 0.5 * math.sinh(alpha) * math.sinh(beta) * e_dot_f
    )
    ch_a, sh_a = math.cosh(alpha / 2), math.sinh(alpha / 2)
    ch_b, sh_b = math.cosh(beta / 2), math.sinh(beta / 2)
    cos_half = (ch_a * ch_b + sh_a * sh_b * e_dot_f) / denom
    vector = sh_a * sh_b * e_cross_f / denom

    sin_half = float(np.linalg.norm(vector))
    if sin_half <= _AXIS_EPS:
        return WignerRotation(cos_half, 0.0, Y_HAT)
    return WignerRotation(cos_half, sin_half, tuple(vector / sin_half))


def wigner_1d(boost: BoostParams, p: float, m: float) -> WignerRotation:
    """
    Wigner rotation for a boost along ẑ and a particle momentum p along x̂.

    The rotation axis is ẑ × x̂ = ŷ for every p; negative p flips the sign
    of sin_half.
    """
    if not m > 0:
        raise InvalidKinematicsError(f"Mass must be > 0 MeV, got {m}")
    if not boost.is_along_z():
        raise InvalidKinematicsError("wigner_1d expects a boost along ẑ")
    alpha = boost.alpha
    beta = math.asinh(p / m)
    denom = math.sqrt(0.5 + 0.5 * math.cosh(alpha) * math.cosh(beta))
    cos_half = math.cosh(alpha / 2) * math.cosh(beta / 2) / denom
    sin_half = math.sinh(alpha / 2) * math.sinh(beta / 2) / denom
    return WignerRotation(cos_half, sin_half, Y_HAT)


def wigner_3d_zboost(boost: BoostParams, p: Sequence[float], m: float) -> np.ndarray:
    """
    2x2 representation D(W(Λ,p)) for a boost along ẑ and arbitrary 3-momentum.

    D = [(p⁰+m) cosh(α/2) + p_z sinh(α/2) - i sinh(α/2)(-p_x σ_y + p_y σ_x)]
        / sqrt((p⁰+m)(p⁰ cosh α + p_z sinh α + m))
    """
    if not m > 0:
        raise InvalidKinematicsError(f"Mass must be > 0 MeV, got {m}")
    if not boost.is_along_z():
        raise InvalidKinematicsError("wigner_3d_zboost expects a boost along ẑ")
    px, py, pz = (float(v) for v in p)
    alpha = boost.alpha
    p0 = math.sqrt(px * px + py * py + pz * pz + m * m)
    ch, sh = math.cosh(alpha / 2), math.sinh(alpha / 2)
    norm = math.sqrt(
        (p0 + m) * (p0 * math.cosh(alpha) + pz * math.sinh(alpha) + m)
    )
    numerator = ((p0 + m) * ch + pz * sh) * IDENTITY - 1j * sh * (
        -px * SIGMA_Y + py * SIGMA_X
    )
    return numerator / norm


def lorentz_boost_matrix(rapidity: float, direction: Sequence[float]) -> np.ndarray:
    """4x4 pure boost with the given rapidity along a unit direction (t, x, y, z)."""
    u = np.asarray(direction, dtype=float)
    ch, sh = math.cosh(rapidity), math.sinh(rapidity)
    boost = np.eye(4)
    boost[0, 0] = ch
    boost[0, 1:] = sh * u
    boost[1:, 0] = sh * u
    boost[1:, 1:] += (ch - 1.0) * np.outer(u, u)
    return boost


def _standard_boost(four_momentum: np.ndarray, m: float) -> np.ndarray:
    """L(p): the pure boost taking (m, 0, 0, 0) to p."""
    p_vec = four_momentum[1:]
    p_abs = float(np.linalg.norm(p_vec))
    if p_abs == 0:
        return np.eye(4)
    return lorentz_boost_matrix(math.asinh(p_abs / m), p_vec / p_abs)


def wigner_from_boost_product(
    boost: BoostParams, kin: ParticleKinematics, beta: float
) -> np.ndarray:
    """
    Spatial 3x3 block of W = L⁻¹(Λp) Λ L(p), built from 4x4 Lorentz matrices.

    Independent of the closed forms above; serves as their cross-check.
    """
    lam = lorentz_boost_matrix(boost.alpha, boost.axis)
    p = kin.four_momentum(beta)
    lam_p = lam @ p
    l_p = _standard_boost(p, kin.mass)
    l_lam_p_inv = np.linalg.inv(_standard_boost(lam_p, kin.mass))
    w = l_lam_p_inv @ lam @ l_p
    return w[1:, 1:]


def so3_from_su2(d: np.ndarray) -> np.ndarray:
    """Adjoint map R_ij = Tr(σ_i D σ_j D†) / 2."""
    d = np.asarray(d, dtype=complex)
    d_dag = d.conj().T
    return np.array(
        [
            [0.5 * np.trace(s_i @ d @ s_j @ d_dag).real for s_j in PAULI]
            for s_i in PAULI
        ]
    )


def su2_parameters_from_so3(rotation: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Recover (cos(θ/2), sin(θ/2) k̂) of a rotation matrix with θ in [0, π).
    """
    r = np.asarray(rotation, dtype=float)
    cos_half = 0.5 * math.sqrt(max(1.0 + np.trace(r), 0.0))
    vector = np.array(
        [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]
    ) / (4.0 * cos_half)
    return cos_half, vector
