import math
from enum import Enum
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np


# Natural units (c = hbar = 1); masses, momenta and widths are in MeV.
ELECTRON_MASS_MEV = 0.5
NEUTRON_MASS_MEV = 939.36
# Momentum of an electron moving at half the speed of light
HALF_LIGHT_SPEED_CENTER_MEV = 1.0 / (2.0 * math.sqrt(3.0))
# Kinetic-energy bounds quoted for neutrons, read numerically as widths in MeV
UCN_SIGMA_MEV = 3.0e-13
THERMAL_NEUTRON_SIGMA_MEV = 2.5e-8

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

X_HAT = (1.0, 0.0, 0.0)
Y_HAT = (0.0, 1.0, 0.0)
Z_HAT = (0.0, 0.0, 1.0)

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
HERMITIAN_TOL = 1e-12
BLOCH_TOL = 1e-10
UNIT_AXIS_TOL = 1e-12


class InvalidStateError(ValueError):
    """A density matrix, Bloch vector or eigenvalue list violates its invariants."""


class InvalidKinematicsError(ValueError):
    """Masses, rapidities or directions outside the supported domain."""


class InvalidConfigError(ValueError):
    """A sweep configuration (file or command line) cannot be used."""


class QuadratureError(RuntimeError):
    """
    Raised when a quadrature does not reach its tolerance.

    Attributes:
        estimate (float): The last error estimate.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


class CellQuadratureError(QuadratureError):
    """A quadrature failure pinned to one (alpha, sigma) cell of a sweep."""

    def __init__(self, alpha: float, sigma: float, estimate: float):
        super().__init__(
            f"Quadrature failed at alpha={alpha!r}, sigma={sigma!r} MeV "
            f"(error estimate {estimate:.3e})",
            estimate,
        )
        self.alpha = alpha
        self.sigma = sigma


def _as_unit_vector(vector: Sequence[float], name: str) -> Tuple[float, float, float]:
    values = tuple(float(v) for v in vector)
    if len(values) != 3:
        raise InvalidKinematicsError(f"{name} must have 3 components, got {values}")
    norm = math.sqrt(sum(v * v for v in values))
    if abs(norm - 1.0) > UNIT_AXIS_TOL:
        raise InvalidKinematicsError(f"{name} must be a unit vector, |{name}|={norm}")
    return values


@dataclass(frozen=True)
class BoostParams:
    """
    Pure boost of the observer O^Λ, given by its rapidity and direction.

    Attributes:
        alpha (float): Rapidity, alpha >= 0. The velocity is tanh(alpha).
        axis (tuple): Unit 3-vector of the boost direction.
    """

    alpha: float
    axis: Tuple[float, float, float] = Z_HAT

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise InvalidKinematicsError(
                f"Rapidity must be finite and >= 0, got {self.alpha}. "
                "Use BoostParams.from_signed_rapidity for negative boosts."
            )
        object.__setattr__(self, "axis", _as_unit_vector(self.axis, "axis"))

    @classmethod
    def from_signed_rapidity(cls, alpha: float, axis=Z_HAT) -> "BoostParams":
        if alpha < 0:
            return cls(-alpha, tuple(-float(v) for v in axis))
        return cls(alpha, axis)

    @classmethod
    def from_velocity(cls, velocity: float, axis=Z_HAT) -> "BoostParams":
        """Convert a signed velocity (units of c) along axis into a boost."""
        if not -1.0 < velocity < 1.0:
            raise InvalidKinematicsError(f"|v| must be < 1, got {velocity}")
        return cls.from_signed_rapidity(math.atanh(velocity), axis)

    @property
    def a(self) -> float:
        return math.sinh(self.alpha)

    @property
    def b(self) -> float:
        return math.cosh(self.alpha)

    @property
    def velocity(self) -> float:
        return math.tanh(self.alpha)

    @property
    def axis_vector(self) -> np.ndarray:
        return np.array(self.axis)

    def is_along_z(self) -> bool:
        return np.allclose(self.axis, Z_HAT, rtol=0, atol=UNIT_AXIS_TOL)


@dataclass(frozen=True)
class ParticleKinematics:
    """
    Massive particle with momentum along a fixed direction f̂:
    p^μ = (m cosh β, m sinh β f̂).
    """

    mass: float
    direction: Tuple[float, float, float] = X_HAT

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidKinematicsError(f"Mass must be > 0 MeV, got {self.mass}")
        object.__setattr__(
            self, "direction", _as_unit_vector(self.direction, "direction")
        )

    def rapidity(self, momentum: float) -> float:
        return math.asinh(momentum / self.mass)

    def momentum(self, beta: float) -> float:
        return self.mass * math.sinh(beta)

    def energy(self, beta: float) -> float:
        return self.mass * math.cosh(beta)

    def four_momentum(self, beta: float) -> np.ndarray:
        return np.concatenate(
            ([self.energy(beta)], self.momentum(beta) * np.array(self.direction))
        )


class PacketDimension(Enum):
    ONE_D = "1d"
    THREE_D = "3d"


@dataclass(frozen=True)
class GaussianPacket:
    """
    Gaussian momentum profile.

    In 1D the packet lies along x̂ with
    f(p) = (√π σ)^(-1/2) exp(-(p - center)² / 2σ²); in 3D it is the isotropic
    zero-centered ψ(p) = (√π σ)^(-3/2) exp(-p² / 2σ²). sigma = 0 stands for a
    sharp momentum.
    """

    dimension: PacketDimension
    sigma: float
    center: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise InvalidKinematicsError(f"sigma must be >= 0, got {self.sigma}")
        if self.dimension is PacketDimension.THREE_D and self.center != 0:
            raise InvalidKinematicsError("3D packets are zero-centered")

    @property
    def is_sharp(self) -> bool:
        return self.sigma == 0

    def amplitude(self, p) -> np.ndarray:
        """Evaluate f(p) (1D, p scalar or array) or ψ(p) (3D, p with last axis 3)."""
        if self.is_sharp:
            raise InvalidKinematicsError("A sharp packet has no finite amplitude")
        p = np.asarray(p, dtype=float)
        if self.dimension is PacketDimension.ONE_D:
            u = (p - self.center) / self.sigma
            return (math.sqrt(math.pi) * self.sigma) ** -0.5 * np.exp(-0.5 * u**2)
        u_sq = np.sum(p**2, axis=-1) / self.sigma**2
        return (math.sqrt(math.pi) * self.sigma) ** -1.5 * np.exp(-0.5 * u_sq)

    def probability_density(self, p) -> np.ndarray:
        return self.amplitude(p) ** 2


@dataclass(frozen=True)
class QubitDensity:
    """
    2x2 spin density matrix.

    Only ρ11, ρ12 and ρ22 are stored; ρ21 is conj(ρ12), so the matrix is
    Hermitian by construction. Construction checks unit trace and positivity.
    """

    rho11: float
    rho12: complex
    rho22: float

    def __post_init__(self):
        object.__setattr__(self, "rho11", float(self.rho11))
        object.__setattr__(self, "rho12", complex(self.rho12))
        object.__setattr__(self, "rho22", float(self.rho22))
        trace = self.rho11 + self.rho22
        if not abs(trace - 1.0) <= TRACE_TOL:
            raise InvalidStateError(f"Density matrix trace is {trace!r}, not 1")
        if self.min_eigenvalue < -PSD_TOL:
            raise InvalidStateError(
                f"Density matrix is not positive semidefinite "
                f"(min eigenvalue {self.min_eigenvalue:.3e})"
            )

    @classmethod
    def from_matrix(cls, matrix) -> "QubitDensity":
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidStateError(f"Expected a 2x2 matrix, got shape {m.shape}")
        if (
            abs(m[1, 0] - np.conj(m[0, 1])) > HERMITIAN_TOL
            or abs(m[0, 0].imag) > HERMITIAN_TOL
            or abs(m[1, 1].imag) > HERMITIAN_TOL
        ):
            raise InvalidStateError("Density matrix is not Hermitian")
        return cls(m[0, 0].real, m[0, 1], m[1, 1].real)

    @property
    def rho21(self) -> complex:
        return self.rho12.conjugate()

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho11, self.rho12], [self.rho21, self.rho22]])

    @property
    def min_eigenvalue(self) -> float:
        half_gap = math.hypot(0.5 * (self.rho11 - self.rho22), abs(self.rho12))
        return 0.5 * (self.rho11 + self.rho22) - half_gap

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def purity(self) -> float:
        return self.rho11**2 + self.rho22**2 + 2 * abs(self.rho12) ** 2


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector n⃗ of ρ = (1 + n⃗·Σ)/2, with |n⃗| <= 1."""

    n1: float
    n2: float
    n3: float

    def __post_init__(self):
        if self.length > 1.0 + BLOCH_TOL:
            raise InvalidStateError(f"Bloch vector length {self.length} exceeds 1")

    @property
    def length(self) -> float:
        return math.sqrt(self.n1**2 + self.n2**2 + self.n3**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.n1, self.n2, self.n3])


def bloch_from_density(rho: Union[QubitDensity, np.ndarray]) -> BlochVector:
    """
    Decompose ρ = (1 + n⃗·Σ)/2 with the standard Pauli matrices.

    Args:
        rho (QubitDensity or array-like):
            The state. Arrays are validated (Hermitian, unit trace) first.

    Returns:
        BlochVector: n1 = 2 Re ρ12, n2 = -2 Im ρ12, n3 = ρ11 - ρ22.
    """
    if not isinstance(rho, QubitDensity):
        rho = QubitDensity.from_matrix(rho)
    return BlochVector(
        2.0 * rho.rho12.real, -2.0 * rho.rho12.imag, rho.rho11 - rho.rho22
    )


def density_from_bloch(n: Union[BlochVector, Sequence[float]]) -> QubitDensity:
    """
    Build ρ = (1 + n⃗·Σ)/2.

    Raises:
        InvalidStateError: If |n⃗| > 1 + 1e-10.
    """
    if not isinstance(n, BlochVector):
        n = BlochVector(*(float(v) for v in n))
    return QubitDensity(
        0.5 * (1.0 + n.n3), complex(0.5 * n.n1, -0.5 * n.n2), 0.5 * (1.0 - n.n3)
    )
