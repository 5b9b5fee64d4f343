import math
from dataclasses import dataclass

import numpy as np

from ..basics import InvalidKinematicsError


@dataclass(frozen=True)
class SrdmIntegrandTerms1D:
    """
    Momentum-dependent factors of the boosted SRDM for a packet along x̂ and
    a boost along ẑ, with a = sinh α, b = cosh α and γ = sqrt(1 + p²/m²):

        A_p² = 1 + a (p/m) / (1 + b γ)
        B_p² = 1 - a (p/m) / (1 + b γ)
        A_p B_p = (b + γ) / (1 + b γ)

    All methods accept scalars or numpy arrays of momenta in MeV.
    """

    alpha: float
    mass: float

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidKinematicsError(f"Mass must be > 0 MeV, got {self.mass}")

    @property
    def a(self) -> float:
        return math.sinh(self.alpha)

    @property
    def b(self) -> float:
        return math.cosh(self.alpha)

    def _gamma(self, p):
        x = np.asarray(p, dtype=float) / self.mass
        return x, np.sqrt(1.0 + x * x)

    def sin_phi(self, p) -> np.ndarray:
        """sin φ_p = A_p² - 1, the odd part of the diagonal."""
        x, gamma = self._gamma(p)
        return self.a * x / (1.0 + self.b * gamma)

    def a_sq(self, p) -> np.ndarray:
        return 1.0 + self.sin_phi(p)

    def b_sq(self, p) -> np.ndarray:
        return 1.0 - self.sin_phi(p)

    def ab(self, p) -> np.ndarray:
        _, gamma = self._gamma(p)
        return (self.b + gamma) / (1.0 + self.b * gamma)

    def one_minus_ab(self, p) -> np.ndarray:
        """
        1 - A_p B_p = (b - 1)(γ - 1) / (1 + b γ), evaluated without cancellation
        through b - 1 = 2 sinh²(α/2) and γ - 1 = x² / (γ + 1).
        """
        x, gamma = self._gamma(p)
        b_minus_one = 2.0 * math.sinh(0.5 * self.alpha) ** 2
        gamma_minus_one = x * x / (gamma + 1.0)
        return b_minus_one * gamma_minus_one / (1.0 + self.b * gamma)

    def stacked(self, p) -> np.ndarray:
        """Columns (A_p², B_p², 1 - A_p B_p, sin φ_p), shape (n, 4)."""
        p = np.atleast_1d(np.asarray(p, dtype=float))
        sin_phi = self.sin_phi(p)
        return np.stack(
            [1.0 + sin_phi, 1.0 - sin_phi, self.one_minus_ab(p), sin_phi], axis=-1
        )


@dataclass(frozen=True)
class SrdmIntegrandTerms3D:
    """
    Diagonal SRDM factors for an isotropic packet and a boost along ẑ:

        A = p⁰ + m
        B = p⁰ cosh α + p_z sinh α + m
        M = A² cosh²(α/2) + p_z² sinh²(α/2) + A p_z sinh α
        N = (p_x² + p_y²) sinh²(α/2)

    The factors depend on p_z and p_⊥² = p_x² + p_y² only, with M + N = A B.
    """

    alpha: float
    mass: float

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidKinematicsError(f"Mass must be > 0 MeV, got {self.mass}")

    def _parts(self, p_z, p_perp_sq):
        p_z = np.asarray(p_z, dtype=float)
        p_perp_sq = np.asarray(p_perp_sq, dtype=float)
        m = self.mass
        p0 = np.sqrt(p_z * p_z + p_perp_sq + m * m)
        big_a = p0 + m
        big_b = p0 * math.cosh(self.alpha) + p_z * math.sinh(self.alpha) + m
        return p_z, p_perp_sq, big_a, big_b

    def m_term(self, p_z, p_perp_sq) -> np.ndarray:
        p_z, _, big_a, _ = self._parts(p_z, p_perp_sq)
        half = 0.5 * self.alpha
        return (
            big_a**2 * math.cosh(half) ** 2
            + p_z**2 * math.sinh(half) ** 2
            + big_a * p_z * math.sinh(self.alpha)
        )

    def n_term(self, p_z, p_perp_sq) -> np.ndarray:
        p_perp_sq = np.asarray(p_perp_sq, dtype=float)
        return p_perp_sq * math.sinh(0.5 * self.alpha) ** 2

    def ab_term(self, p_z, p_perp_sq) -> np.ndarray:
        _, _, big_a, big_b = self._parts(p_z, p_perp_sq)
        return big_a * big_b

    def stacked(self, p_z, p_perp_sq) -> np.ndarray:
        """Columns (M/(AB), N/(AB)), shape (..., 2)."""
        ab = self.ab_term(p_z, p_perp_sq)
        return np.stack(
            [self.m_term(p_z, p_perp_sq) / ab, self.n_term(p_z, p_perp_sq) / ab],
            axis=-1,
        )
