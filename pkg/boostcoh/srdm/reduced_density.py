import math
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..basics import (
    BoostParams,
    GaussianPacket,
    InvalidKinematicsError,
    PacketDimension,
    QuadratureError,
    QubitDensity,
)
from ..wigner import wigner_1d
from .integrands import SrdmIntegrandTerms1D, SrdmIntegrandTerms3D
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    QuadratureScheme,
    adaptive_simpson,
    gauss_hermite_nodes,
    gauss_laguerre_nodes,
    refine_by_doubling,
)


@dataclass(frozen=True)
class SrdmResult:
    """
    Boosted spin-reduced density matrix with its accuracy bookkeeping.

    Attributes:
        density (QubitDensity): The SRDM seen by the boosted observer.
        deficit (float):
            1 - |n⃗|, the Frobenius-coherence deficit, computed without
            subtracting from a number close to one.
        error (float): Quadrature error estimate (0 for closed forms).
        evaluations (int): Number of integrand evaluations.
    """

    density: QubitDensity
    deficit: float
    error: float = 0.0
    evaluations: int = 0


def _deficit_from_gap(gap: float, length: float) -> float:
    """1 - |n⃗| from the purity gap 1 - |n⃗|² and |n⃗|."""
    return max(gap, 0.0) / (1.0 + length)


def _check_z_boost(boost: BoostParams):
    if not boost.is_along_z():
        raise InvalidKinematicsError("SRDM builders expect a boost along ẑ")


def _expectation_1d(
    terms: SrdmIntegrandTerms1D,
    packet: GaussianPacket,
    quad: QuadratureConfig,
    logger: Optional[logging.Logger] = None,
) -> QuadratureResult:
    """
    Expectation of the stacked 1D terms under |f(p)|², via u = (p - center)/σ.

    Gauss-Hermite falls back to adaptive Simpson when it does not converge.
    This happens for wide packets (σ ≳ 3m), whose integrands have branch
    points at p = ±im close to the real u axis.
    """
    if logger is None:
        logger = logging.getLogger()
    center, sigma = packet.center, packet.sigma

    if quad.scheme is QuadratureScheme.GAUSS_HERMITE:

        def evaluate(order):
            x, w = gauss_hermite_nodes(order)
            return w @ terms.stacked(center + sigma * x), order

        try:
            return refine_by_doubling(evaluate, quad.order, quad, logger)
        except QuadratureError as e:
            logger.debug(f"{e}; retrying with adaptive Simpson")

    def integrand(u):
        weight = np.exp(-u * u) / math.sqrt(math.pi)
        return weight[:, None] * terms.stacked(center + sigma * u)

    return adaptive_simpson(
        integrand, -quad.window, quad.window, quad.rel_tol, quad.max_depth
    )


def integrate_srdm_1d(
    packet: GaussianPacket,
    boost: BoostParams,
    m: float,
    quad: Optional[QuadratureConfig] = None,
    logger: Optional[logging.Logger] = None,
) -> SrdmResult:
    """
    Boosted SRDM of the spin state (|0⟩ + |1⟩)/√2 carried by a 1D Gaussian
    packet along x̂, seen by an observer boosted along ẑ.

        ρ11 = ½ ∫ |f(p)|² A_p² dp,  ρ22 = ½ ∫ |f(p)|² B_p² dp,
        ρ12 = ρ21 = ½ ∫ |f(p)|² A_p B_p dp

    A sharp packet (sigma = 0) is the pure rotation of ½(1 + σ₁) by the
    Wigner rotation at p = center.

    Args:
        packet (GaussianPacket): 1D packet.
        boost (BoostParams): Observer boost along ẑ.
        m (float): Particle mass in MeV.
        quad (QuadratureConfig, optional): Defaults to QuadratureConfig().

    Returns:
        SrdmResult: Density, coherence deficit and error estimate.

    Raises:
        QuadratureError: If the quadrature does not converge.
    """
    if packet.dimension is not PacketDimension.ONE_D:
        raise InvalidKinematicsError("integrate_srdm_1d expects a 1D packet")
    _check_z_boost(boost)
    if quad is None:
        quad = QuadratureConfig()
    terms = SrdmIntegrandTerms1D(boost.alpha, m)

    if packet.is_sharp:
        rotation = wigner_1d(boost, packet.center, m)
        c, s = rotation.cos_half, rotation.sin_half
        density = QubitDensity(
            0.5 * (c + s) ** 2, 0.5 * (c + s) * (c - s), 0.5 * (c - s) ** 2
        )
        return SrdmResult(density, 0.0)

    result = _expectation_1d(terms, packet, quad, logger)
    e_a_sq, e_b_sq, e_one_minus_ab, e_sin_phi = result.value
    density = QubitDensity(0.5 * e_a_sq, 0.5 * (1.0 - e_one_minus_ab), 0.5 * e_b_sq)

    # n1 = 1 - ⟨1 - AB⟩ and n3 = ⟨sin φ⟩, so 1 - |n|² = 2δ - δ² - n3²
    gap = 2.0 * e_one_minus_ab - e_one_minus_ab**2 - e_sin_phi**2
    length = math.hypot(1.0 - e_one_minus_ab, e_sin_phi)
    return SrdmResult(
        density, _deficit_from_gap(gap, length), result.error, result.evaluations
    )


def srdm_boosted_1d(
    packet: GaussianPacket,
    boost: BoostParams,
    m: float,
    quad: Optional[QuadratureConfig] = None,
) -> QubitDensity:
    return integrate_srdm_1d(packet, boost, m, quad).density


def analytic_deficit_1d(alpha: float, sigma: float, m: float) -> float:
    """1 - 2ρ12 in the σ/m ≪ 1 limit: ¼ (cosh α - 1)/(cosh α + 1) (σ/m)²."""
    # (cosh α - 1)/(cosh α + 1) = tanh²(α/2)
    return 0.25 * math.tanh(0.5 * alpha) ** 2 * (sigma / m) ** 2


def srdm_analytic_1d(alpha: float, sigma: float, m: float) -> QubitDensity:
    """
    Narrow-packet SRDM of the zero-centered 1D case:
    ρ11 = ρ22 = ½ and ρ12 = ρ21 = ½ - ⅛ (cosh α - 1)/(cosh α + 1) (σ/m)².

    Only meaningful for σ/m ≪ 1; nothing is enforced.
    """
    return QubitDensity(0.5, 0.5 - 0.5 * analytic_deficit_1d(alpha, sigma, m), 0.5)


def _expectation_3d(
    terms: SrdmIntegrandTerms3D,
    sigma: float,
    quad: QuadratureConfig,
    logger: Optional[logging.Logger] = None,
) -> QuadratureResult:
    """
    Expectation of (M/(AB), N/(AB)) under (π^{3/2} σ³)⁻¹ e^{-p²/σ²}.

    With u = p_z/σ and t = p_⊥²/σ² the measure becomes
    e^{-u²}/√π du · e^{-t} dt, a Gauss-Hermite x Gauss-Laguerre product.
    """
    if quad.scheme is QuadratureScheme.GAUSS_HERMITE:

        def evaluate(order):
            x, w_x = gauss_hermite_nodes(order)
            t, w_t = gauss_laguerre_nodes(order)
            values = terms.stacked(sigma * x[:, None], sigma**2 * t[None, :])
            return np.einsum("i,j,ijk->k", w_x, w_t, values), order * order

        return refine_by_doubling(evaluate, quad.order_3d, quad, logger)

    # Nested Simpson over u in [-W, W] and r = p_⊥/σ in [0, W]
    tol = 0.5 * quad.rel_tol
    inner_errors = [0.0]
    inner_evaluations = [0]

    def inner(u):
        def integrand(r):
            weight = 2.0 * r * np.exp(-r * r)
            values = terms.stacked(np.full_like(r, sigma * u), (sigma * r) ** 2)
            return weight[:, None] * values

        result = adaptive_simpson(integrand, 0.0, quad.window, tol, quad.max_depth)
        inner_errors[0] = max(inner_errors[0], result.error)
        inner_evaluations[0] += result.evaluations
        return result.value

    def outer(u):
        weight = np.exp(-u * u) / math.sqrt(math.pi)
        return weight[:, None] * np.array([inner(u_i) for u_i in u])

    result = adaptive_simpson(outer, -quad.window, quad.window, tol, quad.max_depth)
    return QuadratureResult(
        result.value, result.error + inner_errors[0], inner_evaluations[0]
    )


def integrate_srdm_3d(
    sigma: float,
    boost: BoostParams,
    m: float,
    quad: Optional[QuadratureConfig] = None,
    logger: Optional[logging.Logger] = None,
) -> SrdmResult:
    """
    Boosted SRDM of spin |0⟩ carried by an isotropic, zero-centered 3D
    Gaussian packet, for an observer boosted along ẑ.

    The SRDM is diag(⟨M/(AB)⟩, ⟨N/(AB)⟩); both entries are integrated
    separately so that the trace is an independent check.
    """
    _check_z_boost(boost)
    packet = GaussianPacket(PacketDimension.THREE_D, sigma)
    if quad is None:
        quad = QuadratureConfig()
    terms = SrdmIntegrandTerms3D(boost.alpha, m)

    if packet.is_sharp:
        return SrdmResult(QubitDensity(1.0, 0.0, 0.0), 0.0)

    result = _expectation_3d(terms, packet.sigma, quad, logger)
    rho11, rho22 = result.value
    density = QubitDensity(rho11, 0.0, rho22)
    # Off-diagonals vanish, so 1 - |n|² = 4 det ρ = 4 ρ11 ρ22
    n_z = rho11 - rho22
    return SrdmResult(
        density,
        _deficit_from_gap(4.0 * rho11 * rho22, abs(n_z)),
        result.error,
        result.evaluations,
    )


def srdm_boosted_3d(
    sigma: float,
    boost: BoostParams,
    m: float,
    quad: Optional[QuadratureConfig] = None,
) -> QubitDensity:
    return integrate_srdm_3d(sigma, boost, m, quad).density


def coherence_deficit_narrow(alpha: float, sigma: float, m: float) -> float:
    """
    Closed-form narrow-packet deficit 1 - 𝒞 = (σ/(2m) tanh(α/2))².

    Returned directly: for neutron widths it is far below the spacing of
    floats around 1.0.
    """
    return (sigma / (2.0 * m) * math.tanh(0.5 * alpha)) ** 2


def srdm_narrow_3d(alpha: float, sigma: float, m: float) -> QubitDensity:
    """diag((1 + n_z)/2, (1 - n_z)/2) with n_z = 1 - (σ/(2m) tanh(α/2))²."""
    deficit = coherence_deficit_narrow(alpha, sigma, m)
    return QubitDensity(1.0 - 0.5 * deficit, 0.0, 0.5 * deficit)
