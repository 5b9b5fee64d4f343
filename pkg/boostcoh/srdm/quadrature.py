import math
import logging
from enum import Enum
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_hermite, roots_laguerre

from ..basics import InvalidConfigError, QuadratureError


class QuadratureScheme(Enum):
    GAUSS_HERMITE = "gauss-hermite"
    ADAPTIVE_SIMPSON = "adaptive-simpson"


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Settings shared by every SRDM integral.

    Attributes:
        scheme (QuadratureScheme):
            Gauss-Hermite (default) or adaptive Simpson (verification).
        order (int):
            Starting Gauss-Hermite order for 1D packets.
        order_3d (int):
            Starting order per axis for the reduced (p_z, p_⊥) 3D integral.
        max_refinements (int):
            Number of order doublings tried before giving up.
        max_depth (int):
            Maximum bisection depth of adaptive Simpson.
        rel_tol (float):
            Target error on the density-matrix entries, which are bounded by 1.
        window (float):
            Half-width, in units of sigma, of the truncated Simpson domain.
    """

    scheme: QuadratureScheme = QuadratureScheme.GAUSS_HERMITE
    order: int = 64
    order_3d: int = 48
    max_refinements: int = 3
    max_depth: int = 50
    rel_tol: float = 1e-10
    window: float = 10.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise InvalidConfigError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.order < 8 or self.order_3d < 8:
            raise InvalidConfigError(
                f"Quadrature orders must be >= 8, got {self.order}/{self.order_3d}"
            )
        if self.max_refinements < 0 or self.max_depth < 1:
            raise InvalidConfigError("max_refinements >= 0 and max_depth >= 1 required")
        if not self.window > 0:
            raise InvalidConfigError(f"window must be > 0, got {self.window}")


@dataclass(frozen=True)
class QuadratureResult:
    value: np.ndarray
    error: float
    evaluations: int


@lru_cache(maxsize=None)
def gauss_hermite_nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights for ∫ e^{-x²} g(x) dx, with weights divided by √π so
    that they sum to one. The cached arrays are read-only.
    """
    x, w = roots_hermite(order)
    w = w / math.sqrt(math.pi)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def gauss_laguerre_nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights for ∫_0^∞ e^{-t} g(t) dt (read-only, cached).

    scipy's weights underflow to NaN for orders in the hundreds.

    Raises:
        QuadratureError: If the rule of this order is not finite.
    """
    t, w = roots_laguerre(order)
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
        raise QuadratureError(
            f"Gauss-Laguerre rule of order {order} has non-finite nodes or weights",
            math.inf,
        )
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def refine_by_doubling(
    evaluate: Callable[[int], Tuple[np.ndarray, int]],
    start_order: int,
    config: QuadratureConfig,
    logger: Optional[logging.Logger] = None,
) -> QuadratureResult:
    """
    Run a fixed-order rule at start_order, 2*start_order, ... until two
    consecutive estimates agree within config.rel_tol.

    Args:
        evaluate (callable):
            Maps an order to (component estimates, number of evaluations).
        start_order (int): First order to try.
        config (QuadratureConfig): Tolerance and number of doublings.

    Returns:
        QuadratureResult: The higher-order estimate of the last pair.

    Raises:
        QuadratureError: If no pair agrees within tolerance. The estimate is
            the last one computed; refinement stops early when a rule of the
            next order is not available.
    """
    if logger is None:
        logger = logging.getLogger()
    order = start_order
    previous, evaluations = evaluate(order)
    error = math.inf
    for _ in range(max(config.max_refinements, 1)):
        try:
            current, n_eval = evaluate(2 * order)
        except QuadratureError as e:
            logger.debug(f"Stopping refinement at order {order}: {e}")
            break
        order *= 2
        evaluations += n_eval
        error = float(np.max(np.abs(current - previous)))
        if error <= config.rel_tol:
            return QuadratureResult(current, error, evaluations)
        logger.debug(f"Gauss rule order {order}: error estimate {error:.3e}")
        previous = current
    raise QuadratureError(
        f"Gauss rule did not converge up to order {order} "
        f"(error estimate {error:.3e} > {config.rel_tol:.1e})",
        error,
    )


def _call(func, x: np.ndarray) -> np.ndarray:
    values = np.asarray(func(x), dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return values


def adaptive_simpson(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 50,
    min_depth: int = 4,
    max_intervals: int = 1 << 16,
) -> QuadratureResult:
    """
    Adaptive Simpson's rule for vector-valued integrands.

    Intervals are bisected level by level so that each level costs a single
    vectorized call to func. Every interval carries its share of the
    tolerance, halved at each split, and is accepted once the Richardson
    estimate |S_left + S_right - S_whole| / 15 falls below it.

    Args:
        func (callable):
            Maps an array of abscissae of shape (n,) to values of shape (n,)
            or (n, k).
        a (float): Lower bound.
        b (float): Upper bound.
        tol (float): Absolute error tolerance on every component.
        max_depth (int): Maximum number of bisections.
        min_depth (int): Bisections performed before any interval is accepted.
        max_intervals (int): Maximum number of intervals pending at one level.

    Returns:
        QuadratureResult: Integral of shape (k,), summed error estimate and
        number of function evaluations.

    Raises:
        QuadratureError: If the summed error estimate exceeds tol, or if more
            than max_intervals intervals are still pending.
    """
    if a == b:
        width = _call(func, np.array([a])).shape[1]
        return QuadratureResult(np.zeros(width), 0.0, 1)

    lo = np.array([float(a)])
    hi = np.array([float(b)])
    f_lo, f_mid, f_hi = np.split(_call(func, np.array([a, 0.5 * (a + b), b])), 3)
    whole = (hi - lo)[:, None] / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
    tols = np.array([tol])
    evaluations = 3

    total = np.zeros(whole.shape[1])
    error = 0.0
    for depth in range(max_depth):
        mid = 0.5 * (lo + hi)
        f_new = _call(func, np.concatenate([0.5 * (lo + mid), 0.5 * (mid + hi)]))
        evaluations += len(f_new)
        f_left_mid, f_right_mid = np.split(f_new, 2)

        h = (hi - lo)[:, None]
        s_left = h / 12.0 * (f_lo + 4.0 * f_left_mid + f_mid)
        s_right = h / 12.0 * (f_mid + 4.0 * f_right_mid + f_hi)
        diff = s_left + s_right - whole
        err = np.max(np.abs(diff), axis=1) / 15.0

        done = err <= tols if depth + 1 >= min_depth else np.zeros(len(err), bool)
        if np.any(done):
            total += np.sum((s_left + s_right + diff / 15.0)[done], axis=0)
            error += float(np.sum(err[done]))
        keep = ~done
        if not np.any(keep):
            return QuadratureResult(total, error, evaluations)

        pending_error = float(np.sum(err[keep]))
        if 2 * np.count_nonzero(keep) > max_intervals:
            raise QuadratureError(
                f"Adaptive Simpson needs more than {max_intervals} intervals at "
                f"depth {depth + 1} (error estimate {error + pending_error:.3e})",
                error + pending_error,
            )
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        f_lo, f_mid, f_hi = f_lo[keep], f_mid[keep], f_hi[keep]
        f_left_mid, f_right_mid = f_left_mid[keep], f_right_mid[keep]
        s_left, s_right, tols = s_left[keep], s_right[keep], tols[keep]

        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        f_lo, f_hi = np.concatenate([f_lo, f_mid]), np.concatenate([f_mid, f_hi])
        f_mid = np.concatenate([f_left_mid, f_right_mid])
        whole = np.concatenate([s_left, s_right])
        tols = np.concatenate([tols, tols]) / 2.0

    # Depth exhausted: keep the best estimate and report its error
    total += np.sum(whole, axis=0)
    error += pending_error
    if error > tol:
        raise QuadratureError(
            f"Adaptive Simpson reached depth {max_depth} with error estimate "
            f"{error:.3e} > {tol:.1e}",
            error,
        )
    return QuadratureResult(total, error, evaluations)
