import math
import logging
import concurrent.futures
from enum import Enum
from functools import partial
from dataclasses import dataclass, field, fields
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from .basics import (
    ELECTRON_MASS_MEV,
    HALF_LIGHT_SPEED_CENTER_MEV,
    NEUTRON_MASS_MEV,
    BoostParams,
    CellQuadratureError,
    GaussianPacket,
    InvalidConfigError,
    PacketDimension,
    QuadratureError,
)
from .coherence import MEASURES, all_measures
from .srdm import QuadratureConfig, integrate_srdm_1d, integrate_srdm_3d


ALL_MEASURES = MEASURES + ("rho12", "deficit")

# Grid column holding each selectable measure
MEASURE_COLUMNS = {
    "l1": "c_l1",
    "rel_entropy": "c_rel_ent_nats",
    "skew": "skew_info",
    "frobenius": "c_frobenius",
    "rho12": "rho12",
    "deficit": "deficit",
}

OUTPUT_FORMATS = ("csv", "json")

DEFAULT_ALPHA = "0:5:50"
DEFAULT_STEPS = 50
NEUTRON_SIGMA_MAX_MEV = 100.0


class Scenario(Enum):
    CASE1_ZERO = "case1-zero"
    CASE1_P = "case1-p"
    CASE3_NEUTRON = "case3-neutron"

    @property
    def dimension(self) -> PacketDimension:
        if self is Scenario.CASE3_NEUTRON:
            return PacketDimension.THREE_D
        return PacketDimension.ONE_D

    @property
    def default_mass(self) -> float:
        if self is Scenario.CASE3_NEUTRON:
            return NEUTRON_MASS_MEV
        return ELECTRON_MASS_MEV

    @property
    def default_center(self) -> float:
        if self is Scenario.CASE1_P:
            return HALF_LIGHT_SPEED_CENTER_MEV
        return 0.0

    def default_sigma_max(self, mass: float) -> float:
        if self is Scenario.CASE3_NEUTRON:
            return NEUTRON_SIGMA_MAX_MEV
        return mass

    @classmethod
    def parse(cls, value: Union[str, "Scenario"]) -> "Scenario":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise InvalidConfigError(f"Unknown scenario {value!r}, use one of {names}")


@dataclass(frozen=True)
class AxisRange:
    """
    Evenly spaced axis min, ..., max with the given number of steps.

    A single step is only allowed for a degenerate range (min == max).
    """

    min: float
    max: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise InvalidConfigError(f"Axis bounds must be finite, got {self}")
        if self.steps < 1:
            raise InvalidConfigError(f"Axis needs at least one step, got {self.steps}")
        if self.steps == 1 and self.min != self.max:
            raise InvalidConfigError(
                f"A single-step axis needs min == max, got {self.min}:{self.max}"
            )
        if self.steps >= 2 and not self.min < self.max:
            raise InvalidConfigError(
                f"Axis needs min < max for {self.steps} steps, "
                f"got {self.min}:{self.max}"
            )

    @classmethod
    def parse(cls, value: Union[str, Sequence]) -> "AxisRange":
        """Accept "min:max:steps" or a 3-element sequence."""
        if isinstance(value, AxisRange):
            return value
        parts = value.split(":") if isinstance(value, str) else list(value)
        if len(parts) != 3:
            raise InvalidConfigError(f"Expected min:max:steps, got {value!r}")
        try:
            low, high = float(parts[0]), float(parts[1])
            steps = int(parts[2])
        except (TypeError, ValueError):
            raise InvalidConfigError(f"Cannot parse axis range {value!r}")
        if isinstance(parts[2], float) and not parts[2].is_integer():
            raise InvalidConfigError(f"Steps must be an integer, got {parts[2]!r}")
        return cls(low, high, steps)

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([float(self.min)])
        return np.linspace(self.min, self.max, self.steps)

    def __str__(self) -> str:
        return f"{self.min!r}:{self.max!r}:{self.steps}"


def parse_measures(value: Union[None, str, Sequence[str]]) -> Tuple[str, ...]:
    if value is None:
        return ALL_MEASURES
    names = value.split(",") if isinstance(value, str) else list(value)
    names = [str(name).strip() for name in names if str(name).strip()]
    unknown = [name for name in names if name not in ALL_MEASURES]
    if unknown:
        raise InvalidConfigError(
            f"Unknown measures {unknown}, choose from {', '.join(ALL_MEASURES)}"
        )
    if not names:
        raise InvalidConfigError("At least one measure must be requested")
    # Canonical order keeps outputs independent of how the list was written
    return tuple(name for name in ALL_MEASURES if name in names)


def resolve_field(name: str) -> str:
    """Map a heatmap field given as a column or a measure name to its column."""
    if name in MEASURE_COLUMNS:
        return MEASURE_COLUMNS[name]
    if name in COLUMNS[2:]:
        return name
    raise InvalidConfigError(
        f"Unknown field {name!r}, choose from {', '.join(COLUMNS[2:])}"
    )


@dataclass(frozen=True)
class SweepConfig:
    """
    Everything needed to evaluate one (alpha, sigma) grid.

    Attributes:
        scenario (Scenario): Which packet/spin setup to evaluate.
        mass (float): Particle mass in MeV.
        center (float): Packet center in MeV (1D scenarios only).
        alpha (AxisRange): Rapidity axis.
        sigma (AxisRange): Packet-width axis in MeV.
        quad (QuadratureConfig): Quadrature settings.
        measures (tuple of str): Requested subset of ALL_MEASURES.
        format (str): "csv" or "json".
        out (str, optional): Output path; None writes to stdout.
        heatmap (str, optional): Field rendered as a PGM next to out.
        workers (int): Number of threads evaluating cells.
    """

    scenario: Scenario
    mass: float
    center: float
    alpha: AxisRange
    sigma: AxisRange
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    measures: Tuple[str, ...] = ALL_MEASURES
    format: str = "csv"
    out: Optional[str] = None
    heatmap: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not isinstance(self.scenario, Scenario):
            raise InvalidConfigError(f"Invalid scenario {self.scenario!r}")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise InvalidConfigError(f"Mass must be > 0 MeV, got {self.mass}")
        if not math.isfinite(self.center):
            raise InvalidConfigError(f"Center must be finite, got {self.center}")
        if self.scenario is Scenario.CASE3_NEUTRON and self.center != 0:
            raise InvalidConfigError("The 3D neutron packet is zero-centered")
        if self.sigma.min < 0:
            raise InvalidConfigError(f"sigma must be >= 0, got min {self.sigma.min}")
        if self.alpha.min < 0:
            raise InvalidConfigError(f"alpha must be >= 0, got min {self.alpha.min}")
        parse_measures(self.measures)
        if self.format not in OUTPUT_FORMATS:
            raise InvalidConfigError(
                f"Format must be one of {OUTPUT_FORMATS}, got {self.format!r}"
            )
        if self.heatmap is not None:
            column = resolve_field(self.heatmap)
            if column not in self.columns:
                raise InvalidConfigError(
                    f"Heatmap field {self.heatmap!r} is not among the requested "
                    f"measures {list(self.measures)}"
                )
        if self.workers < 1:
            raise InvalidConfigError(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_options(
        cls,
        scenario: Union[str, Scenario],
        mass: Optional[float] = None,
        center: Optional[float] = None,
        alpha: Union[None, str, Sequence] = None,
        sigma: Union[None, str, Sequence] = None,
        measures: Union[None, str, Sequence[str]] = None,
        quad: Optional[QuadratureConfig] = None,
        **kwargs,
    ) -> "SweepConfig":
        """Fill every option left as None with the scenario default."""
        scenario = Scenario.parse(scenario)
        mass = scenario.default_mass if mass is None else float(mass)
        center = scenario.default_center if center is None else float(center)
        if alpha is None:
            alpha = DEFAULT_ALPHA
        if sigma is None:
            sigma = (0.0, scenario.default_sigma_max(mass), DEFAULT_STEPS)
        return cls(
            scenario=scenario,
            mass=mass,
            center=center,
            alpha=AxisRange.parse(alpha),
            sigma=AxisRange.parse(sigma),
            quad=QuadratureConfig() if quad is None else quad,
            measures=parse_measures(measures),
            **{key: value for key, value in kwargs.items() if value is not None},
        )

    @property
    def columns(self) -> Tuple[str, ...]:
        """Grid columns that carry values for this configuration."""
        requested = {MEASURE_COLUMNS[name] for name in self.measures}
        return tuple(
            c for c in COLUMNS if c in requested or c not in MEASURE_COLUMNS.values()
        )


@dataclass(frozen=True)
class CellRecord:
    """One grid cell; unrequested measures are None."""

    alpha: float
    sigma_mev: float
    rho11: float
    rho12: Optional[float]
    c_l1: Optional[float]
    c_rel_ent_nats: Optional[float]
    skew_info: Optional[float]
    c_frobenius: Optional[float]
    deficit: Optional[float]
    quad_err: float


COLUMNS = tuple(f.name for f in fields(CellRecord))


@dataclass
class SweepGrid:
    """
    Cells of an (alpha, sigma) sweep in alpha-outer order.

    Attributes:
        alphas (np.ndarray): Rapidity axis.
        sigmas (np.ndarray): Width axis in MeV.
        cells (list of CellRecord): len(alphas) * len(sigmas) records.
        scenario, mass, center: Metadata carried into JSON output.
    """

    alphas: np.ndarray
    sigmas: np.ndarray
    cells: List[CellRecord]
    scenario: Optional[str] = None
    mass: Optional[float] = None
    center: Optional[float] = None

    def __post_init__(self):
        self.alphas = np.asarray(self.alphas, dtype=float)
        self.sigmas = np.asarray(self.sigmas, dtype=float)
        if len(self.cells) != len(self.alphas) * len(self.sigmas):
            raise InvalidConfigError(
                f"Incomplete grid: {len(self.cells)} cells for "
                f"{len(self.alphas)} x {len(self.sigmas)} axes"
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.alphas), len(self.sigmas)

    def field(self, name: str) -> np.ndarray:
        """Values of one column as an (n_alpha, n_sigma) array."""
        column = resolve_field(name)
        values = [getattr(cell, column) for cell in self.cells]
        if any(value is None for value in values):
            raise InvalidConfigError(f"Field {column!r} was not computed in this grid")
        return np.array(values, dtype=float).reshape(self.shape)


def evaluate_cell(config: SweepConfig, alpha: float, sigma: float) -> CellRecord:
    """
    SRDM and requested measures at one grid point.

    Raises:
        CellQuadratureError: If the quadrature fails at this point.
    """
    alpha, sigma = float(alpha), float(sigma)
    boost = BoostParams(alpha)
    try:
        if config.scenario.dimension is PacketDimension.ONE_D:
            packet = GaussianPacket(PacketDimension.ONE_D, sigma, config.center)
            result = integrate_srdm_1d(packet, boost, config.mass, config.quad)
        else:
            result = integrate_srdm_3d(sigma, boost, config.mass, config.quad)
    except QuadratureError as e:
        raise CellQuadratureError(alpha, sigma, e.estimate) from e

    rho = result.density
    values = all_measures(rho, [m for m in config.measures if m in MEASURES])
    requested = set(config.measures)
    return CellRecord(
        alpha=alpha,
        sigma_mev=sigma,
        rho11=rho.rho11,
        rho12=rho.rho12.real if "rho12" in requested else None,
        c_l1=values.get("l1"),
        c_rel_ent_nats=values.get("rel_entropy"),
        skew_info=values.get("skew"),
        c_frobenius=values.get("frobenius"),
        deficit=result.deficit if "deficit" in requested else None,
        quad_err=result.error,
    )


def run_sweep(
    config: SweepConfig, logger: Optional[logging.Logger] = None
) -> SweepGrid:
    """
    Evaluate every (alpha, sigma) cell of the configured grid.

    Cells are independent and run on a thread pool; results are collected
    in alpha-outer order, so the grid does not depend on config.workers.

    Args:
        config (SweepConfig): The validated sweep configuration.
        logger (logging.Logger, optional): Defaults to the root logger.

    Returns:
        SweepGrid: The complete grid.

    Raises:
        CellQuadratureError: For the first failing cell in grid order.
    """
    if logger is None:
        logger = logging.getLogger()
    alphas = config.alpha.values()
    sigmas = config.sigma.values()
    points = [(alpha, sigma) for alpha in alphas for sigma in sigmas]
    logger.info(
        f"Evaluating {config.scenario.value} on {len(alphas)} x {len(sigmas)} "
        f"cells (m={config.mass} MeV, center={config.center} MeV)"
    )

    task = partial(evaluate_cell, config)
    with concurrent.futures.ThreadPoolExecutor(max_workers=config.workers) as executor:
        cells = list(
            tqdm(
                executor.map(lambda point: task(*point), points),
                total=len(points),
                disable=len(points) < 2,
            )
        )

    max_error = max((cell.quad_err for cell in cells), default=0.0)
    logger.info(f"Grid complete, largest quadrature error estimate {max_error:.3e}")
    return SweepGrid(
        alphas,
        sigmas,
        cells,
        scenario=config.scenario.value,
        mass=config.mass,
        center=config.center,
    )
