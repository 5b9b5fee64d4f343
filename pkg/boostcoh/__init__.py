from .basics import *
from .wigner import (
    WignerRotation,
    wigner_general,
    wigner_1d,
    wigner_3d_zboost,
    wigner_from_boost_product,
)
from .srdm import (
    QuadratureConfig,
    QuadratureScheme,
    SrdmResult,
    integrate_srdm_1d,
    integrate_srdm_3d,
    srdm_boosted_1d,
    srdm_analytic_1d,
    srdm_boosted_3d,
    srdm_narrow_3d,
    coherence_deficit_narrow,
)
from .coherence import (
    coherence_l1,
    coherence_rel_entropy,
    skew_information,
    coherence_frobenius,
    coherence_frobenius_density,
    frobenius_deficit,
    all_measures,
)
from .sweep import Scenario, AxisRange, SweepConfig, SweepGrid, run_sweep
from .emit import emit_grid, parse_grid, emit_heatmap, heatmap_sidecar
