import sys
import argparse
from typing import List, Optional

from .sweep import ALL_MEASURES, OUTPUT_FORMATS, Scenario
from .srdm import QuadratureScheme


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweep",
        allow_abbrev=False,  # explicit_args matches full option strings only
        description=(
            "Evaluate boosted spin-reduced density matrices and their coherence "
            "over an (alpha, sigma) grid."
        ),
    )

    # Configuration file
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help=(
            "Path to a TOML or JSON configuration file. "
            "Values from the file override defaults and are overridden by "
            "command-line arguments."
        ),
    )

    # Scenario
    parser.add_argument(
        "--scenario",
        choices=[s.value for s in Scenario],
        default=None,
        help="Which packet and spin state to boost (default: case1-zero)",
    )
    parser.add_argument(
        "--mass",
        type=float,
        default=None,
        help="Particle mass in MeV (default: 0.5, or 939.36 for case3-neutron)",
    )
    parser.add_argument(
        "--center",
        type=float,
        default=None,
        help=(
            "Center of the 1D momentum packet in MeV "
            "(default: 0, or 1/(2*sqrt(3)) for case1-p)"
        ),
    )

    # Grid
    parser.add_argument(
        "--alpha",
        type=str,
        default=None,
        help="Rapidity axis as min:max:steps (default: 0:5:50)",
    )
    parser.add_argument(
        "--sigma",
        type=str,
        default=None,
        help=(
            "Packet-width axis in MeV as min:max:steps "
            "(default: 0:mass:50, or 0:100:50 for case3-neutron)"
        ),
    )
    parser.add_argument(
        "--measures",
        type=str,
        default=None,
        help=(
            "Comma-separated subset of " + ",".join(ALL_MEASURES) + " (default: all)"
        ),
    )

    # Output
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=None,
        help="Grid output format (default: csv)",
    )
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output path of the grid. The grid goes to stdout when omitted.",
    )
    parser.add_argument(
        "--heatmap",
        type=str,
        default=None,
        help=(
            "Field to render as a 16-bit PGM next to --out, "
            "e.g. c_frobenius or rho12"
        ),
    )

    # Quadrature
    parser.add_argument(
        "--quad-scheme",
        choices=[s.value for s in QuadratureScheme],
        default=None,
        help="Quadrature used for the SRDM integrals (default: gauss-hermite)",
    )
    parser.add_argument(
        "--quad-order",
        type=int,
        default=None,
        help="Starting Gauss-Hermite order; doubled until converged (default: 64)",
    )
    parser.add_argument(
        "--rel-tol",
        type=float,
        default=None,
        help="Error tolerance on the density-matrix entries (default: 1e-10)",
    )

    # Execution and logging
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Number of threads evaluating grid cells (default: 1)",
    )
    parser.add_argument(
        "--log-dir",
        type=str,
        default=None,
        help="Directory to save logs. Set to 'none' to disable (default: none)",
    )
    parser.add_argument(
        "--log-prefix",
        type=str,
        default=None,
        help="Prefix of the log messages and log file name (default: sweep)",
    )
    return parser


def parse_arguments(argv: Optional[List[str]] = None):
    """
    Parse the command line.

    Returns:
        tuple: (args, explicit_args) where explicit_args maps destinations to
        the values of the options actually present on the command line.
    """
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)

    given = set()
    for token in argv:
        if token.startswith("--"):
            given.add(token.split("=", 1)[0])
    explicit_args = {
        action.dest: getattr(args, action.dest)
        for action in parser._actions
        if any(option in given for option in action.option_strings)
        and action.dest != "help"
    }
    return args, explicit_args
