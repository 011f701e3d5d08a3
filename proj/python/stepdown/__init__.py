"""Stepdown multiple-testing procedures.

Critical-constant recipes for k-FWER, FDP-tail and FDR control, stepdown and
stepup rejection rules, reference comparison grids, and a seeded Monte Carlo
harness for error-rate estimation. The heavy lifting lives in the compiled
extension module ``stepdown._core``.
"""

from ._core import (
    apply,
    apply_method,
    constants,
    convert_level,
    d_value,
    figure_csv,
    harmonic,
    n_cap,
    normal_cdf,
    simulate,
    table_csv,
)

__version__ = "1.0.0"

__all__ = [
    "apply",
    "apply_method",
    "constants",
    "convert_level",
    "d_value",
    "figure_csv",
    "harmonic",
    "n_cap",
    "normal_cdf",
    "simulate",
    "table_csv",
    "__version__",
]
