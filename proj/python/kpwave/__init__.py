"""Python bindings for the kpwave KP-equation solver.

Snapshots are returned as dicts holding a ``(ny, nx)`` float64 array under
``"field"`` together with the sample coordinates, time, equation tag and
configuration digest, so plotting code can work from files written by
``kpwave solve`` or from in-memory runs alike.
"""

from ._kpwave import (
    ConfigParseError,
    EquationKind,
    FormatError,
    InstabilityError,
    KpwaveError,
    SignBranch,
    boussinesq_residual,
    compressible_parameters,
    incompressible_parameters,
    line_soliton,
    read_snapshot,
    shock_distance,
    simulate,
    soliton_speed,
    write_snapshot,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigParseError",
    "EquationKind",
    "FormatError",
    "InstabilityError",
    "KpwaveError",
    "SignBranch",
    "boussinesq_residual",
    "compressible_parameters",
    "incompressible_parameters",
    "line_soliton",
    "read_snapshot",
    "shock_distance",
    "simulate",
    "soliton_speed",
    "write_snapshot",
]
