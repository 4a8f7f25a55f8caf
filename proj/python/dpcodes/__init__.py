"""Anticanonical codes from del Pezzo surfaces of Picard rank one."""

try:
    from ._dpcodes import (  # type: ignore[attr-defined]
        Code,
        Model,
        auto5,
        build,
        expected_parameters,
        flynn_explicit,
        pencil_type_file,
        tables,
    )
except ImportError:  # extension built out-of-package (development layout)
    from _dpcodes import (  # type: ignore[no-redef]
        Code,
        Model,
        auto5,
        build,
        expected_parameters,
        flynn_explicit,
        pencil_type_file,
        tables,
    )

__all__ = [
    "Code",
    "Model",
    "auto5",
    "build",
    "expected_parameters",
    "flynn_explicit",
    "pencil_type_file",
    "tables",
]
