"""pscircuits: parallel-sequential quantum circuit layouts and experiments."""

__version__ = "0.1.0"

from .layout import (
    CircuitLayout,
    GatePlacement,
    LayoutError,
    LayoutParams,
    build_brickwall_layout,
    build_ps_layout,
    build_sequential_layout,
    idle_layout,
)

__all__ = [
    "__version__",
    "CircuitLayout",
    "GatePlacement",
    "LayoutError",
    "LayoutParams",
    "build_brickwall_layout",
    "build_ps_layout",
    "build_sequential_layout",
    "idle_layout",
]
