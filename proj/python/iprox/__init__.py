from ._iprox import (
    Constants,
    Instance,
    compute_constants,
    estimate_rate,
    soft_threshold,
)

__all__ = [
    "Constants",
    "Instance",
    "compute_constants",
    "estimate_rate",
    "soft_threshold",
]
