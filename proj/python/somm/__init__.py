from ._somm import (
    __version__,
    balance,
    covdiv,
    g_mean,
    generate_synthetic,
    imbalance_ratio,
    mann_whitney_u,
    mg,
    oversample,
)

__all__ = [
    "__version__",
    "balance",
    "covdiv",
    "g_mean",
    "generate_synthetic",
    "imbalance_ratio",
    "mann_whitney_u",
    "mg",
    "oversample",
]
