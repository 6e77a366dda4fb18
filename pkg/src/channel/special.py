"""Special-function kernels used by the channel model and the GGD error analysis."""
import numpy as np
from scipy import special
from ..utils.errors import DomainError


def erfc(x):
    return special.erfc(x)


def regularized_lower_gamma(s, x):
    """P(s, x) = gamma(s, x) / Gamma(s)."""
    s, x = np.asarray(s, dtype=float), np.asarray(x, dtype=float)
    if np.any(s <= 0) or np.any(x < 0):
        raise DomainError("lower incomplete gamma needs s > 0 and x >= 0")
    return special.gammainc(s, x)


def lower_incomplete_gamma(s, x):
    """Non-normalized gamma(s, x) = integral_0^x t^(s-1) e^-t dt."""
    return regularized_lower_gamma(s, x) * special.gamma(s)
