"""
The five symbol-by-symbol detectors. Observations are (2,) or (n, 2) arrays
of received counts; outputs and decisions keep that shape.

  fixed     y / Q1 >= eta_f
  adaptive  y / Q1 against thresholds of A0 * zf_ex
  zf_ex     inverse of the diagonal mean channel Q1 A0 I
  zf_in     inverse of the mean channel including ILI
  genie     inverse of the realized current-slot arrival matrix
"""
import numpy as np
from .thresholds import ThresholdPair, decide
from ..utils.errors import DomainError, RankDeficiencyError
from ..utils.logger import warn


def _solve(H, y):
    H = np.asarray(H, dtype=float)
    if abs(np.linalg.det(H)) == 0:
        raise RankDeficiencyError("channel matrix is singular")
    return np.asarray(y, dtype=float) @ np.linalg.inv(H).T


def detect_fixed(y, Q1, eta_f=0.2) -> np.ndarray:
    if not 0 < eta_f < 1:
        raise DomainError(f"eta_f must lie in (0, 1) (got {eta_f})")
    return (np.asarray(y, dtype=float) / Q1 >= eta_f).astype(np.int8)


def adaptive_outputs(y, Q1) -> np.ndarray:
    if not Q1 > 0:
        raise DomainError("Q1 must be > 0")
    return np.asarray(y, dtype=float) / Q1


def detect_adaptive(y, Q1, thresholds: ThresholdPair) -> np.ndarray:
    return decide(adaptive_outputs(y, Q1), thresholds)[0]


def zf_ex_outputs(y, H_ex) -> np.ndarray:
    return _solve(H_ex, y)


def detect_zf_ex(y, H_ex, thresholds: ThresholdPair) -> np.ndarray:
    return decide(zf_ex_outputs(y, H_ex), thresholds)[0]


def inverse_in(H_in) -> np.ndarray:
    """Closed-form inverse of [[a, b], [b, a]] = 1/(a^2 - b^2) [[a, -b], [-b, a]]."""
    H = np.asarray(H_in, dtype=float)
    a, b = H[0, 0], H[0, 1]
    if not (H[1, 1] == a and H[1, 0] == b):
        raise DomainError("mean channel with ILI must be symmetric with equal diagonal")
    det = a * a - b * b
    if not det > 0:
        raise RankDeficiencyError(f"mean channel with ILI is rank deficient (a^2 - b^2 = {det})")
    return np.array([[a, -b], [-b, a]]) / det


def zf_in_outputs(y, H_in) -> np.ndarray:
    return np.asarray(y, dtype=float) @ inverse_in(H_in).T


def detect_zf_in(y, H_in, thresholds: ThresholdPair) -> np.ndarray:
    return decide(zf_in_outputs(y, H_in), thresholds)[0]


def genie_outputs(y, realized_H, H_in=None) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-slot inverse of the realized arrival matrix. Singular slots fall back
    to zf_in when H_in is given. Returns (outputs, singular mask).
    """
    y = np.asarray(y, dtype=float)
    H = np.asarray(realized_H, dtype=float)
    single = y.ndim == 1
    if single:
        y, H = y[None], H[None]
    det = H[:, 0, 0] * H[:, 1, 1] - H[:, 0, 1] * H[:, 1, 0]
    singular = det == 0
    safe = np.where(singular, 1.0, det)
    out = np.empty_like(y)
    out[:, 0] = (H[:, 1, 1] * y[:, 0] - H[:, 0, 1] * y[:, 1]) / safe
    out[:, 1] = (H[:, 0, 0] * y[:, 1] - H[:, 1, 0] * y[:, 0]) / safe
    if singular.any():
        if H_in is None:
            raise RankDeficiencyError(f"{int(singular.sum())} singular realized matrices and no fallback")
        out[singular] = zf_in_outputs(y[singular], H_in)
    if single:
        return out[0], singular[0]
    return out, singular


def detect_genie(y, realized_H, thresholds: ThresholdPair, H_in=None) -> np.ndarray:
    out, singular = genie_outputs(y, realized_H, H_in)
    n_sing = int(np.count_nonzero(singular))
    if n_sing:
        warn(f"genie: {n_sing} singular slot(s) decided with zf_in")
    return decide(out, thresholds)[0]
