from dataclasses import dataclass
import numpy as np
from scipy.optimize import least_squares
from .model import ChannelModelParams, model_values, model_jacobian
from ..particles.cdf import EmpiricalCdf
from ..particles.topology import Topology
from ..utils.errors import DomainError, FitError

MIN_GRID_POINTS = 50


@dataclass(frozen=True)
class FitResult:
    params: ChannelModelParams
    residual_norm: float
    rms: float
    iterations: int
    converged: bool
    message: str

    @property
    def in_range(self) -> bool:
        return self.params.in_range

    def as_row(self) -> dict:
        return {"link_class": self.params.link_class, "b1": self.params.b1, "b2": self.params.b2,
                "b3": self.params.b3, "residual_norm": self.residual_norm, "rms": self.rms,
                "iterations": self.iterations, "converged": self.converged, "in_range": self.in_range}


def fit_model(cdf: EmpiricalCdf, topology: Topology, d_ij: float, link_class="pair",
              x0=(1.0, 0.5, 0.5), xtol=1e-8, max_nfev=200) -> FitResult:
    """
    Levenberg-Marquardt fit of (b1, b2, b3) to an empirical CDF, unweighted
    least squares on the raw grid, analytic Jacobian.
    Non-convergence is reported through `converged`, not raised.
    """
    if len(cdf) < MIN_GRID_POINTS:
        raise DomainError(f"need >= {MIN_GRID_POINTS} grid points to fit (got {len(cdf)})")
    if not np.any(cdf.fraction > 0):
        raise FitError("empirical CDF is identically zero; nothing to fit")
    t, f = cdf.time_grid, cdf.fraction

    def resid(x):
        return model_values(t, x, topology, d_ij) - f

    def jac(x):
        return model_jacobian(t, x, topology, d_ij)

    sol = least_squares(resid, np.asarray(x0, dtype=float), jac=jac, method="lm",
                        xtol=xtol, ftol=1e-12, gtol=1e-12, max_nfev=max_nfev)
    b = sol.x
    if not np.all(np.isfinite(b)) or np.any(b <= 0):
        raise FitError(f"fit left the admissible region: b = {tuple(b)}")
    params = ChannelModelParams(float(b[0]), float(b[1]), float(b[2]), link_class, topology)
    r = sol.fun
    return FitResult(params, float(np.linalg.norm(r)), float(np.sqrt(np.mean(r ** 2))),
                     int(sol.nfev), bool(sol.success), str(sol.message))
