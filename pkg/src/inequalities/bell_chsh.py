"""
Bell-CHSH maximum of a channel state.

beta_max uses the correlation-matrix closed form 2 sqrt(u1 + u2); beta_oracle
searches measurement directions directly and serves as an independent check.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from ..config.constants import UNIT_TOL
from ..config.settings import OracleSettings
from ..core.qlinalg import hermitian_eigen
from ..core.states import DensityOperator, correlation_matrix
from ..utils.logger import get_logger

logger = get_logger("BellCHSH")


def _unit(v, name: str) -> np.ndarray:
    vec = np.asarray(v, dtype=float).reshape(-1)
    if vec.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} is not a unit vector (norm {norm:.12g})")
    return vec


@dataclass(frozen=True)
class ChshSettings:
    """Alice's directions a, a' (qubit 2) and Bob's b, b' (qubit 3)."""
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, _unit(getattr(self, name), name))


def chsh_value(d: DensityOperator, s: ChshSettings) -> float:
    """<B>_D = a.T(b + b') + a'.T(b - b')."""
    t = correlation_matrix(d).t
    return float(s.a @ t @ (s.b + s.b_prime) + s.a_prime @ t @ (s.b - s.b_prime))


def _top_singular_pairs(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    eig = hermitian_eigen(t.T @ t)
    return np.clip(eig.eigenvalues, 0.0, None), np.real(eig.eigenvectors)


def beta_max(d: DensityOperator) -> float:
    """Maximum |<B>_D| over all spin settings, 2 sqrt(u1 + u2)."""
    u, _ = _top_singular_pairs(correlation_matrix(d).t)
    return 2.0 * math.sqrt(u[0] + u[1])


def _orthogonal_unit(v: np.ndarray) -> np.ndarray:
    axis = np.eye(3)[int(np.argmin(np.abs(v)))]
    w = np.cross(v, axis)
    return w / np.linalg.norm(w)


def optimal_chsh_settings(d: DensityOperator) -> ChshSettings:
    """Settings that attain beta_max."""
    t = correlation_matrix(d).t
    u, vecs = _top_singular_pairs(t)
    c1 = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    c2 = vecs[:, 1] - (vecs[:, 1] @ c1) * c1
    c2 = c2 / np.linalg.norm(c2)

    angle = math.atan2(math.sqrt(u[1]), math.sqrt(u[0])) if u[0] > 0 else math.pi / 4
    b = math.cos(angle) * c1 + math.sin(angle) * c2
    b_prime = math.cos(angle) * c1 - math.sin(angle) * c2

    tc1, tc2 = t @ c1, t @ c2
    a = tc1 / np.linalg.norm(tc1) if np.linalg.norm(tc1) > 1e-15 else _orthogonal_unit(c1)
    a_prime = tc2 / np.linalg.norm(tc2) if np.linalg.norm(tc2) > 1e-15 else _orthogonal_unit(a)
    return ChshSettings(a=a, a_prime=a_prime, b=b, b_prime=b_prime)


def _direction(polar: float, azimuth: float) -> np.ndarray:
    return np.array([
        math.sin(polar) * math.cos(azimuth),
        math.sin(polar) * math.sin(azimuth),
        math.cos(polar),
    ])


def _best_bob(t: np.ndarray, a: np.ndarray, a_prime: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    plus = t.T @ (a + a_prime)
    minus = t.T @ (a - a_prime)
    # <B> = T^T(a + a').b + T^T(a - a').b'
    np_, nm = float(np.linalg.norm(plus)), float(np.linalg.norm(minus))
    b = plus / np_ if np_ > 0 else np.array([0.0, 0.0, 1.0])
    b_prime = minus / nm if nm > 0 else np.array([0.0, 0.0, 1.0])
    return np_ + nm, b, b_prime


def beta_oracle(
    d: DensityOperator,
    resolution: Optional[int] = None,
    settings: Optional[OracleSettings] = None,
) -> float:
    """
    Brute-force CHSH maximum over a product grid of Alice directions.

    For fixed a, a' the best Bob pair is found in closed form. The best grid
    point is refined with Nelder-Mead and the winner is re-evaluated through
    chsh_value, so the result never exceeds beta_max beyond rounding.
    """
    resolution = resolution or (settings or OracleSettings()).resolution
    if resolution < 8:
        raise ValueError(f"oracle resolution must be >= 8, got {resolution}")
    t = correlation_matrix(d).t

    polar = (np.arange(resolution // 2) + 0.5) * math.pi / (resolution // 2)
    azimuth = np.arange(resolution) * 2.0 * math.pi / resolution
    pp, aa = np.meshgrid(polar, azimuth, indexing="ij")
    pp, aa = pp.ravel(), aa.ravel()
    dirs = np.stack([np.sin(pp) * np.cos(aa), np.sin(pp) * np.sin(aa), np.cos(pp)], axis=1)

    proj = dirs @ t
    plus = np.linalg.norm(proj[:, None, :] + proj[None, :, :], axis=2)
    minus = np.linalg.norm(proj[:, None, :] - proj[None, :, :], axis=2)
    grid = plus + minus
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    start = np.array([pp[i], aa[i], pp[j], aa[j]])

    def objective(x: np.ndarray) -> float:
        value, _, _ = _best_bob(t, _direction(x[0], x[1]), _direction(x[2], x[3]))
        return -value

    result = minimize(objective, start, method="Nelder-Mead",
                      options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000})
    best = result.x if -result.fun >= grid[i, j] else start

    a, a_prime = _direction(best[0], best[1]), _direction(best[2], best[3])
    _, b, b_prime = _best_bob(t, a, a_prime)
    value = abs(chsh_value(d, ChshSettings(a=a, a_prime=a_prime, b=b, b_prime=b_prime)))
    logger.debug(f"oracle grid {grid[i, j]:.9f} refined {value:.9f} ({result.nit} iterations)")
    return value
