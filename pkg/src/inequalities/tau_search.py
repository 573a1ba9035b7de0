"""
Search for tau(D), the maximum of the Bell teleportation expression.

Bob's directions are maximized in closed form, so the search runs over the
discrete assignment pairs and the four unknown-state angles only:

1. a vectorized angle grid on every pair (the certificate floor),
2. the X1 = sigma_x, X2 = sigma_y anchor,
3. Nelder-Mead refinement of every pair from its grid optimum,
4. quasi-random multistarts on the leading pair of each class.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from ..config.settings import OptimizerSettings
from ..core.states import DensityOperator, correlation_matrix
from ..utils.logger import get_logger
from .tele_bell import (
    AssignmentClass,
    BivalentAssignment,
    TeleSettings,
    assignment_pairs,
    classify,
    contraction_vector,
    fidelity_bound_settings,
    tau_lower_bound,
)

Pair = Tuple[BivalentAssignment, BivalentAssignment]
Angles = Tuple[float, float, float, float]

# Periods of (theta_1, vartheta_1, theta_2, vartheta_2)
ANGLE_SPANS = (math.pi, 2.0 * math.pi, math.pi, 2.0 * math.pi)


@dataclass
class TauResult:
    """Outcome of one tau(D) search."""
    tau_raw: float
    argmax: TeleSettings
    argmax_class: AssignmentClass
    lower_bound: float
    per_class_max: Dict[AssignmentClass, float] = field(default_factory=dict)
    converged: bool = True
    evaluations: int = 0
    local_searches: int = 0


@dataclass
class _PairBest:
    value: float
    angles: Angles


class TauOptimizer:
    """Grid, anchor and multistart search over one channel state."""

    def __init__(
        self,
        d: DensityOperator,
        cfg: Optional[OptimizerSettings] = None,
        classes: Optional[Iterable[AssignmentClass]] = None,
    ):
        self.d = d
        self.cfg = cfg or OptimizerSettings()
        self.logger = get_logger("TauOptimizer")

        corr = correlation_matrix(d)
        self._t = corr.t
        self._bloch_b = corr.bloch_b
        self._t_rows = tuple(tuple(float(v) for v in row) for row in corr.t)
        self._sb = tuple(float(v) for v in corr.bloch_b)

        self.classes = set(classes) if classes is not None else None
        self.pairs: List[Pair] = assignment_pairs(self.cfg.symmetry_reduced, self.classes)
        if not self.pairs:
            raise ValueError("no assignment pairs left to search")

        self._evaluations = 0
        self._local_searches = 0
        self._failed_searches = 0

    # ------------------------------------------------------------------
    # Evaluation

    def _grid_rows(self, s: BivalentAssignment, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Correlator rows r for every (theta, vartheta) grid node of one assignment."""
        x0, kx, ky, kz = s.pauli_coefficients()
        theta = np.arange(n) * math.pi / n
        vartheta = np.arange(n) * 2.0 * math.pi / n
        th, vt = np.meshgrid(theta, vartheta, indexing="ij")
        th, vt = th.ravel(), vt.ravel()
        s2 = np.sin(2.0 * th)
        x = np.stack([kx * s2 * np.cos(vt), ky * s2 * np.sin(vt), kz * np.cos(2.0 * th)], axis=1)
        rows = x0 * self._bloch_b[None, :] + x @ self._t
        return rows, np.stack([th, vt], axis=1)

    def _objective(self, pair: Pair) -> Callable[[Sequence[float]], float]:
        """Inner maximum as a plain function of the four angles."""
        x0a, kxa, kya, kza = pair[0].pauli_coefficients()
        x0b, kxb, kyb, kzb = pair[1].pauli_coefficients()
        t, sb = self._t_rows, self._sb
        sin, cos, hypot = math.sin, math.cos, math.hypot

        def value(angles: Sequence[float]) -> float:
            th1, v1, th2, v2 = angles
            s1, s2 = sin(2.0 * th1), sin(2.0 * th2)
            xa = (kxa * s1 * cos(v1), kya * s1 * sin(v1), kza * cos(2.0 * th1))
            xb = (kxb * s2 * cos(v2), kyb * s2 * sin(v2), kzb * cos(2.0 * th2))
            r1 = [x0a * sb[n] + xa[0] * t[0][n] + xa[1] * t[1][n] + xa[2] * t[2][n] for n in range(3)]
            r2 = [x0b * sb[n] + xb[0] * t[0][n] + xb[1] * t[1][n] + xb[2] * t[2][n] for n in range(3)]
            return (hypot(r1[0] + r2[0], r1[1] + r2[1], r1[2] + r2[2])
                    + hypot(r1[0] - r2[0], r1[1] - r2[1], r1[2] - r2[2]))

        return value

    def _grid_search(self) -> List[_PairBest]:
        n = self.cfg.grid_floor
        cache: Dict[BivalentAssignment, Tuple[np.ndarray, np.ndarray]] = {}
        best = []
        for first, second in self.pairs:
            for s in (first, second):
                if s not in cache:
                    cache[s] = self._grid_rows(s, n)
            r1, ang1 = cache[first]
            r2, ang2 = cache[second]
            plus = np.linalg.norm(r1[:, None, :] + r2[None, :, :], axis=2)
            minus = np.linalg.norm(r1[:, None, :] - r2[None, :, :], axis=2)
            values = plus + minus
            flat = int(np.argmax(values))
            i, j = np.unravel_index(flat, values.shape)
            self._evaluations += values.size
            best.append(_PairBest(
                value=float(values[i, j]),
                angles=(float(ang1[i, 0]), float(ang1[i, 1]), float(ang2[j, 0]), float(ang2[j, 1])),
            ))
        self.logger.debug(f"grid {n}^4 over {len(self.pairs)} pairs, best {max(b.value for b in best):.9f}")
        return best

    def _apply_anchor(self, best: List[_PairBest]) -> None:
        anchor = fidelity_bound_settings()
        pair = (anchor.assignment_1, anchor.assignment_2)
        if pair not in self.pairs:
            return
        idx = self.pairs.index(pair)
        angles = (anchor.theta_1, anchor.vartheta_1, anchor.theta_2, anchor.vartheta_2)
        value = self._objective(pair)(angles)
        self._evaluations += 1
        if value > best[idx].value:
            best[idx] = _PairBest(value=value, angles=angles)

    def _local_search(self, pair: Pair, start: Sequence[float]) -> _PairBest:
        objective = self._objective(pair)
        x0 = np.asarray(start, dtype=float)
        simplex = np.vstack([x0] + [x0 + self.cfg.initial_step * e for e in np.eye(4)])
        result = minimize(
            lambda x: -objective(x),
            x0,
            method="Nelder-Mead",
            options={
                "xatol": self.cfg.step_tolerance,
                "fatol": 1e-12,
                "maxiter": self.cfg.max_iterations,
                "initial_simplex": simplex,
            },
        )
        self._local_searches += 1
        self._evaluations += int(result.nfev)
        if not result.success:
            self._failed_searches += 1
        return _PairBest(value=float(-result.fun), angles=tuple(float(a) for a in result.x))

    def _refine(self, best: List[_PairBest]) -> None:
        for idx, pair in enumerate(self.pairs):
            candidate = self._local_search(pair, best[idx].angles)
            if candidate.value > best[idx].value:
                best[idx] = candidate

    def _multistart(self, best: List[_PairBest]) -> None:
        if self.cfg.starts <= 0:
            return
        sampler = qmc.Halton(d=4, scramble=True, seed=self.cfg.seed)
        starts = sampler.random(self.cfg.starts) * np.array(ANGLE_SPANS)

        leaders: Dict[AssignmentClass, int] = {}
        for idx, pair in enumerate(self.pairs):
            label = classify(pair)
            if label not in leaders or best[idx].value > best[leaders[label]].value:
                leaders[label] = idx

        for label, idx in leaders.items():
            pair = self.pairs[idx]
            for start in starts:
                candidate = self._local_search(pair, start)
                if candidate.value > best[idx].value:
                    best[idx] = candidate
            self.logger.debug(f"class {label.value} leader {pair[0]}/{pair[1]} -> {best[idx].value:.9f}")

    # ------------------------------------------------------------------

    def _settings_for(self, pair: Pair, angles: Angles) -> Tuple[float, TeleSettings]:
        th1, v1, th2, v2 = angles
        x0a, xa = contraction_vector(pair[0], th1, v1)
        x0b, xb = contraction_vector(pair[1], th2, v2)
        r1 = x0a * self._bloch_b + xa @ self._t
        r2 = x0b * self._bloch_b + xb @ self._t
        plus, minus = r1 + r2, r1 - r2
        z = np.array([0.0, 0.0, 1.0])
        bob_1 = plus / np.linalg.norm(plus) if np.linalg.norm(plus) > 0 else z
        bob_2 = minus / np.linalg.norm(minus) if np.linalg.norm(minus) > 0 else z
        value = float(np.linalg.norm(plus) + np.linalg.norm(minus))
        return value, TeleSettings(pair[0], pair[1], th1, v1, th2, v2, bob_1=bob_1, bob_2=bob_2)

    def run(self) -> "TauResult":
        best = self._grid_search()
        self._apply_anchor(best)
        if self.cfg.local_refinement:
            self._refine(best)
            self._multistart(best)

        per_class: Dict[AssignmentClass, float] = {}
        winner = 0
        for idx, pair in enumerate(self.pairs):
            label = classify(pair)
            if label not in per_class or best[idx].value > per_class[label]:
                per_class[label] = best[idx].value
            if best[idx].value > best[winner].value:
                winner = idx

        pair = self.pairs[winner]
        tau_raw, settings = self._settings_for(pair, best[winner].angles)
        converged = self._failed_searches == 0
        if not converged:
            self.logger.warning(
                f"{self._failed_searches} of {self._local_searches} local searches "
                f"hit the {self.cfg.max_iterations}-iteration budget"
            )
        self.logger.debug(f"tau_raw {tau_raw:.12f} from pair {pair[0]}/{pair[1]}")

        return TauResult(
            tau_raw=tau_raw,
            argmax=settings,
            argmax_class=classify(pair),
            lower_bound=tau_lower_bound(self.d),
            per_class_max=per_class,
            converged=converged,
            evaluations=self._evaluations,
            local_searches=self._local_searches,
        )


def tau_max(
    d: DensityOperator,
    cfg: Optional[OptimizerSettings] = None,
    classes: Optional[Iterable[AssignmentClass]] = None,
) -> TauResult:
    """tau(D) over assignment pairs, unknown-state angles and Bob's directions."""
    return TauOptimizer(d, cfg, classes).run()
