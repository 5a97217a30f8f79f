"""Synchronous global-best particle swarm optimization.

Deterministic for a fixed seed: the module owns its pseudo-random stream and
applies the global-best update once per iteration, so results do not depend
on evaluation order or parallelism.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["PSOConfig", "PSOResult", "optimize"]


@dataclass
class PSOConfig:
    """Swarm hyperparameters and per-dimension search box."""

    bounds: np.ndarray  # shape (dims, 2): lo, hi per dimension
    swarm_size: int = 30
    iterations: int = 200
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    seed: int = 0
    velocity_fraction: float = 0.2  # max |v| as a fraction of (hi - lo)

    def __post_init__(self):
        self.bounds = np.asarray(self.bounds, dtype=float)
        if self.bounds.ndim != 2 or self.bounds.shape[1] != 2:
            raise ParameterError("bounds must have shape (dims, 2)")
        if (self.bounds[:, 0] >= self.bounds[:, 1]).any():
            raise ParameterError("each bound must satisfy lo < hi")
        if self.swarm_size < 2:
            raise ParameterError("swarm_size must be at least 2")
        if min(self.inertia, self.cognitive, self.social) < 0:
            raise ParameterError("inertia and acceleration constants must be >= 0")


@dataclass
class PSOResult:
    """Best solution found plus the per-iteration best-value history."""

    best_position: np.ndarray
    best_value: float
    convergence: np.ndarray = field(repr=False)


def optimize(objective, config):
    """Minimize ``objective`` over the config's box with global-best PSO.

    ``convergence[i]`` is the best value seen after iteration i, with entry 0
    recorded right after the initial swarm evaluation; it is non-increasing
    by construction. Positions stay inside the bounds (clamped), velocities
    are clamped to ``velocity_fraction * (hi - lo)``.
    """
    rng = np.random.default_rng(config.seed)
    lo = config.bounds[:, 0]
    hi = config.bounds[:, 1]
    span = hi - lo
    dims = lo.size
    n = config.swarm_size

    pos = rng.uniform(lo, hi, size=(n, dims))
    vel = np.zeros((n, dims))
    v_max = config.velocity_fraction * span

    values = np.array([_evaluate(objective, p) for p in pos])
    if not np.isfinite(values).any():
        raise ParameterError("objective returned non-finite values for every particle")

    pbest = pos.copy()
    pbest_val = values.copy()
    g = int(np.argmin(pbest_val))
    gbest = pbest[g].copy()
    gbest_val = float(pbest_val[g])
    convergence = [gbest_val]

    for _ in range(config.iterations):
        r1 = rng.uniform(size=(n, dims))
        r2 = rng.uniform(size=(n, dims))
        vel = (
            config.inertia * vel
            + config.cognitive * r1 * (pbest - pos)
            + config.social * r2 * (gbest - pos)
        )
        np.clip(vel, -v_max, v_max, out=vel)
        pos = np.clip(pos + vel, lo, hi)

        values = np.array([_evaluate(objective, p) for p in pos])
        improved = values < pbest_val
        pbest[improved] = pos[improved]
        pbest_val[improved] = values[improved]
        # synchronous update: the global best moves once per iteration
        g = int(np.argmin(pbest_val))
        if pbest_val[g] < gbest_val:
            gbest = pbest[g].copy()
            gbest_val = float(pbest_val[g])
        convergence.append(gbest_val)

    return PSOResult(
        best_position=gbest,
        best_value=gbest_val,
        convergence=np.asarray(convergence),
    )


def _evaluate(objective, position):
    value = float(objective(position))
    return value if np.isfinite(value) else np.inf
