"""Interval type-2 fuzzy sets over a discretized universe of discourse.

A set is stored as its sampled lower/upper membership envelopes on a shared
``Grid``. Meet and join act pointwise on the envelopes through a t-norm or
s-norm respectively.
"""

import warnings

import numpy as np

from . import membership as mf
from .errors import FouConstraintError, GridMismatchError, ParameterError

__all__ = [
    "Grid",
    "IT2FS",
    "make_it2fs",
    "gaussian_uncert_mean_set",
    "gaussian_uncert_std_set",
    "min_t_norm",
    "product_t_norm",
    "max_s_norm",
    "check_norm",
    "register_norm",
    "NORM_REGISTRY",
    "meet",
    "join",
]

_FOU_SLACK = 1e-12


class Grid:
    """Strictly increasing sample points spanning the universe of discourse.

    Immutable; sets built on the same grid may be combined. Two grids are
    compatible when they are the same object or hold identical points --
    there is never any silent resampling.
    """

    __slots__ = ("points",)

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ParameterError("grid needs at least 2 points in one dimension")
        if not np.all(np.diff(pts) > 0):
            raise ParameterError("grid points must be strictly increasing")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("Grid is immutable")

    @classmethod
    def uniform(cls, lo, hi, n=100):
        return cls(np.linspace(lo, hi, n))

    def __len__(self):
        return self.points.size

    @property
    def span(self):
        return float(self.points[0]), float(self.points[-1])

    def compatible(self, other):
        return self is other or np.array_equal(self.points, other.points)

    def require_compatible(self, other):
        if not self.compatible(other):
            raise GridMismatchError("operation across different grids")

    def __repr__(self):
        lo, hi = self.span
        return f"Grid({len(self)} points on [{lo:g}, {hi:g}])"


class IT2FS:
    """An interval type-2 fuzzy set: lower/upper envelopes sampled on a grid.

    Invariant: 0 <= lower[i] <= upper[i] <= 1 everywhere (with 1e-12 slack on
    the ordering so that meet/join closure survives float rounding).
    """

    __slots__ = ("grid", "lower", "upper")

    def __init__(self, grid, lower, upper):
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if lower.shape != (len(grid),) or upper.shape != (len(grid),):
            raise ParameterError("envelope length must match the grid")
        if (lower < -_FOU_SLACK).any() or (upper > 1.0 + _FOU_SLACK).any():
            raise FouConstraintError("membership values must lie in [0, 1]")
        if (lower > upper + _FOU_SLACK).any():
            raise FouConstraintError("lower envelope exceeds upper envelope")
        lower = np.clip(lower, 0.0, 1.0)
        upper = np.clip(upper, 0.0, 1.0)
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def __setattr__(self, name, value):
        raise AttributeError("IT2FS is immutable")

    def copy(self):
        """Value-equal independent instance (the grid itself is shared)."""
        return IT2FS(self.grid, self.lower.copy(), self.upper.copy())

    def membership_at(self, value):
        """(lower, upper) membership at a crisp input, by linear interpolation."""
        lo, hi = self.grid.span
        if not lo <= value <= hi:
            raise ParameterError(f"input {value} outside grid span [{lo}, {hi}]")
        x = self.grid.points
        return (
            float(np.interp(value, x, self.lower)),
            float(np.interp(value, x, self.upper)),
        )

    def export_rows(self):
        """Plot-data record: (x, lower, upper) rows, one per grid point."""
        return np.column_stack([self.grid.points, self.lower, self.upper])

    def __eq__(self, other):
        if not isinstance(other, IT2FS):
            return NotImplemented
        return (
            self.grid.compatible(other.grid)
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"IT2FS({self.grid!r}, max upper {self.upper.max():.3g})"


def make_it2fs(grid, umf, umf_params, lmf, lmf_params):
    """Build a set by sampling an upper and a lower membership function.

    ``umf``/``lmf`` are membership callables or registry names from
    :mod:`it2fuzzy.membership`. Raises if the sampled lower envelope exceeds
    the upper anywhere.
    """
    if isinstance(umf, str):
        umf = mf.MF_REGISTRY[umf]
    if isinstance(lmf, str):
        lmf = mf.MF_REGISTRY[lmf]
    upper = umf(grid.points, umf_params)
    lower = lmf(grid.points, lmf_params)
    return IT2FS(grid, lower, upper)


def gaussian_uncert_mean_set(grid, params):
    """Gaussian set with uncertain mean. params: [mean_center, mean_spread, std]."""
    mean_center, mean_spread, std = params
    if mean_spread < 0:
        raise ParameterError(f"mean spread must be >= 0, got {mean_spread}")
    m1 = mean_center - mean_spread / 2.0
    m2 = mean_center + mean_spread / 2.0
    return make_it2fs(
        grid,
        mf.gauss_uncert_mean_umf,
        [m1, m2, std, 1.0],
        mf.gauss_uncert_mean_lmf,
        [m1, m2, std, 1.0],
    )


def gaussian_uncert_std_set(grid, params):
    """Gaussian set with uncertain std. params: [mean, std_center, std_spread]."""
    mean, std_center, std_spread = params
    return make_it2fs(
        grid,
        mf.gauss_uncert_std_umf,
        [mean, std_center, std_spread, 1.0],
        mf.gauss_uncert_std_lmf,
        [mean, std_center, std_spread, 1.0],
    )


def _norm_args(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ParameterError(f"norm operands differ in shape: {a.shape} vs {b.shape}")
    return a, b


def min_t_norm(a, b):
    """Minimum t-norm, elementwise."""
    a, b = _norm_args(a, b)
    return np.minimum(a, b)


def product_t_norm(a, b):
    """Product t-norm, elementwise."""
    a, b = _norm_args(a, b)
    return a * b


def max_s_norm(a, b):
    """Maximum s-norm, elementwise."""
    a, b = _norm_args(a, b)
    return np.maximum(a, b)


def check_norm(norm, kind="t", samples=21):
    """Probe norm axioms on a sample lattice; return a list of violations.

    Checks range, commutativity, monotonicity, and the identity element
    (1 for t-norms, 0 for s-norms) on a ``samples`` x ``samples`` lattice.
    """
    u = np.linspace(0.0, 1.0, samples)
    a, b = np.meshgrid(u, u)
    a, b = a.ravel(), b.ravel()
    out = np.asarray(norm(a, b), dtype=float)
    problems = []
    if (out < -1e-12).any() or (out > 1.0 + 1e-12).any():
        problems.append("output leaves [0, 1]")
    if not np.allclose(out, norm(b, a), atol=1e-12):
        problems.append("not commutative")
    identity = 1.0 if kind == "t" else 0.0
    ident_out = np.asarray(norm(u, np.full_like(u, identity)))
    if not np.allclose(ident_out, u, atol=1e-12):
        problems.append(f"{identity:g} is not an identity")
    # monotonicity along one argument at fixed other
    grid2 = np.asarray(norm(a, b)).reshape(samples, samples)
    if (np.diff(grid2, axis=1) < -1e-12).any() or (np.diff(grid2, axis=0) < -1e-12).any():
        problems.append("not monotone")
    return problems


NORM_REGISTRY = {
    "min": ("t", min_t_norm),
    "product": ("t", product_t_norm),
    "max": ("s", max_s_norm),
}


def register_norm(name, norm, kind):
    """Register a user norm for lookup by name; warns if axioms fail on probe."""
    if kind not in ("t", "s"):
        raise ParameterError("norm kind must be 't' or 's'")
    problems = check_norm(norm, kind)
    if problems:
        warnings.warn(
            f"norm {name!r} violates axioms on probe lattice: {', '.join(problems)}",
            stacklevel=2,
        )
    NORM_REGISTRY[name] = (kind, norm)
    return norm


def meet(a, b, t_norm=min_t_norm):
    """Intersection of two sets: the t-norm applied to both envelope pairs."""
    a.grid.require_compatible(b.grid)
    return IT2FS(a.grid, t_norm(a.lower, b.lower), t_norm(a.upper, b.upper))


def join(a, b, s_norm=max_s_norm):
    """Union of two sets: the s-norm applied to both envelope pairs."""
    a.grid.require_compatible(b.grid)
    return IT2FS(a.grid, s_norm(a.lower, b.lower), s_norm(a.upper, b.upper))
