"""Scalar membership-function primitives.

Each function evaluates pointwise over a vector of domain samples ``x`` and
takes a flat ``params`` sequence. Every function maps into [0, 1] and is pure.
Where a shape has a height slot it is the trailing parameter and may be
omitted, defaulting to 1.
"""

import numpy as np

from .errors import ParameterError

__all__ = [
    "zero_mf",
    "singleton_mf",
    "const_mf",
    "tri_mf",
    "trapezoid_mf",
    "gaussian_mf",
    "gauss_uncert_mean_umf",
    "gauss_uncert_mean_lmf",
    "gauss_uncert_std_umf",
    "gauss_uncert_std_lmf",
    "MF_REGISTRY",
]

_GRID_SNAP_TOL = 1e-9


def _as_array(x):
    return np.asarray(x, dtype=float)


def _check_height(h):
    if not 0.0 <= h <= 1.0:
        raise ParameterError(f"height must lie in [0, 1], got {h}")
    return float(h)


def _params_with_height(params, n_shape, name):
    """Split params into shape abscissae and a trailing (optional) height."""
    params = list(params)
    if len(params) == n_shape:
        height = 1.0
    elif len(params) == n_shape + 1:
        height = params[-1]
    else:
        raise ParameterError(
            f"{name} expects {n_shape} or {n_shape + 1} parameters, got {len(params)}"
        )
    return params[:n_shape], _check_height(height)


def zero_mf(x, params=None):
    """Identically zero membership; ``params`` is ignored."""
    return np.zeros_like(_as_array(x))


def singleton_mf(x, params):
    """Membership ``height`` at the grid point equal to ``center``, 0 elsewhere.

    params: [center, height]. The center must coincide with a grid point
    (within 1e-9); anything else signals a discretization mismatch.
    """
    (center,), height = _params_with_height(params, 1, "singleton_mf")
    x = _as_array(x)
    hits = np.isclose(x, center, rtol=0.0, atol=_GRID_SNAP_TOL)
    if x.size and not hits.any():
        raise ParameterError(f"singleton center {center} does not lie on the grid")
    return np.where(hits, height, 0.0)


def const_mf(x, params):
    """Constant membership. params: [height]."""
    if len(params) != 1:
        raise ParameterError(f"const_mf expects 1 parameter, got {len(params)}")
    height = _check_height(params[0])
    return np.full_like(_as_array(x), height)


def tri_mf(x, params):
    """Triangular membership. params: [left, peak, right, height].

    Zero outside [left, right], rising linearly to ``height`` at ``peak``.
    """
    (left, peak, right), height = _params_with_height(params, 3, "tri_mf")
    if not left <= peak <= right:
        raise ParameterError(f"tri_mf needs left <= peak <= right, got {params}")
    x = _as_array(x)
    out = np.zeros_like(x)
    if peak > left:
        rising = (x >= left) & (x < peak)
        out[rising] = (x[rising] - left) / (peak - left)
    if right > peak:
        falling = (x >= peak) & (x <= right)
        out[falling] = (right - x[falling]) / (right - peak)
    out[x == peak] = 1.0
    return height * out


def trapezoid_mf(x, params):
    """Trapezoidal membership. params: [left, lt, rt, right, height].

    Zero outside [left, right], ``height`` on the plateau [lt, rt], linear
    ramps between.
    """
    (left, lt, rt, right), height = _params_with_height(params, 4, "trapezoid_mf")
    if not left <= lt <= rt <= right:
        raise ParameterError(f"trapezoid_mf needs left <= lt <= rt <= right, got {params}")
    x = _as_array(x)
    out = np.zeros_like(x)
    if lt > left:
        rising = (x >= left) & (x < lt)
        out[rising] = (x[rising] - left) / (lt - left)
    if right > rt:
        falling = (x > rt) & (x <= right)
        out[falling] = (right - x[falling]) / (right - rt)
    out[(x >= lt) & (x <= rt)] = 1.0
    return height * out


def gaussian_mf(x, params):
    """Gaussian membership: height * exp(-(x - mean)^2 / (2 std^2)).

    params: [mean, std, height], std > 0.
    """
    (mean, std), height = _params_with_height(params, 2, "gaussian_mf")
    if std <= 0:
        raise ParameterError(f"gaussian_mf needs std > 0, got {std}")
    x = _as_array(x)
    return height * np.exp(-((x - mean) ** 2) / (2.0 * std**2))


def _check_uncert_mean(params):
    (m1, m2, std), height = _params_with_height(params, 3, "gauss_uncert_mean")
    if m1 > m2:
        raise ParameterError(f"gauss_uncert_mean needs m1 <= m2, got {m1} > {m2}")
    if std <= 0:
        raise ParameterError(f"gauss_uncert_mean needs std > 0, got {std}")
    return m1, m2, std, height


def gauss_uncert_mean_umf(x, params):
    """Upper envelope of a Gaussian with mean uncertain over [m1, m2].

    params: [m1, m2, std, height]. Flat at ``height`` on the mean interval,
    Gaussian tails (mean m1 / m2) on either side.
    """
    m1, m2, std, height = _check_uncert_mean(params)
    x = _as_array(x)
    out = np.full_like(x, height)
    left = x < m1
    right = x > m2
    out[left] = height * np.exp(-((x[left] - m1) ** 2) / (2.0 * std**2))
    out[right] = height * np.exp(-((x[right] - m2) ** 2) / (2.0 * std**2))
    return out


def gauss_uncert_mean_lmf(x, params):
    """Lower envelope of a Gaussian with mean uncertain over [m1, m2].

    Pointwise minimum of the two extreme Gaussians (same std and height).
    """
    m1, m2, std, height = _check_uncert_mean(params)
    x = _as_array(x)
    g1 = np.exp(-((x - m1) ** 2) / (2.0 * std**2))
    g2 = np.exp(-((x - m2) ** 2) / (2.0 * std**2))
    return height * np.minimum(g1, g2)


def _check_uncert_std(params):
    (mean, std_center, std_spread), height = _params_with_height(
        params, 3, "gauss_uncert_std"
    )
    if std_spread < 0:
        raise ParameterError(f"std spread must be >= 0, got {std_spread}")
    lo = std_center - std_spread / 2.0
    if lo <= 0:
        raise ParameterError(
            f"effective std must stay positive: center {std_center}, spread {std_spread}"
        )
    return mean, std_center, std_spread, height


def gauss_uncert_std_umf(x, params):
    """Upper envelope of a Gaussian with uncertain std.

    params: [mean, std_center, std_spread, height]. The spread is split
    symmetrically, so the upper envelope uses std_center + std_spread/2.
    """
    mean, std_center, std_spread, height = _check_uncert_std(params)
    return gaussian_mf(x, [mean, std_center + std_spread / 2.0, height])


def gauss_uncert_std_lmf(x, params):
    """Lower envelope of a Gaussian with uncertain std (std_center - std_spread/2)."""
    mean, std_center, std_spread, height = _check_uncert_std(params)
    return gaussian_mf(x, [mean, std_center - std_spread / 2.0, height])


# name -> function, for declarative (config-file) set construction
MF_REGISTRY = {
    "zero": zero_mf,
    "singleton": singleton_mf,
    "const": const_mf,
    "tri": tri_mf,
    "trapezoid": trapezoid_mf,
    "gaussian": gaussian_mf,
    "gauss_uncert_mean_umf": gauss_uncert_mean_umf,
    "gauss_uncert_mean_lmf": gauss_uncert_mean_lmf,
    "gauss_uncert_std_umf": gauss_uncert_std_umf,
    "gauss_uncert_std_lmf": gauss_uncert_std_lmf,
}
