"""Type-reduction algorithms over interval-weighted domains.

All reducers consume a :class:`WeightedDomain` (sample points with lower and
upper weights) and return a :class:`TRInterval`. The KM family (KM, EKM,
WEKM, TWEKM, EIASC) computes the exact centroid interval -- the members
differ only in how they search for the switch points -- and each must agree
with the exhaustive reference :func:`centroid_exact` to 1e-9. WM is an
uncertainty-bounds approximation; BMM, LBMM and NT are closed-form crisp
reducers returned as degenerate intervals.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ParameterError, UndefinedCentroidError

__all__ = [
    "TRInterval",
    "WeightedDomain",
    "BMMWeights",
    "WMBounds",
    "centroid_exact",
    "km",
    "ekm",
    "wekm",
    "twekm",
    "eiasc",
    "wm",
    "wm_bounds",
    "bmm",
    "lbmm",
    "nt",
    "crisp",
    "ALGORITHMS",
    "reduce_domain",
]

_INTERVAL_SLACK = 1e-9


class _TRIntervalFields(NamedTuple):
    y_l: float
    y_r: float


class TRInterval(_TRIntervalFields):
    """A type-reduced output interval (y_l, y_r)."""

    __slots__ = ()

    def __new__(cls, y_l, y_r):
        if y_l > y_r + _INTERVAL_SLACK:
            raise ParameterError(f"interval endpoints out of order: {y_l} > {y_r}")
        return super().__new__(cls, float(y_l), float(y_r))


class WMBounds(NamedTuple):
    """Wu-Mendel uncertainty bounds: outer/inner pairs bracketing the centroid."""

    outer_l: float
    inner_l: float
    inner_r: float
    outer_r: float


@dataclass(frozen=True)
class BMMWeights:
    """Mixing weights for the BMM/LBMM crisp reducers."""

    m: float = 0.5
    n: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.m <= 1.0 and 0.0 <= self.n <= 1.0):
            raise ParameterError(f"BMM weights must lie in [0, 1], got {self}")


class WeightedDomain:
    """Sample points with interval weights, sorted by abscissa.

    Invariant: 0 <= w_lower[i] <= w_upper[i] for all i. Reduction additionally
    needs at least one positive upper weight; reducers raise
    :class:`UndefinedCentroidError` otherwise.
    """

    __slots__ = ("x", "w_lower", "w_upper")

    def __init__(self, x, w_lower, w_upper):
        x = np.asarray(x, dtype=float)
        wl = np.asarray(w_lower, dtype=float)
        wu = np.asarray(w_upper, dtype=float)
        if not (x.shape == wl.shape == wu.shape) or x.ndim != 1 or x.size == 0:
            raise ParameterError("x, w_lower, w_upper must be equal-length 1-d arrays")
        if not (np.isfinite(x).all() and np.isfinite(wl).all() and np.isfinite(wu).all()):
            raise ParameterError("weighted domain entries must be finite")
        if (wl < 0).any():
            raise ParameterError("lower weights must be non-negative")
        if (wl > wu + 1e-12).any():
            raise ParameterError("lower weights must not exceed upper weights")
        wl = np.minimum(wl, wu)
        order = np.argsort(x, kind="stable")
        x, wl, wu = x[order].copy(), wl[order].copy(), wu[order].copy()
        for arr in (x, wl, wu):
            arr.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "w_lower", wl)
        object.__setattr__(self, "w_upper", wu)

    def __setattr__(self, name, value):
        raise AttributeError("WeightedDomain is immutable")

    def __len__(self):
        return self.x.size


def _support(d):
    """Drop points whose upper weight is zero; they are inert in every
    switch configuration (w_lower <= w_upper forces their lower weight to 0
    as well), so no candidate centroid changes."""
    keep = d.w_upper > 0.0
    if not keep.any():
        raise UndefinedCentroidError("all upper weights are zero")
    return d.x[keep], d.w_lower[keep], d.w_upper[keep]


def _prefix_sums(x, wl, wu):
    """Leading-zero prefix sums used by all switch-point computations.

    P*[k] = sum over the first k points, for k in 0..N.
    """
    z = np.zeros(1)
    pu = np.concatenate([z, np.cumsum(wu)])
    pxu = np.concatenate([z, np.cumsum(x * wu)])
    pl = np.concatenate([z, np.cumsum(wl)])
    pxl = np.concatenate([z, np.cumsum(x * wl)])
    return pu, pxu, pl, pxl


def _left_candidate(k, pu, pxu, pl, pxl):
    """Centroid with the first k points on upper weights, the rest on lower."""
    num = pxu[k] + (pxl[-1] - pxl[k])
    den = pu[k] + (pl[-1] - pl[k])
    return num, den


def _right_candidate(k, pu, pxu, pl, pxl):
    """Centroid with the first k points on lower weights, the rest on upper."""
    num = pxl[k] + (pxu[-1] - pxu[k])
    den = pl[k] + (pu[-1] - pu[k])
    return num, den


def centroid_exact(d):
    """Exhaustive switch-point centroid interval (the reference the KM family
    must reproduce). Examines every split index k in 0..N for both endpoints.
    """
    x, wl, wu = _support(d)
    pu, pxu, pl, pxl = _prefix_sums(x, wl, wu)
    k = np.arange(x.size + 1)
    num_l, den_l = _left_candidate(k, pu, pxu, pl, pxl)
    num_r, den_r = _right_candidate(k, pu, pxu, pl, pxl)
    with np.errstate(divide="ignore", invalid="ignore"):
        cand_l = np.where(den_l > 0, num_l / np.where(den_l > 0, den_l, 1.0), np.inf)
        cand_r = np.where(den_r > 0, num_r / np.where(den_r > 0, den_r, 1.0), -np.inf)
    return TRInterval(cand_l.min(), cand_r.max())


def _km_side(x, wl, wu, right):
    """Karnik-Mendel alternating iteration for one interval endpoint."""
    n = x.size
    if n == 1:
        return float(x[0])
    pu, pxu, pl, pxl = _prefix_sums(x, wl, wu)
    w = 0.5 * (wl + wu)
    y = float(np.dot(x, w) / w.sum())
    prev_k = -1
    for _ in range(n + 2):
        if right:
            k = int(np.searchsorted(x, y, side="left"))
            num, den = _right_candidate(k, pu, pxu, pl, pxl)
        else:
            k = int(np.searchsorted(x, y, side="right"))
            num, den = _left_candidate(k, pu, pxu, pl, pxl)
        if den <= 0:
            raise ConvergenceError("zero-mass switch configuration in KM iteration")
        y_new = num / den
        if k == prev_k or y_new == y:
            return y_new
        prev_k, y = k, y_new
    raise ConvergenceError("KM iteration did not settle")


def km(d):
    """Karnik-Mendel algorithm: alternating switch-point projection."""
    x, wl, wu = _support(d)
    return TRInterval(_km_side(x, wl, wu, right=False), _km_side(x, wl, wu, right=True))


def _ekm_side(x, wl, wu, right, k0):
    """EKM-style iteration: start from a heuristic switch index, then move the
    switch point with incremental (prefix-difference) sum updates."""
    n = x.size
    if n == 1:
        return float(x[0])
    pu, pxu, pl, pxl = _prefix_sums(x, wl, wu)
    candidate = _right_candidate if right else _left_candidate
    k = min(max(int(k0), 1), n - 1)
    num, den = candidate(k, pu, pxu, pl, pxl)
    if den <= 0:
        # degenerate start (no mass in the configuration); fall back to the
        # mean-weight initial guess, which always has mass
        w = 0.5 * (wl + wu)
        y = float(np.dot(x, w) / w.sum())
    else:
        y = num / den
    for _ in range(n + 2):
        k_new = int(np.searchsorted(x, y, side="left" if right else "right"))
        if k_new == k:
            return y
        # incremental update: only the points between the old and new switch
        # index change blocks, so adjust the running sums by prefix deltas
        num, den = candidate(k_new, pu, pxu, pl, pxl)
        if den <= 0:
            raise ConvergenceError("zero-mass switch configuration in EKM iteration")
        y_new = num / den
        if y_new == y:
            return y
        k, y = k_new, y_new
    raise ConvergenceError("EKM iteration did not settle")


def ekm(d):
    """Enhanced KM: heuristic initial switch points at n/2.4 and n/1.7."""
    x, wl, wu = _support(d)
    n = x.size
    return TRInterval(
        _ekm_side(x, wl, wu, right=False, k0=round(n / 2.4)),
        _ekm_side(x, wl, wu, right=True, k0=round(n / 1.7)),
    )


def _quadrature_init(x, wl, wu, q):
    """Quadrature-weighted mean-weight guess used to seed WEKM/TWEKM."""
    w = q * 0.5 * (wl + wu)
    total = w.sum()
    if total <= 0:
        w = 0.5 * (wl + wu)
        total = w.sum()
    return float(np.dot(x, w) / total)


def wekm(d, quadrature=None):
    """Weighted EKM: EKM iteration seeded from a quadrature-weighted guess.

    The quadrature weights shape only the initial switch points (the fixed
    point itself is the exact centroid, shared by the whole KM family).
    Defaults to trapezoidal weights; pass any positive vector to override.
    """
    x, wl, wu = _support(d)
    n = x.size
    if quadrature is None:
        q = _trapezoid_weights(n)
    else:
        q = np.asarray(quadrature, dtype=float)
        if q.shape != d.x.shape:
            raise ParameterError("quadrature weights must match the domain length")
        if (q <= 0).any():
            raise ParameterError("quadrature weights must be positive")
        q = q[d.w_upper > 0.0]
    y0 = _quadrature_init(x, wl, wu, q)
    k0_l = int(np.searchsorted(x, y0, side="right"))
    k0_r = int(np.searchsorted(x, y0, side="left"))
    return TRInterval(
        _ekm_side(x, wl, wu, right=False, k0=k0_l),
        _ekm_side(x, wl, wu, right=True, k0=k0_r),
    )


def _trapezoid_weights(n):
    q = np.ones(n)
    if n > 1:
        q[0] = 0.5
        q[-1] = 0.5
    return q


def twekm(d):
    """Trapezoidal WEKM: WEKM with endpoint weights 0.5 and 1 elsewhere."""
    return wekm(d, quadrature=None)


def eiasc(d):
    """Enhanced IASC: linear sweeps that accumulate weight from each boundary
    until the running centroid crosses the current sample point."""
    x, wl, wu = _support(d)
    n = x.size
    if n == 1:
        v = float(x[0])
        return TRInterval(v, v)

    # left endpoint: grow the upper-weight block from the left
    a = float(np.dot(x, wl))
    b = float(wl.sum())
    y_l = x[0]
    for i in range(n):
        delta = wu[i] - wl[i]
        a += x[i] * delta
        b += delta
        y_l = a / b
        if i == n - 1 or y_l <= x[i + 1]:
            break

    # right endpoint: grow the upper-weight block from the right
    a = float(np.dot(x, wl))
    b = float(wl.sum())
    y_r = x[-1]
    for i in range(n - 1, -1, -1):
        delta = wu[i] - wl[i]
        a += x[i] * delta
        b += delta
        y_r = a / b
        if i == 0 or y_r >= x[i - 1]:
            break

    return TRInterval(y_l, y_r)


def wm_bounds(d):
    """Wu-Mendel uncertainty bounds around the exact centroid interval.

    The inner bounds are the centroids of the lower/upper weight vectors; the
    outer bounds subtract/add correction terms built from the weight gap and
    the distances to the domain endpoints.
    """
    x, wl, wu = d.x, d.w_lower, d.w_upper
    sum_u = float(wu.sum())
    if sum_u <= 0:
        raise UndefinedCentroidError("all upper weights are zero")
    sum_l = float(wl.sum())
    c_up = float(np.dot(x, wu) / sum_u)
    if sum_l <= 0:
        # no lower mass: the inner estimate collapses to the upper centroid
        # and the outer bounds widen to the whole domain span
        return WMBounds(float(x[0]), c_up, c_up, float(x[-1]))
    c_lo = float(np.dot(x, wl) / sum_l)
    inner_l = min(c_lo, c_up)
    inner_r = max(c_lo, c_up)

    gap = float((wu - wl).sum())
    left_mass = float(np.dot(wl, x - x[0]))
    right_mass = float(np.dot(wu, x[-1] - x))
    scale = gap / (sum_u * sum_l)
    den_l = left_mass + right_mass
    delta_l = scale * (left_mass * right_mass) / den_l if den_l > 0 else 0.0
    # mirrored roles of the two distance sums for the right-hand correction
    left_mass_r = float(np.dot(wu, x - x[0]))
    right_mass_r = float(np.dot(wl, x[-1] - x))
    den_r = left_mass_r + right_mass_r
    delta_r = scale * (left_mass_r * right_mass_r) / den_r if den_r > 0 else 0.0
    return WMBounds(inner_l - delta_l, inner_l, inner_r, inner_r + delta_r)


def wm(d):
    """Wu-Mendel reducer: midpoints of the uncertainty-bound pairs."""
    b = wm_bounds(d)
    return TRInterval(0.5 * (b.outer_l + b.inner_l), 0.5 * (b.inner_r + b.outer_r))


def _centroid(x, w, label):
    total = float(w.sum())
    if total <= 0:
        raise UndefinedCentroidError(f"all {label} weights are zero")
    return float(np.dot(x, w) / total)


def bmm(d, weights=None):
    """Begian-Melek-Mendel: m * centroid(lower) + n * centroid(upper)."""
    w = weights or BMMWeights()
    y = w.m * _centroid(d.x, d.w_lower, "lower") + w.n * _centroid(d.x, d.w_upper, "upper")
    return TRInterval(y, y)


LBMM_DEFAULT = BMMWeights(0.5, 0.5)


def lbmm(d, weights=None):
    """Li et al. variant of BMM; same form, independently configurable weights."""
    return bmm(d, weights or LBMM_DEFAULT)


def nt(d):
    """Nie-Tan: centroid of the averaged envelopes."""
    w = d.w_lower + d.w_upper
    y = _centroid(d.x, w, "combined")
    return TRInterval(y, y)


def crisp(interval):
    """Crisp defuzzified value: the interval midpoint."""
    y_l, y_r = interval
    return 0.5 * (float(y_l) + float(y_r))


ALGORITHMS = {
    "KM": km,
    "EKM": ekm,
    "WEKM": wekm,
    "TWEKM": twekm,
    "EIASC": eiasc,
    "WM": wm,
    "BMM": bmm,
    "LBMM": lbmm,
    "NT": nt,
}


def reduce_domain(d, algorithm="KM", algorithm_params=None):
    """Reduce a domain with a named algorithm (Table-style selector strings).

    ``algorithm_params`` currently only carries :class:`BMMWeights` for the
    BMM/LBMM reducers; other algorithms take no parameters.
    """
    try:
        fn = ALGORITHMS[algorithm]
    except KeyError:
        raise ParameterError(
            f"unknown type-reduction algorithm {algorithm!r}; "
            f"expected one of {sorted(ALGORITHMS)}"
        ) from None
    if algorithm in ("BMM", "LBMM"):
        return fn(d, weights=algorithm_params)
    return fn(d)
