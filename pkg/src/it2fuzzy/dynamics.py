"""Experimental plants, the fuzzy PID loop, and performance metrics.

Covers the two dynamic benchmarks: the Mackey-Glass delay differential
equation (chaotic series prediction) and a first-order-plus-dead-time plant
under an interval type-2 fuzzy PID controller, plus the step-response
metrics used to compare type-reduction algorithms.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .inference import FuzzySystem
from .sets import Grid, gaussian_uncert_std_set, max_s_norm, min_t_norm
from .typereduce import crisp

__all__ = [
    "MackeyGlassParams",
    "PlantParams",
    "ScalingFactors",
    "SimTrace",
    "PerfReport",
    "simulate_mackey_glass",
    "sample_series",
    "make_predictor_system",
    "PREDICTOR_PARAM_COUNT",
    "default_predictor_grid",
    "prediction_mse",
    "simulate_fopdt_step",
    "FopdtPlant",
    "make_pid_system",
    "PID_RULE_TABLE",
    "IT2FPIDController",
    "simulate_closed_loop",
    "performance",
]


def _check_divides(small, big, what):
    if big > 0:
        ratio = big / small
        if abs(ratio - round(ratio)) > 1e-9:
            raise ParameterError(f"dt must divide {what} (got dt={small}, {what}={big})")


# -- traces ------------------------------------------------------------------


@dataclass
class SimTrace:
    """Uniformly sampled named signals from one simulation run."""

    t: np.ndarray
    signals: dict

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.signals = {k: np.asarray(v, dtype=float) for k, v in self.signals.items()}
        for name, col in self.signals.items():
            if col.shape != self.t.shape:
                raise ParameterError(f"signal {name!r} length differs from time base")

    @property
    def dt(self):
        return float(self.t[1] - self.t[0])

    def column_names(self):
        return ["t", *self.signals.keys()]

    def rows(self):
        cols = [self.t, *self.signals.values()]
        return np.column_stack(cols)


@dataclass
class PerfReport:
    """Step-response metrics: settling time (s), overshoot (%), ITAE."""

    settling_time: float
    overshoot: float
    itae: float
    settled: bool = True


# -- Mackey-Glass -------------------------------------------------------------


@dataclass
class MackeyGlassParams:
    """Delay differential equation dx/dt = beta*x_tau/(1 + x_tau^n) - gamma*x."""

    beta: float = 2.0
    gamma: float = 1.0
    tau: float = 2.0
    n: float = 9.65
    dt: float = 0.05
    history: float | np.ndarray = 1.2  # constant, or samples on [-tau, 0]

    def __post_init__(self):
        for name in ("beta", "gamma", "tau", "n", "dt"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be positive")
        _check_divides(self.dt, self.tau, "tau")


def simulate_mackey_glass(params, t_end):
    """Integrate the delay equation with fixed-step RK4.

    The delayed state is read from the stored trajectory; the half-step RK
    stages use linear interpolation between the two bracketing samples.
    Returns a trace of x(t) for t in [0, t_end].
    """
    if t_end <= 0:
        raise ParameterError("t_end must be positive")
    p = params
    delay_steps = round(p.tau / p.dt)
    n_steps = math.ceil(t_end / p.dt - 1e-12)

    xs = np.empty(delay_steps + n_steps + 1)
    if np.isscalar(p.history):
        xs[: delay_steps + 1] = float(p.history)
    else:
        hist = np.asarray(p.history, dtype=float)
        if hist.size != delay_steps + 1:
            raise ParameterError(
                f"history must hold {delay_steps + 1} samples on [-tau, 0]"
            )
        xs[: delay_steps + 1] = hist

    def deriv(x, x_tau):
        return p.beta * x_tau / (1.0 + x_tau**p.n) - p.gamma * x

    for i in range(delay_steps, delay_steps + n_steps):
        x = xs[i]
        tau_0 = xs[i - delay_steps]  # delayed value at t
        tau_1 = xs[i - delay_steps + 1]  # delayed value at t + dt
        tau_h = 0.5 * (tau_0 + tau_1)
        k1 = deriv(x, tau_0)
        k2 = deriv(x + 0.5 * p.dt * k1, tau_h)
        k3 = deriv(x + 0.5 * p.dt * k2, tau_h)
        k4 = deriv(x + p.dt * k3, tau_1)
        xs[i + 1] = x + (p.dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

    t = np.arange(n_steps + 1) * p.dt
    return SimTrace(t=t, signals={"x": xs[delay_steps:]})


def sample_series(trace, every):
    """Pick every ``every``-th sample of the x signal (prediction series)."""
    return trace.signals["x"][::every].copy()


# -- Mackey-Glass predictor system --------------------------------------------

PREDICTOR_SET_COUNT = 12  # three sets for each of A, B, C inputs and O output
PREDICTOR_PARAM_COUNT = PREDICTOR_SET_COUNT * 3
_PREDICTOR_STD_MIN = 0.01
_PREDICTOR_STD_MAX = 1.0


def default_predictor_grid(n=100):
    """Universe of discourse covering the series range of the default equation."""
    return Grid.uniform(0.0, 1.5, n)


def make_predictor_system(params, grid=None):
    """Three-input, one-output predictor with a diagonal three-rule base.

    ``params`` is a flat vector of 36 reals: for each of the 12 sets (A1..A3,
    B1..B3, C1..C3, O1..O3 in order) a (mean, std_center, std_spread) triple.
    Stds are clamped so every decoded vector yields a valid system; that
    keeps optimizer search boxes simple.
    """
    params = np.asarray(params, dtype=float)
    if params.shape != (PREDICTOR_PARAM_COUNT,):
        raise ParameterError(
            f"predictor parameter vector must have length {PREDICTOR_PARAM_COUNT}"
        )
    grid = grid or default_predictor_grid()
    sets = []
    for j in range(PREDICTOR_SET_COUNT):
        mean, std_center, std_spread = params[3 * j : 3 * j + 3]
        std_center = float(np.clip(std_center, _PREDICTOR_STD_MIN, _PREDICTOR_STD_MAX))
        # keep both effective stds inside [std_min, std_max]
        max_spread = 2.0 * min(
            std_center - _PREDICTOR_STD_MIN, _PREDICTOR_STD_MAX - std_center
        )
        std_spread = float(np.clip(std_spread, 0.0, max_spread))
        sets.append(gaussian_uncert_std_set(grid, [mean, std_center, std_spread]))

    sys = FuzzySystem(grid)
    for name in ("A", "B", "C"):
        sys.add_input(name)
    sys.add_output("O")
    a, b, c, o = sets[0:3], sets[3:6], sets[6:9], sets[9:12]
    for i in range(3):
        sys.add_rule(
            [("A", a[i]), ("B", b[i]), ("C", c[i])],
            [("O", o[i])],
        )
    return sys


def prediction_mse(
    system,
    series,
    window,
    method="Centroid",
    algorithm="KM",
    no_fire_penalty=None,
):
    """Mean squared one-step-ahead prediction error over an index window.

    For each t in ``window`` the inputs are series[t-2], series[t-1],
    series[t] and the target is series[t+1]. Inputs are clamped to the grid
    span. A sample where no rule fires contributes the squared error against
    the series mean (or ``no_fire_penalty`` if given) so degenerate set
    collapse is never rewarded.
    """
    series = np.asarray(series, dtype=float)
    window = list(window)
    if not window:
        raise ParameterError("empty prediction window")
    if min(window) < 2 or max(window) + 1 >= series.size:
        raise ParameterError("window must leave room for 3 lags and 1 target")
    lo, hi = system.grid.span
    fallback_target = float(series.mean()) if no_fire_penalty is None else no_fire_penalty

    total = 0.0
    for t in window:
        vals = {
            "A": float(np.clip(series[t - 2], lo, hi)),
            "B": float(np.clip(series[t - 1], lo, hi)),
            "C": float(np.clip(series[t], lo, hi)),
        }
        result = system.evaluate(
            vals,
            t_norm=min_t_norm,
            s_norm=max_s_norm,
            method=method,
            algorithm=algorithm,
            no_fire_fallback=fallback_target,
        )
        pred = crisp(result.intervals["O"])
        total += (pred - series[t + 1]) ** 2
    return total / len(window)


def predict_series(system, series, window, method="Centroid", algorithm="KM"):
    """One-step-ahead predictions over a window; returns (targets, predictions)."""
    series = np.asarray(series, dtype=float)
    lo, hi = system.grid.span
    preds, actual = [], []
    fallback = float(series.mean())
    for t in window:
        vals = {
            "A": float(np.clip(series[t - 2], lo, hi)),
            "B": float(np.clip(series[t - 1], lo, hi)),
            "C": float(np.clip(series[t], lo, hi)),
        }
        result = system.evaluate(
            vals, method=method, algorithm=algorithm, no_fire_fallback=fallback
        )
        preds.append(crisp(result.intervals["O"]))
        actual.append(series[t + 1])
    return np.asarray(actual), np.asarray(preds)


# -- FOPDT plant ---------------------------------------------------------------


@dataclass
class PlantParams:
    """First-order lag with dead time: K / (T s + 1) * exp(-L s)."""

    K: float = 1.0
    T: float = 1.0
    L: float = 0.2

    def __post_init__(self):
        if self.T <= 0:
            raise ParameterError("time constant T must be positive")
        if self.L < 0:
            raise ParameterError("dead time L must be non-negative")


class FopdtPlant:
    """Exact zero-order-hold discretization of the lag plus an input delay line."""

    def __init__(self, params, dt):
        if dt <= 0:
            raise ParameterError("dt must be positive")
        _check_divides(dt, params.L, "dead time L")
        self.params = params
        self.dt = dt
        self.decay = math.exp(-dt / params.T)
        self.delay_steps = round(params.L / dt)
        self.reset()

    def reset(self, y0=0.0):
        self.y = float(y0)
        self._queue = [0.0] * self.delay_steps

    def step(self, u):
        """Advance one sample with held input u; returns the new output."""
        if self.delay_steps:
            self._queue.append(float(u))
            u_eff = self._queue.pop(0)
        else:
            u_eff = float(u)
        self.y = self.decay * self.y + (1.0 - self.decay) * self.params.K * u_eff
        return self.y


def simulate_fopdt_step(params, u, dt, t_end):
    """Open-loop response to an input sequence (array or callable of t)."""
    n_steps = math.ceil(t_end / dt - 1e-12)
    t = np.arange(n_steps + 1) * dt
    if callable(u):
        u_arr = np.array([float(u(tk)) for tk in t])
    else:
        u_arr = np.asarray(u, dtype=float)
        if u_arr.size < n_steps:
            raise ParameterError("input sequence shorter than the simulation")
    plant = FopdtPlant(params, dt)
    y = np.empty(n_steps + 1)
    y[0] = 0.0
    for k in range(n_steps):
        y[k + 1] = plant.step(u_arr[k])
    return SimTrace(t=t, signals={"u": u_arr[: n_steps + 1], "y": y})


# -- IT2FPID controller ---------------------------------------------------------


@dataclass
class ScalingFactors:
    """Controller gains: output scale Ka, integral scale Kb, input scales Ke, Kd."""

    Ka: float = 0.25
    Kb: float = 4.25
    Ke: float = 0.8
    Kd: float = 0.5


# rule table rows are the error-derivative terms, columns the error terms;
# the (de=P, e=Z) entry is NM as printed in the source table even though it
# breaks antisymmetry -- pass rule_pz="PM" to use the symmetric variant
PID_RULE_TABLE = {
    ("N", "N"): "NB",
    ("N", "Z"): "NM",
    ("N", "P"): "Z",
    ("Z", "N"): "NM",
    ("Z", "Z"): "Z",
    ("Z", "P"): "PM",
    ("P", "N"): "Z",
    ("P", "Z"): "NM",
    ("P", "P"): "PB",
}

# input sets N/Z/P and output sets NB/NM/Z/PM/PB on [-1, 1]; the shape
# parameters are calibrated constants of the experiment configuration
PID_INPUT_SETS = {"N": -1.0, "Z": 0.0, "P": 1.0}
PID_INPUT_STD = (0.5, 0.2)  # std_center, std_spread
PID_OUTPUT_SETS = {"NB": -1.0, "NM": -0.5, "Z": 0.0, "PM": 0.5, "PB": 1.0}
PID_OUTPUT_STD = (0.2, 0.1)


def make_pid_system(grid=None, rule_pz="NM"):
    """Two-input (e, de), one-output fuzzy system with the 9-rule PID table."""
    if rule_pz not in ("NM", "PM"):
        raise ParameterError("rule_pz must be 'NM' (as printed) or 'PM'")
    grid = grid or Grid.uniform(-1.0, 1.0, 100)
    inputs = {
        name: gaussian_uncert_std_set(grid, [center, *PID_INPUT_STD])
        for name, center in PID_INPUT_SETS.items()
    }
    outputs = {
        name: gaussian_uncert_std_set(grid, [center, *PID_OUTPUT_STD])
        for name, center in PID_OUTPUT_SETS.items()
    }
    sys = FuzzySystem(grid)
    sys.add_input("e")
    sys.add_input("de")
    sys.add_output("u")
    for (de_term, e_term), out_term in PID_RULE_TABLE.items():
        if (de_term, e_term) == ("P", "Z"):
            out_term = rule_pz
        sys.add_rule(
            [("e", inputs[e_term]), ("de", inputs[de_term])],
            [("u", outputs[out_term])],
        )
    return sys


class IT2FPIDController:
    """Fuzzy PI-style controller: u = Ka * psi + Kb * integral(psi).

    ``psi`` is the crisp fuzzy-system output driven by the clamped scaled
    error and error derivative. The derivative is a backward difference
    (zero on the first step); the integral is a forward rectangle sum. When
    no rule fires the previous psi is held.
    """

    def __init__(self, scaling, system, dt, method="Centroid", algorithm="KM",
                 algorithm_params=None):
        self.scaling = scaling
        self.system = system
        self.dt = dt
        self.method = method
        self.algorithm = algorithm
        self.algorithm_params = algorithm_params
        self.reset()

    def reset(self):
        self.prev_error = 0.0
        self.prev_psi = 0.0
        self.integral = 0.0
        self._first = True

    def step(self, error):
        sf = self.scaling
        de = 0.0 if self._first else (error - self.prev_error) / self.dt
        self._first = False
        e_s = float(np.clip(sf.Ke * error, -1.0, 1.0))
        de_s = float(np.clip(sf.Kd * de, -1.0, 1.0))
        result = self.system.evaluate(
            {"e": e_s, "de": de_s},
            method=self.method,
            algorithm=self.algorithm,
            algorithm_params=self.algorithm_params,
            no_fire_fallback=self.prev_psi,
        )
        psi = crisp(result.intervals["u"])
        self.integral += psi * self.dt
        self.prev_error = error
        self.prev_psi = psi
        return sf.Ka * psi + sf.Kb * self.integral


def simulate_closed_loop(
    plant_params,
    scaling,
    system,
    tr_algorithm="KM",
    dt=0.005,
    t_end=20.0,
    setpoint=1.0,
    method="Centroid",
    algorithm_params=None,
):
    """Unity-feedback step response of the plant under the fuzzy controller."""
    n_steps = math.ceil(t_end / dt - 1e-12)
    plant = FopdtPlant(plant_params, dt)
    controller = IT2FPIDController(
        scaling, system, dt, method=method, algorithm=tr_algorithm,
        algorithm_params=algorithm_params,
    )
    t = np.arange(n_steps + 1) * dt
    r = np.full(n_steps + 1, float(setpoint))
    e = np.zeros(n_steps + 1)
    u = np.zeros(n_steps + 1)
    y = np.zeros(n_steps + 1)
    for k in range(n_steps):
        e[k] = r[k] - y[k]
        u[k] = controller.step(e[k])
        y[k + 1] = plant.step(u[k])
    e[n_steps] = r[n_steps] - y[n_steps]
    u[n_steps] = u[n_steps - 1] if n_steps else 0.0
    return SimTrace(t=t, signals={"r": r, "e": e, "u": u, "y": y})


def performance(trace, setpoint, band=0.02):
    """Step-response metrics against a target value.

    Overshoot is measured against the setpoint as the final value; settling
    time is when the output last leaves the +/- band envelope; ITAE is the
    time-weighted absolute error sum. A never-settling trace reports the full
    duration with ``settled=False``.
    """
    if setpoint == 0:
        raise ParameterError("performance metrics need a nonzero setpoint")
    t = trace.t
    y = trace.signals["y"]
    dt = trace.dt
    overshoot = 100.0 * (float(y.max()) - setpoint) / setpoint
    err = setpoint - y
    itae = float(np.sum(t * np.abs(err)) * dt)
    outside = np.abs(err) > band * abs(setpoint)
    if not outside.any():
        return PerfReport(settling_time=0.0, overshoot=overshoot, itae=itae)
    last_out = int(np.flatnonzero(outside)[-1])
    if last_out == t.size - 1:
        return PerfReport(
            settling_time=float(t[-1]), overshoot=overshoot, itae=itae, settled=False
        )
    return PerfReport(
        settling_time=float(t[last_out + 1]), overshoot=overshoot, itae=itae
    )
