"""Rule-base engine for interval type-2 fuzzy systems.

A :class:`FuzzySystem` owns a grid, named input/output registries and a list
of rules. Building (``add_*``) is a single-threaded phase; once built the
system is immutable in practice and :meth:`FuzzySystem.evaluate` is pure, so
concurrent evaluations over a shared system are safe.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, NoRuleFiredError, ParameterError
from .sets import IT2FS, max_s_norm, min_t_norm
from .typereduce import TRInterval, WeightedDomain, crisp, reduce_domain

__all__ = ["Rule", "FuzzySystem", "EvalResult", "firing_interval", "METHODS"]

METHODS = ("Centroid", "CoSet", "CoSum", "Height", "ModiHe")


@dataclass(frozen=True)
class Rule:
    """One fuzzy rule: antecedent and consequent as (variable, set) pairs."""

    antecedent: tuple
    consequent: tuple


@dataclass
class EvalResult:
    """Evaluation output: one type-reduced interval per output variable.

    ``aggregated`` carries the combined output sets for the methods that
    construct them (Centroid, CoSum); it is None for the others.
    """

    intervals: dict
    aggregated: dict | None = None

    def crisp(self):
        return {name: crisp(iv) for name, iv in self.intervals.items()}


def _fold(norm, values):
    acc = values[0]
    for v in values[1:]:
        acc = norm(acc, v)
    return acc


def firing_interval(rule, values, t_norm=min_t_norm):
    """Lower/upper firing degree of a rule at crisp input values.

    Memberships are read from the sampled envelopes by linear interpolation
    and folded across the antecedent with the t-norm.
    """
    lows, ups = [], []
    for name, fs in rule.antecedent:
        lo, up = fs.membership_at(values[name])
        lows.append(lo)
        ups.append(up)
    one = np.ones(1)
    f_lo = float(_fold(t_norm, [lo * one for lo in lows])[0])
    f_up = float(_fold(t_norm, [up * one for up in ups])[0])
    return f_lo, f_up


class FuzzySystem:
    """Named inputs/outputs plus a rule base over a shared grid."""

    def __init__(self, grid):
        self.grid = grid
        self.inputs = []
        self.outputs = []
        self.rules = []

    def add_input(self, name):
        self._register(self.inputs, name, "input")
        return self

    def add_output(self, name):
        self._register(self.outputs, name, "output")
        return self

    def _register(self, registry, name, kind):
        if not isinstance(name, str) or not name:
            raise ParameterError(f"{kind} name must be a non-empty string")
        if name in self.inputs or name in self.outputs:
            raise ParameterError(f"variable name {name!r} already registered")
        registry.append(name)

    def add_rule(self, antecedent, consequent):
        """Append a rule given [(input, set), ...] and [(output, set), ...]."""
        antecedent = tuple(antecedent)
        consequent = tuple(consequent)
        if not antecedent or not consequent:
            raise ParameterError("rule antecedent and consequent must be non-empty")
        for name, fs in antecedent:
            if name not in self.inputs:
                raise ParameterError(f"rule references unregistered input {name!r}")
            self._check_set(fs)
        for name, fs in consequent:
            if name not in self.outputs:
                raise ParameterError(f"rule references unregistered output {name!r}")
            self._check_set(fs)
        self.rules.append(Rule(antecedent, consequent))
        return self

    def _check_set(self, fs):
        if not isinstance(fs, IT2FS):
            raise ParameterError("rules must attach IT2FS instances to variables")
        if not self.grid.compatible(fs.grid):
            raise GridMismatchError("rule set lives on a different grid than the system")

    def copy(self):
        """Deep, independent copy; the (immutable) grid and sets are shared."""
        clone = FuzzySystem(self.grid)
        clone.inputs = list(self.inputs)
        clone.outputs = list(self.outputs)
        clone.rules = list(self.rules)
        return clone

    # -- evaluation ---------------------------------------------------------

    def evaluate(
        self,
        values,
        t_norm=min_t_norm,
        s_norm=max_s_norm,
        method="Centroid",
        algorithm="KM",
        algorithm_params=None,
        no_fire_fallback=None,
    ):
        """Evaluate the system at crisp inputs and type-reduce every output.

        ``values`` maps every registered input name to a crisp value inside
        the grid span. ``method`` selects how rule firings combine into a
        reducible domain; ``algorithm`` picks the type-reduction algorithm
        applied to it. When no rule fires for an output the default is to
        raise :class:`NoRuleFiredError`; passing ``no_fire_fallback`` (a
        crisp value, or a dict per output) substitutes a degenerate interval
        instead, which control loops use to hold their previous output.
        """
        missing = [n for n in self.inputs if n not in values]
        if missing:
            raise ParameterError(f"missing values for inputs: {missing}")
        unknown = [n for n in values if n not in self.inputs]
        if unknown:
            raise ParameterError(f"values given for unknown inputs: {unknown}")
        if method not in METHODS:
            raise ParameterError(
                f"unknown type-reduction method {method!r}; expected one of {METHODS}"
            )
        if not self.rules:
            raise NoRuleFiredError("system has no rules")

        firings = [firing_interval(r, values, t_norm) for r in self.rules]
        cons_maps = [dict(r.consequent) for r in self.rules]

        intervals = {}
        aggregated = {} if method in ("Centroid", "CoSum") else None
        for out in self.outputs:
            fired = [
                (f, cons[out])
                for cons, f in zip(cons_maps, firings)
                if out in cons
            ]
            live = [(f, fs) for f, fs in fired if f[1] > 0.0]
            if not live:
                fb = self._fallback_for(out, no_fire_fallback)
                if fb is None:
                    raise NoRuleFiredError(
                        f"no rule fired for output {out!r} (all upper firings zero)"
                    )
                intervals[out] = TRInterval(fb, fb)
                continue
            if method == "Centroid":
                agg = self._aggregate_norm(live, t_norm, s_norm)
                aggregated[out] = agg
                intervals[out] = self._reduce_set(agg, algorithm, algorithm_params)
            elif method == "CoSum":
                agg = self._aggregate_sum(live)
                aggregated[out] = agg
                intervals[out] = self._reduce_set(agg, algorithm, algorithm_params)
            elif method == "CoSet":
                intervals[out] = self._center_of_sets(live, algorithm, algorithm_params)
            else:  # Height / ModiHe
                intervals[out] = self._height_reduce(
                    live, algorithm, algorithm_params, modified=(method == "ModiHe")
                )
        return EvalResult(intervals=intervals, aggregated=aggregated)

    @staticmethod
    def _fallback_for(out, no_fire_fallback):
        if no_fire_fallback is None:
            return None
        if isinstance(no_fire_fallback, dict):
            return no_fire_fallback.get(out)
        return float(no_fire_fallback)

    def _aggregate_norm(self, live, t_norm, s_norm):
        n = len(self.grid)
        lowers, uppers = [], []
        for (f_lo, f_up), fs in live:
            lowers.append(t_norm(np.full(n, f_lo), fs.lower))
            uppers.append(t_norm(np.full(n, f_up), fs.upper))
        return IT2FS(self.grid, _fold(s_norm, lowers), _fold(s_norm, uppers))

    def _aggregate_sum(self, live):
        n = len(self.grid)
        lower = np.zeros(n)
        upper = np.zeros(n)
        for (f_lo, f_up), fs in live:
            lower += f_lo * fs.lower
            upper += f_up * fs.upper
        return IT2FS(self.grid, np.clip(lower, 0.0, 1.0), np.clip(upper, 0.0, 1.0))

    def _reduce_set(self, agg, algorithm, algorithm_params):
        domain = WeightedDomain(self.grid.points, agg.lower, agg.upper)
        return reduce_domain(domain, algorithm, algorithm_params)

    def _center_of_sets(self, live, algorithm, algorithm_params):
        # per-consequent centroid intervals, then an interval weighted average
        # computed with the same algorithm over the centroid endpoints
        c_l, c_r, f_lo, f_up = [], [], [], []
        for (lo, up), fs in live:
            ci = self._reduce_set(fs, algorithm, algorithm_params)
            c_l.append(ci.y_l)
            c_r.append(ci.y_r)
            f_lo.append(lo)
            f_up.append(up)
        left = reduce_domain(
            WeightedDomain(c_l, f_lo, f_up), algorithm, algorithm_params
        )
        right = reduce_domain(
            WeightedDomain(c_r, f_lo, f_up), algorithm, algorithm_params
        )
        return TRInterval(left.y_l, right.y_r)

    def _height_reduce(self, live, algorithm, algorithm_params, modified):
        peaks, f_lo, f_up = [], [], []
        x = self.grid.points
        for (lo, up), fs in live:
            top = fs.upper.max()
            plateau = np.flatnonzero(fs.upper >= top)
            peak = 0.5 * (x[plateau[0]] + x[plateau[-1]])
            weight = 1.0
            if modified:
                spread2 = _envelope_variance(x, fs.upper)
                if spread2 <= 0:
                    raise ParameterError(
                        "ModiHe needs consequents with positive spread"
                    )
                weight = 1.0 / spread2
            peaks.append(peak)
            f_lo.append(lo * weight)
            f_up.append(up * weight)
        domain = WeightedDomain(peaks, f_lo, f_up)
        return reduce_domain(domain, algorithm, algorithm_params)


def _envelope_variance(x, env):
    total = env.sum()
    if total <= 0:
        return 0.0
    mean = float(np.dot(x, env) / total)
    return float(np.dot(env, (x - mean) ** 2) / total)
