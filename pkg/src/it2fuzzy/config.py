"""Declarative configuration: fuzzy-system definitions and run settings.

The format is flat INI-style key/value text with section headers. A system
file looks like::

    [system]
    domain = 0.0, 1.0
    points = 100
    inputs = x1, x2
    outputs = y1, y2

    [sets]
    Small = gaussian_uncert_std, 0.0, 0.15, 0.1
    Wide = it2fs, trapezoid, 0:0.4:0.6:1:1, tri, 0.25:0.5:0.75:0.6

    [rules]
    r1 = x1:Small, x2:Small -> y1:Small, y2:Large

Set entries name a constructor followed by its parameters. Constructors:
``gaussian_uncert_mean`` and ``gaussian_uncert_std`` take three numbers;
``it2fs`` takes an upper membership-function name, its colon-separated
parameters, then the lower name and parameters (names as registered in
:data:`it2fuzzy.membership.MF_REGISTRY`).
"""

import configparser

from .errors import ParameterError
from .inference import FuzzySystem
from .sets import (
    Grid,
    gaussian_uncert_mean_set,
    gaussian_uncert_std_set,
    make_it2fs,
)

__all__ = ["load_system", "parse_system", "load_run_options"]


def _floats(text, sep=","):
    return [float(tok) for tok in text.split(sep) if tok.strip()]


def _build_set(grid, spec):
    tokens = [tok.strip() for tok in spec.split(",") if tok.strip()]
    if not tokens:
        raise ParameterError("empty set definition")
    kind, rest = tokens[0], tokens[1:]
    if kind == "gaussian_uncert_mean":
        return gaussian_uncert_mean_set(grid, [float(v) for v in rest])
    if kind == "gaussian_uncert_std":
        return gaussian_uncert_std_set(grid, [float(v) for v in rest])
    if kind == "it2fs":
        if len(rest) != 4:
            raise ParameterError(
                "it2fs constructor needs: umf_name, umf_params, lmf_name, lmf_params"
            )
        umf_name, umf_params, lmf_name, lmf_params = rest
        return make_it2fs(
            grid, umf_name, _floats(umf_params, ":"), lmf_name, _floats(lmf_params, ":")
        )
    raise ParameterError(f"unknown set constructor {kind!r}")


def _parse_rule(text):
    if "->" not in text:
        raise ParameterError(f"rule is missing '->': {text!r}")
    lhs, rhs = text.split("->", 1)

    def pairs(side):
        out = []
        for item in side.split(","):
            item = item.strip()
            if not item:
                continue
            if ":" not in item:
                raise ParameterError(f"rule term must be variable:set, got {item!r}")
            var, fs = item.split(":", 1)
            out.append((var.strip(), fs.strip()))
        return out

    return pairs(lhs), pairs(rhs)


def parse_system(parser):
    """Build a FuzzySystem from a parsed config object.

    Returns (system, sets) where ``sets`` maps the defined set names to their
    IT2FS instances (useful for exporting them alongside evaluation results).
    """
    if "system" not in parser:
        raise ParameterError("config needs a [system] section")
    section = parser["system"]
    domain = _floats(section.get("domain", "0, 1"))
    if len(domain) != 2:
        raise ParameterError("domain must be 'lo, hi'")
    points = section.getint("points", 100)
    grid = Grid.uniform(domain[0], domain[1], points)

    sets = {}
    for name, spec in parser.items("sets") if parser.has_section("sets") else []:
        sets[name] = _build_set(grid, spec)

    system = FuzzySystem(grid)
    for name in section.get("inputs", "").split(","):
        if name.strip():
            system.add_input(name.strip())
    for name in section.get("outputs", "").split(","):
        if name.strip():
            system.add_output(name.strip())

    def resolve(side):
        out = []
        for var, set_name in side:
            if set_name not in sets:
                raise ParameterError(f"rule references undefined set {set_name!r}")
            out.append((var, sets[set_name]))
        return out

    for _, text in parser.items("rules") if parser.has_section("rules") else []:
        lhs, rhs = _parse_rule(text)
        system.add_rule(resolve(lhs), resolve(rhs))
    return system, sets


def _make_parser():
    # option names are case-sensitive so set names keep their capitalization
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    return parser


def load_system(path):
    """Load a fuzzy-system definition from an INI-style file."""
    parser = _make_parser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    return parse_system(parser)


def load_run_options(path):
    """Read a [run] section of flag defaults: returns a plain str->str dict."""
    parser = _make_parser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if not parser.has_section("run"):
        return {}
    return dict(parser.items("run"))
