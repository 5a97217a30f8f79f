"""Exception types shared across the library."""


class ParameterError(ValueError):
    """A membership function or constructor received invalid parameters."""


class GridMismatchError(ValueError):
    """Two sets (or a set and a system) do not share the same universe grid."""


class FouConstraintError(ValueError):
    """Lower envelope exceeds upper envelope somewhere on the grid."""


class UndefinedCentroidError(ValueError):
    """Type reduction requested on a domain with no positive upper weight."""


class ConvergenceError(RuntimeError):
    """An iterative type-reduction routine failed to settle (should not happen)."""


class NoRuleFiredError(RuntimeError):
    """System evaluation found no rule with a positive upper firing degree."""
