"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parse errors (2), precondition
violations (3), numeric/convergence failures (5).  Identity-check
failures are reported through result objects, not exceptions.
"""


class F1ZetaError(Exception):
    """Base class for all library errors."""


class ParseError(F1ZetaError):
    """Malformed input file or expression."""


class PreconditionError(F1ZetaError):
    """An operation was called outside its stated domain."""


class SingularityError(PreconditionError):
    """Evaluation requested at a pole or essential singularity."""


class ConvergenceError(F1ZetaError):
    """A numeric routine could not meet its error target."""
