"""Exception types raised across the package."""


class NonadditiveError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExceeded(NonadditiveError):
    """An enumeration would produce more items than the configured budget."""

    def __init__(self, what, items, budget):
        self.what = what
        self.items = items
        self.budget = budget
        super().__init__(f"{what}: {items} items exceeds enumeration budget {budget}")


class DegenerateMeasureError(NonadditiveError):
    """A cylinder received zero (or negative) weight."""


class ConvergenceError(NonadditiveError):
    """An iterative method hit its iteration limit."""


class DecompositionError(NonadditiveError):
    """A linear system that should be solvable was not."""


class FormatError(NonadditiveError):
    """An input file could not be parsed."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        self.message = message
        where = f"{self.path}:{line}" if line else self.path
        super().__init__(f"{where}: {message}")
