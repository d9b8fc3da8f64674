"""Exception hierarchy shared by every module."""


class SiltSurfError(Exception):
    """Base class for all library errors."""


class AlgebraError(SiltSurfError):
    """A quiver description violates the gentle axioms.

    Carries the full list of violations so callers can report all of
    them at once instead of fixing one at a time.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class WordError(SiltSurfError):
    """A curve or string word is syntactically invalid on its surface."""


class ContractibleError(SiltSurfError):
    """A word reduced to a contractible curve."""


class NotGradableError(SiltSurfError):
    """A closed curve with nonzero winding number cannot be graded."""


class InfiniteArcError(SiltSurfError):
    """An arc wrapping a puncture was fed to a perfect-object operation."""


class NotSiltingError(SiltSurfError):
    """An operation required a silting (or tilting) dissection and got none."""


class PreconditionError(SiltSurfError):
    """A mathematical precondition of an operation is violated."""


class CorruptSurfaceError(SiltSurfError):
    """Stored surface invariants disagree with recomputed ones."""


class SchemaError(SiltSurfError):
    """A JSON document does not match the silt-surf/1 schema."""
