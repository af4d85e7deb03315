"""Exception hierarchy shared by all modules.

The CLI maps :class:`ValidationError` and :class:`PreconditionError` to exit
status 2 and :class:`ConsistencyError` to exit status 1.
"""


class Seifert5Error(Exception):
    pass


class ValidationError(Seifert5Error, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class PreconditionError(Seifert5Error, ValueError):
    pass


class ConsistencyError(Seifert5Error, RuntimeError):
    """Input data contradicts an identity that must hold; surfaced loudly."""
