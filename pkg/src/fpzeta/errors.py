class DomainError(ValueError):
    """Argument outside the domain of the requested function."""


class ToleranceNotReached(ArithmeticError):
    """Adaptive refinement exhausted before the error target was met.

    Carries the best value and error estimate obtained; ``method`` is filled
    in by callers that know which representation was being evaluated.
    """

    def __init__(self, value, estimate, target, method=None):
        self.value = value
        self.estimate = estimate
        self.target = target
        self.method = method
        super().__init__(self._message())

    def _message(self):
        where = f"[{self.method}] " if self.method else ""
        return (
            f"{where}tolerance {float(self.target):.3g} not reached; "
            f"best estimate {float(self.estimate):.3g}"
        )

    def tag(self, method):
        self.method = method
        self.args = (self._message(),)
        return self
