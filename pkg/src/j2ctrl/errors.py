"""Exception hierarchy shared by the library and the CLI."""


class J2CtrlError(Exception):
    """Base class for all errors raised by j2ctrl."""


class DomainError(J2CtrlError, ValueError):
    """Input lies outside the domain of the coordinates or parameters."""


class ArgumentError(J2CtrlError, ValueError):
    """An argument violates a precondition (horizon, step count, shape)."""


class UncontrollableError(J2CtrlError):
    """Steering was requested for a thruster configuration whose Kalman rank is < 6."""

    def __init__(self, config, rank: int, n: int = 6):
        self.config = config
        self.rank = rank
        self.n = n
        super().__init__(
            f"configuration {config} is not controllable: Kalman rank {rank} < {n}"
        )


class SingularGramianError(J2CtrlError):
    """Symmetric factorization broke down; ``pivot`` is the offending index (0-based)."""

    def __init__(self, pivot: int, value: float):
        self.pivot = pivot
        self.value = value
        super().__init__(
            f"matrix is not numerically positive definite: pivot {pivot} = {value:.3e}"
        )


class DivergenceError(J2CtrlError):
    """Integration produced a non-finite state or hit the r = 0 singularity."""

    def __init__(self, step: int, reason: str = "non-finite state"):
        self.step = step
        self.reason = reason
        super().__init__(f"integration diverged at step {step}: {reason}")
