class LevelError(ValueError):
    """Level is not boundary principal admissible for the given root system."""


class GateError(ValueError):
    """A brute-force computation was refused because the group is too large."""


class MuBulletError(ArithmeticError):
    """A denominator factor of mu_bullet vanished at the root of unity."""

    def __init__(self, coroot, message: str):
        super().__init__(message)
        self.coroot = coroot
