"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user-supplied data: bad dimensions, malformed rationals, broken invariants."""


class OracleGuardError(InputError):
    """Brute-force decision refused because the configuration exceeds the size guard."""


class PerturbationError(RuntimeError):
    """No generic configuration was reached within the attempt budget."""

    def __init__(self, attempts, certificate):
        super().__init__(f"no generic perturbation found in {attempts} attempts")
        self.attempts = attempts
        self.certificate = certificate
