"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration: bad sizes, unknown keys, bad enum values."""


class BlowUpError(RuntimeError):
    """Raised when a time step produces non-finite field values.

    Carries a small report so callers can show where the run died.
    """

    def __init__(self, time, step, norms):
        self.time = time
        self.step = step
        self.norms = dict(norms)
        msg = ", ".join(f"{k}={v:.6g}" for k, v in self.norms.items())
        super().__init__(
            f"non-finite fields at t={time:.6g} (step {step}); last finite norms: {msg}"
        )
