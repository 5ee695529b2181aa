"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid group family / (p, n) / Galois-exponent combination."""


class EnumerationCapError(RuntimeError):
    """A brute-force enumeration would exceed the configured cap."""


class SubstitutionError(ValueError):
    """A substitution is undefined: missing variable image or zero denominator."""


class OracleError(RuntimeError):
    """Finite-field oracle could not be set up or sampled."""
