"""Exception hierarchy.  Each family carries the CLI exit code it maps to."""


class OmegaNFError(Exception):
    exit_code = 1


class InputError(OmegaNFError, ValueError):
    """Malformed or invalid input data."""

    exit_code = 2


class DimensionMismatch(InputError):
    pass


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class ClosureExceeded(ValidationError):
    pass


class InconsistentSigns(ValidationError):
    pass


class SingularGenerator(ValidationError):
    pass


class NonMultiplicativeCharacter(ValidationError):
    pass


class NonHomogeneous(InputError):
    pass


class HypothesisError(OmegaNFError):
    """A hypothesis of the normal-form theorems does not hold for the data."""

    exit_code = 3


class NotHamiltonianMatrix(HypothesisError):
    pass


class SNotSymplectic(HypothesisError):
    pass


class NotSemisymplectic(HypothesisError):
    pass


class SigmaMismatch(HypothesisError):
    pass


class SymmetryHypothesisFailed(HypothesisError):
    pass


class NonEquilibriumInput(HypothesisError):
    pass


class CertificateError(OmegaNFError):
    """A runtime rank/identity certificate failed."""

    exit_code = 4


class ComplementCertificateFailed(CertificateError):
    pass


class DecompositionCertificateFailed(CertificateError):
    pass


class EquivariantSolveFailed(CertificateError):
    pass
