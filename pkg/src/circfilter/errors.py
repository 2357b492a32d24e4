"""Exception types shared across the library."""


class DegenerateMomentError(ValueError):
    """A first circular moment has modulus too close to 0 or 1 to fit a density."""


class DegenerateProductError(ValueError):
    """A pointwise product of densities collapsed to the uniform distribution."""


class InfeasibleMomentsError(ValueError):
    """The requested (m1, m2) pair admits no five-point Dirac approximation."""


class ZeroLikelihoodError(RuntimeError):
    """Every sample position received zero likelihood during an update."""


class ProgressionStallError(RuntimeError):
    """A progressive update computed a non-positive step size or ran too long."""


class ParticleDegeneracyError(RuntimeError):
    """All particle weights vanished after reweighing."""
