"""Recursive Bayesian filtering on the unit circle.

Circular distributions (wrapped normal, von Mises, wrapped Dirac mixtures),
deterministic moment-matched sampling, moment-based convolution and
multiplication, nonlinear prediction and progressive measurement updates,
baseline filters, and a benchmark harness.
"""

from .distributions import (
    CircularMomentSet,
    VonMises,
    WrappedDiracMixture,
    WrappedNormal,
    convolve_moments,
    mirror_shift,
    moments_of,
    vm_convolve,
    vm_from_moment,
    vm_from_wn,
    vm_multiply,
    wn_convolve,
    wn_from_moment,
    wn_from_vm,
    wn_multiply_moment_based,
    wn_multiply_via_vm,
    wn_product_moment,
    wrap,
)
from .errors import (
    DegenerateMomentError,
    DegenerateProductError,
    InfeasibleMomentsError,
    ParticleDegeneracyError,
    ProgressionStallError,
    ZeroLikelihoodError,
)
from .filters import (
    FilterState,
    make_additive_likelihood,
    predict_arbitrary,
    predict_identity,
    predict_nonlinear_additive,
    update_identity,
    update_progressive,
)
from .metrics import angular_distance, angular_rmse, numeric_kld, numeric_l2
from .sampling import (
    naive_wrapped_gaussian_samples,
    sample_from_density,
    sample_wd3,
    sample_wd5,
)
from .special import (
    bessel_i,
    bessel_ratio_A,
    bessel_ratio_A_inv,
    erf_complex,
    gaussian_segment_moment,
)

__version__ = "0.1.0"
