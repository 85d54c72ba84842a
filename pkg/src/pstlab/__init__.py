"""pstlab: spin-chain couplings from prescribed spectra.

Reconstructs the unique persymmetric Jacobi matrix with a given simple
spectrum, verifies perfect state transfer between the chain ends, and
certifies the exact number of early-state-exclusion events with Sturm
sequences over arbitrary-precision rationals.
"""

from .certify import (
    EseReport,
    EseRoot,
    RatPolynomial,
    cosine_to_poly,
    count_roots_open_interval,
    detect_ese,
    isolate_roots,
    multiplicity_at_minus_one,
    refine_root,
)
from .dynamics import (
    CosineSeries,
    TransferSeries,
    amplitude_closed_form,
    amplitude_series,
    evaluate,
    frobenius_covariant,
    probability_curves,
    return_amplitude,
    sample,
    transfer_amplitude,
    transfer_series,
    verify_pst,
)
from .errors import (
    BreakdownError,
    ConvergenceError,
    DomainError,
    IncommensurableGaps,
    InvalidPolynomial,
    NonIntegerFrequency,
    NonIntegerSpectrum,
    NonSimpleSpectrum,
    NotAdmissible,
    NotIsolating,
    NotSymmetric,
    NumericUncertain,
    PstLabError,
)
from .families import (
    FamilyCase,
    ScanRecord,
    TestPoint,
    conjecture_scan,
    counterexamples,
    ese_family_test_points,
    even_derivative_at_pst_time,
    even_derivative_signs,
    family_ese,
    family_no_ese,
    no_ese_family_amplitude,
    sine_difference_bound_holds,
    taylor_minorant_check,
    verify_family,
)
from .reconstruct import (
    JacobiMatrix,
    Weights,
    closed_form_7x7,
    compute_weights,
    reconstruct_general,
    reconstruct_symmetric,
    symmetric_bsquared_exact,
)
from .spectrum import (
    PstInfo,
    Spectrum,
    SymmetricSpectrum,
    normalize,
    parse_spectrum,
    to_symmetric,
    validate_pst,
)
from .trieig import EigenDecomposition, boundary_components, eigen_tridiagonal

__version__ = "0.1.0"
