"""t-product tensor algebra and randomized low tubal-rank approximation."""

from .exceptions import (
    FormatError,
    ImaginaryResidualTooLarge,
    IngestError,
    ParameterError,
    RankNotRevealed,
    ShapeError,
)
from .fourier import fft3, ifft3, mirror_conjugate
from .randomized_tsvd import RandomizedTSVD, fixed_rtsvd_bounds, rtsvd_fixed
from .rsvd import c_delta, rsvd, rsvd_bounds
from .tensor import (
    conj_transpose,
    identity,
    tensor_norm,
    tensor_nuclear_norm,
    tprod,
    tprod_bruteforce,
)
from .trpca import TensorRPCA, soft_threshold, trpca_admm, tsvt_exact, tsvt_randomized
from .tsvd import TruncatedTSVD, exact_multirank, minimal_error, tsvd_truncated
from .turank import (
    TubalRankRevealer,
    estimated_tube_bound,
    estimated_tube_error,
    r_turank,
    turank_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "FormatError", "ImaginaryResidualTooLarge", "IngestError", "ParameterError",
    "RankNotRevealed", "ShapeError",
    "fft3", "ifft3", "mirror_conjugate",
    "RandomizedTSVD", "fixed_rtsvd_bounds", "rtsvd_fixed",
    "c_delta", "rsvd", "rsvd_bounds",
    "conj_transpose", "identity", "tensor_norm", "tensor_nuclear_norm", "tprod",
    "tprod_bruteforce",
    "TensorRPCA", "soft_threshold", "trpca_admm", "tsvt_exact", "tsvt_randomized",
    "TruncatedTSVD", "exact_multirank", "minimal_error", "tsvd_truncated",
    "TubalRankRevealer", "estimated_tube_bound", "estimated_tube_error", "r_turank",
    "turank_bounds",
]
