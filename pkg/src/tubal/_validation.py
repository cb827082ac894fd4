import numbers

import numpy as np

from .exceptions import ParameterError, ShapeError


def check_tensor3(A, name="A", allow_complex=False):
    """Return ``A`` as a finite float64 (or complex128) array with three axes."""
    A = np.asarray(A)
    if A.ndim != 3:
        raise ShapeError(f"{name} must be a third-order tensor, got ndim={A.ndim}")
    if min(A.shape) < 1:
        raise ShapeError(f"{name} has an empty dimension: {A.shape}")
    if np.iscomplexobj(A):
        if not allow_complex:
            raise ValueError(f"{name} must be real")
        A = A.astype(np.complex128, copy=False)
    else:
        A = A.astype(np.float64, copy=False)
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains NaN or Inf")
    return A


def check_int(value, name, low=None, high=None):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise ParameterError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if low is not None and value < low:
        raise ParameterError(f"{name} must be >= {low}, got {value}")
    if high is not None and value > high:
        raise ParameterError(f"{name} must be <= {high}, got {value}")
    return value


def check_positive(value, name, strict=True):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a real number, got {value!r}") from None
    if not np.isfinite(value) or value < 0 or (strict and value == 0):
        kind = "positive" if strict else "nonnegative"
        raise ParameterError(f"{name} must be {kind}, got {value}")
    return value
