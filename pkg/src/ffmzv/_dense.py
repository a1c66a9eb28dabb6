"""Dense numpy kernels for polynomial multiplication and exact division.

Coefficient matrices are int64 arrays indexed [t_exponent, theta_exponent]
(univariate polynomials use a single column / single row).  Multiplication is
2-D convolution; large products go through FFT with an exactness guard, small
ones stay in direct integer arithmetic.

Prime fields convolve the residues directly.  Degree-2 extensions (F_4, F_9,
F_25, ...) are split into two F_p component planes along the modulus basis
{1, x}; with x^2 = -c1*x - c0 the product of a0+a1*x and b0+b1*x is
(a0b0 - c0*a1b1) + (a0b1 + a1b0 - c1*a1b1) x, i.e. four plane convolutions.
Higher extension degrees are not supported here; callers fall back to sparse
arithmetic.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

_FFT_THRESHOLD = 1 << 14  # product size above which FFT wins


def supported(field) -> bool:
    return field.m <= 2


def _conv2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer 2-D convolution of small nonnegative residue arrays."""
    if a.size == 0 or b.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    work = a.size * b.size
    if work < _FFT_THRESHOLD:
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1),
                       dtype=np.int64)
        nz = np.argwhere(a)
        for i, j in nz:
            out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
        return out
    raw = fftconvolve(a.astype(np.float64), b.astype(np.float64))
    out = np.rint(raw)
    # guard against FFT roundoff ever crossing a half-integer
    if np.max(np.abs(raw - out)) > 0.25:
        raise ArithmeticError("FFT convolution lost exactness; inputs too large")
    return out.astype(np.int64)


def conv_mod(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    """Product of coefficient matrices over the field."""
    if field.m == 1:
        return _conv2(a, b) % field.p
    if field.m != 2:
        raise ValueError("dense kernel supports m <= 2 only")
    p = field.p
    c0 = field.modulus[0] % p
    c1 = field.modulus[1] % p
    a0, a1 = a % p, a // p
    b0, b1 = b % p, b // p
    t00 = _conv2(a0, b0)
    t01 = _conv2(a0, b1)
    t10 = _conv2(a1, b0)
    t11 = _conv2(a1, b1)
    plane0 = (t00 - c0 * t11) % p
    plane1 = (t01 + t10 - c1 * t11) % p
    return plane0 + p * plane1


def trim(mat: np.ndarray) -> np.ndarray:
    """Strip zero border rows/columns; zero polynomial becomes shape (0, 0)."""
    if mat.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows = np.nonzero(mat.any(axis=1))[0]
    if rows.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    cols = np.nonzero(mat.any(axis=0))[0]
    return np.ascontiguousarray(mat[: rows[-1] + 1, : cols[-1] + 1])


def add_mats(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    if a.size == 0:
        return b.copy()
    if b.size == 0:
        return a.copy()
    nr = max(a.shape[0], b.shape[0])
    nc = max(a.shape[1], b.shape[1])
    out = np.zeros((nr, nc), dtype=np.int64)
    out[: a.shape[0], : a.shape[1]] = a
    if field.m == 1:
        out[: b.shape[0], : b.shape[1]] = (out[: b.shape[0], : b.shape[1]] + b) % field.p
    else:
        out[: b.shape[0], : b.shape[1]] = field.add_table[out[: b.shape[0], : b.shape[1]], b]
    return out


def neg_mat(a: np.ndarray, field) -> np.ndarray:
    if field.m == 1:
        return (-a) % field.p
    return field.neg_table[a]


def scale_mat(a: np.ndarray, c: int, field) -> np.ndarray:
    if c == 0 or a.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if field.m == 1:
        return (a * c) % field.p
    return field.mul_table[a, c]


def exact_div_tpoly(mat: np.ndarray, div: np.ndarray, field) -> np.ndarray:
    """Divide a coefficient matrix by a polynomial in t alone (rows axis).

    The divisor div is a 1-D residue array of length deg+1.  Raises
    ArithmeticError when the division leaves a remainder: a divisor in t only
    divides a bivariate polynomial iff it divides every theta-column.
    """
    div = np.asarray(div, dtype=np.int64)
    nz = np.nonzero(div)[0]
    if nz.size == 0:
        raise ZeroDivisionError("division by zero polynomial")
    dd = int(nz[-1])
    div = div[: dd + 1]
    if mat.size == 0:
        return mat
    if dd == 0:
        return scale_mat(mat, field.inv(int(div[0])), field)
    work = mat.astype(np.int64).copy()
    nrow = work.shape[0]
    if nrow - 1 < dd:
        if work.any():
            raise ArithmeticError("exact division failed (degree too small)")
        return np.zeros((0, 0), dtype=np.int64)
    lead_inv = field.inv(int(div[dd]))
    quo = np.zeros((nrow - dd, work.shape[1]), dtype=np.int64)
    p = field.p
    if field.m == 1:
        for i in range(nrow - 1, dd - 1, -1):
            row = work[i]
            if not row.any():
                continue
            f = row * lead_inv % p
            quo[i - dd] = f
            work[i - dd : i + 1] = (work[i - dd : i + 1] - np.outer(div, f)) % p
        if work[:dd].any():
            raise ArithmeticError("exact division failed (nonzero remainder)")
    else:
        mul_t = field.mul_table
        sub_t = field.sub_table
        for i in range(nrow - 1, dd - 1, -1):
            row = work[i]
            if not row.any():
                continue
            f = mul_t[row, lead_inv]
            quo[i - dd] = f
            for k in range(dd + 1):
                dk = int(div[k])
                if dk:
                    work[i - dd + k] = sub_t[work[i - dd + k], mul_t[f, dk]]
        if work[:dd].any():
            raise ArithmeticError("exact division failed (nonzero remainder)")
    return trim(quo)
