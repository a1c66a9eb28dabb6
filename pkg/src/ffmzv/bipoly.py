"""Exact polynomials in t with F_q[theta] coefficients.

Storage is a dense coefficient matrix mat[t_exp, theta_exp] (int64, residues).
The bivariate objects that occur here (G_i, H_n, closed forms) are dense
enough, and their exponents small enough, that matrix storage plus FFT
convolution beats sparse dicts by orders of magnitude on the recurrence
sweeps.  The matrix is trimmed and marked read-only, so values are safely
shareable.
"""

from __future__ import annotations

import numpy as np

from . import _dense
from .errors import FieldMismatch
from .fields import Fq
from .polys import T, THETA, UniPoly


class BiPoly:
    """Element of F_q[theta][t], dense matrix indexed [t_exp, theta_exp]."""

    __slots__ = ("field", "mat")

    def __init__(self, field: Fq, mat: np.ndarray, *, _trimmed: bool = False):
        self.field = field
        if not _trimmed:
            mat = _dense.trim(np.asarray(mat, dtype=np.int64))
        self.mat = mat
        self.mat.flags.writeable = False

    # --- constructors ---

    @classmethod
    def zero(cls, field: Fq) -> "BiPoly":
        return cls(field, np.zeros((0, 0), dtype=np.int64), _trimmed=True)

    @classmethod
    def one(cls, field: Fq) -> "BiPoly":
        return cls.const(field, 1)

    @classmethod
    def const(cls, field: Fq, c: int) -> "BiPoly":
        if c % field.p == 0 and field.m == 1:
            return cls.zero(field)
        if c == 0:
            return cls.zero(field)
        return cls(field, np.array([[c]], dtype=np.int64), _trimmed=True)

    @classmethod
    def from_terms(cls, field: Fq, terms) -> "BiPoly":
        """terms: iterable of (t_exp, theta_exp, coeff)."""
        terms = list(terms)
        if not terms:
            return cls.zero(field)
        nt = max(t for t, _, _ in terms) + 1
        nh = max(h for _, h, _ in terms) + 1
        mat = np.zeros((nt, nh), dtype=np.int64)
        for t, h, c in terms:
            mat[t, h] = field.add(int(mat[t, h]), c)
        return cls(field, mat)

    @classmethod
    def from_theta_poly(cls, p: UniPoly) -> "BiPoly":
        if p.var != THETA:
            raise FieldMismatch(f"expected a theta-polynomial, got variable {p.var!r}")
        return cls.from_terms(p.field, ((0, e, c) for e, c in p.coeffs.items()))

    @classmethod
    def from_t_poly(cls, p: UniPoly) -> "BiPoly":
        if p.var != T:
            raise FieldMismatch(f"expected a t-polynomial, got variable {p.var!r}")
        return cls.from_terms(p.field, ((e, 0, c) for e, c in p.coeffs.items()))

    # --- structure ---

    def is_zero(self) -> bool:
        return self.mat.size == 0

    @property
    def deg_t(self) -> int | None:
        return self.mat.shape[0] - 1 if self.mat.size else None

    @property
    def deg_theta(self) -> int | None:
        return self.mat.shape[1] - 1 if self.mat.size else None

    def terms(self):
        """Nonzero (t_exp, theta_exp, coeff), sorted by (t desc, theta desc)."""
        idx = np.argwhere(self.mat)
        out = [(int(i), int(j), int(self.mat[i, j])) for i, j in idx]
        out.sort(key=lambda x: (-x[0], -x[1]))
        return out

    def n_terms(self) -> int:
        return int(np.count_nonzero(self.mat))

    # --- arithmetic ---

    def _check(self, other: "BiPoly"):
        if self.field != other.field:
            raise FieldMismatch("operands over different fields")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        return BiPoly(self.field, _dense.add_mats(self.mat, other.mat, self.field))

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, _dense.neg_mat(self.mat, self.field), _trimmed=True)

    def scale(self, c: int) -> "BiPoly":
        return BiPoly(self.field, _dense.scale_mat(self.mat, c, self.field))

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return BiPoly.zero(self.field)
        return BiPoly(self.field, _dense.conv_mod(self.mat, other.mat, self.field))

    def mul_tpoly(self, p: UniPoly) -> "BiPoly":
        """Multiply by a polynomial in t alone."""
        if p.is_zero() or self.is_zero():
            return BiPoly.zero(self.field)
        col = np.zeros((p.degree + 1, 1), dtype=np.int64)
        for e, c in p.coeffs.items():
            col[e, 0] = c
        return BiPoly(self.field, _dense.conv_mod(self.mat, col, self.field))

    def exact_div_tpoly(self, p: UniPoly) -> "BiPoly":
        """Exact division by a polynomial in t alone; raises if not exact."""
        row = np.zeros(p.degree + 1, dtype=np.int64)
        for e, c in p.coeffs.items():
            row[e] = c
        return BiPoly(self.field, _dense.exact_div_tpoly(self.mat, row, self.field),
                      _trimmed=True)

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = BiPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # --- views ---

    def is_t_poly(self) -> bool:
        return self.mat.size == 0 or self.mat.shape[1] == 1

    def to_t_poly(self) -> UniPoly:
        if not self.is_t_poly():
            raise ArithmeticError("theta occurs; not a polynomial in t alone")
        if self.is_zero():
            return UniPoly.zero(self.field, T)
        return UniPoly.from_row(self.field, T, self.mat[:, 0])

    def theta_substituted_t(self) -> "BiPoly":
        """Substitute theta = t, collapsing to a t-polynomial."""
        if self.is_zero():
            return self
        nt, nh = self.mat.shape
        out = np.zeros(nt + nh - 1, dtype=np.int64)
        if self.field.m == 1:
            for j in range(nh):
                out[j: j + nt] = (out[j: j + nt] + self.mat[:, j]) % self.field.p
        else:
            add = self.field.add_table
            for j in range(nh):
                out[j: j + nt] = add[out[j: j + nt], self.mat[:, j]]
        return BiPoly(self.field, out.reshape(-1, 1))

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.field == other.field
                and self.mat.shape == other.mat.shape and np.array_equal(self.mat, other.mat))

    def __hash__(self):
        return hash((self.field, self.mat.tobytes(), self.mat.shape))

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        ts = self.terms()
        if not ts:
            return "0"
        parts = []
        for te, he, c in ts:
            factors = []
            if c != 1 or (te == 0 and he == 0):
                factors.append(str(c))
            if te:
                factors.append(T if te == 1 else f"{T}^{te}")
            if he:
                factors.append(THETA if he == 1 else f"{THETA}^{he}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"terms": [[str(te), str(he), c] for te, he, c in self.terms()]}

    @classmethod
    def from_json(cls, field: Fq, data: dict) -> "BiPoly":
        return cls.from_terms(field, ((int(te), int(he), c) for te, he, c in data["terms"]))
