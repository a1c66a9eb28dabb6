"""The twist ring F_q[u][t] with theta = u^(q^R).

Realizes Frobenius twisting on polynomials with q-power-root coefficients:
at root depth R, theta^(a/q^j) embeds as u^(a*q^(R-j)), so twisting up by k
multiplies every u-exponent by q^k and leaves t-exponents and F_q
coefficients alone (a^q = a on F_q).  Twisting down divides u-exponents by q
and fails precisely when the element has no q-th root at this depth.

u-exponents get astronomically large (q^(n+r) scale), so storage is sparse:
dict (t_exp, u_exp) -> coefficient.
"""

from __future__ import annotations

from .bipoly import BiPoly
from .errors import FieldMismatch, NotTwistDivisible, RootDepthMismatch
from .fields import Fq
from .polys import T, U, UniPoly


class TwistedPoly:
    """Sparse element of F_q[u][t] at a fixed root depth."""

    __slots__ = ("field", "root_depth", "coeffs")

    def __init__(self, field: Fq, root_depth: int, coeffs: dict[tuple[int, int], int] | None = None,
                 *, _normalized: bool = False):
        self.field = field
        self.root_depth = root_depth
        if coeffs is None:
            coeffs = {}
        if not _normalized:
            coeffs = {k: c for k, c in coeffs.items() if c}
        self.coeffs = coeffs

    # --- constructors ---

    @classmethod
    def zero(cls, field: Fq, root_depth: int) -> "TwistedPoly":
        return cls(field, root_depth, {}, _normalized=True)

    @classmethod
    def one(cls, field: Fq, root_depth: int) -> "TwistedPoly":
        return cls(field, root_depth, {(0, 0): 1}, _normalized=True)

    @classmethod
    def from_bipoly(cls, bp: BiPoly, root_depth: int) -> "TwistedPoly":
        """Embed F_q[theta][t]: theta-exponent e becomes u-exponent e*q^R."""
        scale = bp.field.q**root_depth
        coeffs = {(te, he * scale): c for te, he, c in bp.terms()}
        return cls(bp.field, root_depth, coeffs, _normalized=True)

    @classmethod
    def from_t_poly(cls, p: UniPoly, root_depth: int) -> "TwistedPoly":
        if p.var != T:
            raise FieldMismatch(f"expected a t-polynomial, got {p.var!r}")
        return cls(p.field, root_depth, {(e, 0): c for e, c in p.coeffs.items()},
                   _normalized=True)

    @classmethod
    def theta_root_linear(cls, field: Fq, root_depth: int, denom_qexp: int) -> "TwistedPoly":
        """(t - theta^(1/q^j)) at this root depth; j = denom_qexp <= R."""
        if denom_qexp > root_depth:
            raise RootDepthMismatch(
                f"theta^(1/q^{denom_qexp}) needs root depth >= {denom_qexp}, have {root_depth}")
        ue = field.q ** (root_depth - denom_qexp)
        return cls(field, root_depth, {(1, 0): 1, (0, ue): field.minus_one}, _normalized=True)

    @classmethod
    def theta_power(cls, field: Fq, root_depth: int, num_qexp: int) -> "TwistedPoly":
        """theta^(q^num_qexp) as a twisted monomial."""
        return cls(field, root_depth, {(0, field.q ** (root_depth + num_qexp)): 1},
                   _normalized=True)

    # --- structure ---

    def is_zero(self) -> bool:
        return not self.coeffs

    def n_terms(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "TwistedPoly"):
        if self.field != other.field:
            raise FieldMismatch("operands over different fields")
        if self.root_depth != other.root_depth:
            raise RootDepthMismatch(
                f"root depths differ: {self.root_depth} vs {other.root_depth}")

    # --- ring operations ---

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = f.add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TwistedPoly(f, self.root_depth, out, _normalized=True)

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        return self + (-other)

    def __neg__(self) -> "TwistedPoly":
        f = self.field
        return TwistedPoly(f, self.root_depth, {k: f.neg(c) for k, c in self.coeffs.items()},
                           _normalized=True)

    def __mul__(self, other: "TwistedPoly") -> "TwistedPoly":
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, int], int] = {}
        mul, add = f.mul, f.add
        for (ta, ua), ca in a.items():
            for (tb, ub), cb in b.items():
                k = (ta + tb, ua + ub)
                v = add(out.get(k, 0), mul(ca, cb))
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return TwistedPoly(f, self.root_depth, out, _normalized=True)

    def scale(self, c: int) -> "TwistedPoly":
        f = self.field
        if c == 0:
            return TwistedPoly.zero(f, self.root_depth)
        return TwistedPoly(f, self.root_depth, {k: f.mul(cc, c) for k, cc in self.coeffs.items()},
                           _normalized=True)

    def mul_tpoly(self, p: UniPoly) -> "TwistedPoly":
        return self * TwistedPoly.from_t_poly(p, self.root_depth)

    def __pow__(self, e: int) -> "TwistedPoly":
        if e < 0:
            raise ValueError("negative power")
        result = TwistedPoly.one(self.field, self.root_depth)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, TwistedPoly) and self.field == other.field
                and self.root_depth == other.root_depth and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.root_depth, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (te, ue) in sorted(self.coeffs, key=lambda k: (-k[0], -k[1])):
            c = self.coeffs[(te, ue)]
            factors = []
            if c != 1 or (te == 0 and ue == 0):
                factors.append(str(c))
            if te:
                factors.append(T if te == 1 else f"{T}^{te}")
            if ue:
                factors.append(U if ue == 1 else f"{U}^{ue}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> dict:
        keys = sorted(self.coeffs, key=lambda k: (-k[0], -k[1]))
        return {"rootDepth": self.root_depth,
                "terms": [[str(te), str(ue), self.coeffs[(te, ue)]] for te, ue in keys]}

    @classmethod
    def from_json(cls, field: Fq, data: dict) -> "TwistedPoly":
        coeffs = {}
        for te, ue, c in data["terms"]:
            coeffs[(int(te), int(ue))] = c
        return cls(field, data["rootDepth"], coeffs)


def twist_up(f: TwistedPoly, k: int = 1) -> TwistedPoly:
    """f^(k) for k >= 1: u-exponents scale by q^k; root depth unchanged."""
    if k < 1:
        raise ValueError("twist_up needs k >= 1")
    s = f.field.q**k
    return TwistedPoly(f.field, f.root_depth,
                       {(te, ue * s): c for (te, ue), c in f.coeffs.items()}, _normalized=True)


def twist_down(f: TwistedPoly) -> TwistedPoly:
    """f^(-1): u-exponents divide by q; exact inverse of twist_up(., 1)."""
    q = f.field.q
    out = {}
    for (te, ue), c in f.coeffs.items():
        if ue % q:
            raise NotTwistDivisible(
                f"u-exponent {ue} not divisible by q={q}; no q-th root at this depth")
        out[(te, ue // q)] = c
    return TwistedPoly(f.field, f.root_depth, out, _normalized=True)
