"""Exact table-driven arithmetic in GF(q^2) for q = p^e.

Field elements are dense integer codes 0..q^2-1.  The code of an
element is the base-p encoding of its coefficient vector over GF(p),
constant coefficient in the lowest digit.  GF(q^2) is realized as
GF(p)[x]/(f) for a fixed primitive polynomial f of degree 2e, so the
codes are reproducible across runs and platforms.

The subfield GF(q) consists of the fixed points of the Frobenius map
x -> x^q; this map is the conjugation underlying every Hermitian form
built on top of this module.  The norm x -> x^(q+1) takes values in
GF(q) and is surjective onto it, with exactly q+1 preimages over each
nonzero value.

Primitive polynomials used, lowest coefficient first:

    GF(4)    1 + x + x^2
    GF(9)    2 + 2x + x^2
    GF(16)   1 + x + x^4
    GF(25)   2 + 4x + x^2
    GF(49)   3 + 6x + x^2
    GF(64)   1 + x + x^3 + x^4 + x^6
"""

from __future__ import annotations

import numpy as np

__all__ = ["SUPPORTED_Q", "FieldCtx", "make_field", "frobenius", "hermitian_norm"]

#: q values with pinned primitive polynomials.
SUPPORTED_Q = (2, 3, 4, 5, 7, 8)

# Keyed by (p, 2e); all entries are primitive, so the residue class of
# x (code p) generates the multiplicative group.  The constructor
# re-verifies this.
_PRIMITIVE_POLY = {
    (2, 2): (1, 1, 1),
    (3, 2): (2, 2, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldCtx:
    """GF(q^2) with dense lookup tables.

    Tables (numpy arrays, uint8 codes):

    ``add``, ``mul``
        shape (q2, q2) operation tables, indexable with broadcasting
        element-code arrays.
    ``neg``, ``inv``, ``frob``, ``norm``
        shape (q2,) unary tables.  ``inv[0]`` is 0 and must not be
        relied on.
    ``subfield``
        ascending codes of the q elements fixed by ``frob``.

    Instances are immutable after construction and can be shared
    freely across threads and worker processes.
    """

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        q = p**e
        if q not in SUPPORTED_Q:
            raise ValueError(f"q = {q} is outside the supported range {SUPPORTED_Q}")
        self.p = p
        self.e = e
        self.q = q
        self.q2 = q * q
        deg = 2 * e
        self.poly = _PRIMITIVE_POLY[(p, deg)]

        exp, log = self._build_power_tables(p, deg)
        codes = np.arange(self.q2)

        digs = np.zeros((self.q2, deg), dtype=np.int64)
        t = codes.copy()
        for k in range(deg):
            digs[:, k] = t % p
            t //= p
        pw = p ** np.arange(deg)
        self.add = (((digs[:, None, :] + digs[None, :, :]) % p) @ pw).astype(np.uint8)
        self.neg = (((-digs) % p) @ pw).astype(np.uint8)

        n1 = self.q2 - 1
        nzlog = log[1:]
        mul = np.zeros((self.q2, self.q2), dtype=np.uint8)
        mul[1:, 1:] = exp[(nzlog[:, None] + nzlog[None, :]) % n1]
        self.mul = mul
        inv = np.zeros(self.q2, dtype=np.uint8)
        inv[1:] = exp[(n1 - nzlog) % n1]
        self.inv = inv
        frob = np.zeros(self.q2, dtype=np.uint8)
        frob[1:] = exp[(nzlog * q) % n1]
        self.frob = frob
        norm = np.zeros(self.q2, dtype=np.uint8)
        norm[1:] = exp[(nzlog * (q + 1)) % n1]
        self.norm = norm

        self.subfield = np.nonzero(frob == codes)[0].astype(np.uint8)
        if len(self.subfield) != q:
            raise RuntimeError("Frobenius fixed field has wrong size")
        if not np.array_equal(frob[frob], codes):
            raise RuntimeError("Frobenius is not an involution")

        for a in (self.add, self.neg, self.mul, self.inv, self.frob, self.norm, self.subfield):
            a.flags.writeable = False

    def _build_power_tables(self, p: int, deg: int):
        # exp[i] = code of x^i, log[code of x^i] = i, for 0 <= i < q^2 - 1.
        poly = self.poly
        n1 = self.q2 - 1
        exp = np.zeros(n1, dtype=np.int64)
        log = np.zeros(self.q2, dtype=np.int64)
        cur = [1] + [0] * (deg - 1)
        seen = set()
        for i in range(n1):
            code = 0
            for k in range(deg - 1, -1, -1):
                code = code * p + cur[k]
            exp[i] = code
            log[code] = i
            seen.add(code)
            top = cur[deg - 1]
            cur = [0] + cur[: deg - 1]
            if top:
                for k in range(deg):
                    cur[k] = (cur[k] - top * poly[k]) % p
        if len(seen) != n1 or cur != [1] + [0] * (deg - 1):
            raise RuntimeError("modulus polynomial is not primitive")
        return exp, log

    # Scalar convenience wrappers over the tables.
    def add_s(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def sub_s(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def mul_s(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inv_s(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv[a])

    def conj_s(self, a: int) -> int:
        return int(self.frob[a])

    @property
    def elements(self) -> range:
        return range(self.q2)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of a code, constant term first."""
        out = []
        for _ in range(2 * self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + int(c) % self.p
        return code

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.q2}) = GF({self.p}^{2 * self.e}))"


def make_field(p: int, e: int) -> FieldCtx:
    """Build GF(q^2) for q = p^e.

    Raises ValueError for non-prime p or a size outside SUPPORTED_Q.
    """
    return FieldCtx(p, e)


def frobenius(ctx: FieldCtx, x: int) -> int:
    """x^q, the conjugation of GF(q^2) over GF(q)."""
    return int(ctx.frob[x])


def hermitian_norm(ctx: FieldCtx, x: int) -> int:
    """x^(q+1); always lies in the subfield GF(q)."""
    return int(ctx.norm[x])
