"""Dense exact linear algebra over GF(q^2).

Matrices are numpy arrays of field-element codes (see ff).  All
products go through the FieldCtx tables, so every result is exact.
The reduced row echelon form is the canonical representative of a row
space; its flattened entries serve as a total order and hash key for
subspaces.  Pivots are chosen leftmost first.

Text format for matrices: first line "rows cols q2", then the entries
in row-major order, whitespace separated.
"""

from __future__ import annotations

import numpy as np

from .ff import FieldCtx

__all__ = [
    "as_matrix",
    "fadd",
    "fsub",
    "fneg",
    "fmul",
    "matmul",
    "matvec",
    "rref",
    "rank",
    "kernel",
    "Subspace",
    "solve_membership",
    "write_matrix_text",
    "read_matrix_text",
]


def as_matrix(ctx: FieldCtx, rows) -> np.ndarray:
    m = np.ascontiguousarray(np.asarray(rows, dtype=np.uint8))
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.size and m.max() >= ctx.q2:
        raise ValueError(f"entry out of range for GF({ctx.q2})")
    return m


def fneg(ctx: FieldCtx, a):
    if ctx.p == 2:
        return a
    return ctx.neg[a]


def fadd(ctx: FieldCtx, a, b):
    if ctx.p == 2:
        return np.bitwise_xor(a, b)
    return ctx.add[a, b]


def fsub(ctx: FieldCtx, a, b):
    if ctx.p == 2:
        return np.bitwise_xor(a, b)
    return ctx.add[a, ctx.neg[b]]


def fmul(ctx: FieldCtx, a, b):
    return ctx.mul[a, b]


def matmul(ctx: FieldCtx, a, b) -> np.ndarray:
    """Matrix product over GF(q^2); a is (r, t), b is (t, c)."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    r, t = a.shape
    t2, c = b.shape
    if t != t2:
        raise ValueError("inner dimensions do not match")
    out = np.zeros((r, c), dtype=np.uint8)
    for k in range(t):
        out = fadd(ctx, out, ctx.mul[a[:, k][:, None], b[k][None, :]])
    return out


def matvec(ctx: FieldCtx, a, x) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    x = np.asarray(x, dtype=np.uint8).reshape(-1)
    out = np.zeros(a.shape[0], dtype=np.uint8)
    for k in range(a.shape[1]):
        s = x[k]
        if s:
            out = fadd(ctx, out, ctx.mul[s, a[:, k]])
    return out


def rref(ctx: FieldCtx, m) -> tuple[np.ndarray, int]:
    """Reduced row echelon form and rank.

    The result is the unique RREF of the row space, with unit pivots
    and zeros above and below each pivot.
    """
    r = as_matrix(ctx, m).copy()
    nr, nc = r.shape
    row = 0
    for col in range(nc):
        if row == nr:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        piv = row + hits[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        pv = r[row, col]
        if pv != 1:
            r[row] = ctx.mul[ctx.inv[pv], r[row]]
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            f = r[others, col]
            r[others] = fsub(ctx, r[others], ctx.mul[f[:, None], r[row][None, :]])
        row += 1
    return r, row


def rank(ctx: FieldCtx, m) -> int:
    """Rank via forward elimination only (cheaper than full rref)."""
    r = as_matrix(ctx, m).copy()
    nr, nc = r.shape
    row = 0
    for col in range(nc):
        if row == nr:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        piv = row + hits[0]
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        below = row + 1 + np.nonzero(r[row + 1 :, col])[0]
        if below.size:
            f = ctx.mul[r[below, col], ctx.inv[r[row, col]]]
            r[below] = fsub(ctx, r[below], ctx.mul[f[:, None], r[row][None, :]])
        row += 1
    return row


class Subspace:
    """A subspace of GF(q^2)^n held by its canonical RREF basis.

    Equality and hashing go through the flattened basis entries, so
    two Subspace objects agree exactly when they span the same space.
    """

    __slots__ = ("basis",)

    def __init__(self, basis: np.ndarray):
        basis = np.ascontiguousarray(np.asarray(basis, dtype=np.uint8))
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-d array")
        basis.flags.writeable = False
        self.basis = basis

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows, ambient: int | None = None) -> "Subspace":
        m = as_matrix(ctx, rows)
        if m.size == 0:
            if ambient is None:
                ambient = m.shape[1]
            return cls(np.zeros((0, ambient), dtype=np.uint8))
        r, rk = rref(ctx, m)
        return cls(r[:rk])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def ambient(self) -> int:
        return self.basis.shape[1]

    @property
    def key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.basis.shape == other.basis.shape and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.basis.shape, self.key))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel(ctx: FieldCtx, m) -> Subspace:
    """Right kernel {x : m x = 0} as a canonical Subspace."""
    m = as_matrix(ctx, m)
    nr, nc = m.shape
    if nr == 0:
        return Subspace.from_rows(ctx, np.eye(nc, dtype=np.uint8))
    r, rk = rref(ctx, m)
    pivots = []
    for i in range(rk):
        pivots.append(int(np.nonzero(r[i])[0][0]))
    free = [c for c in range(nc) if c not in set(pivots)]
    rows = np.zeros((len(free), nc), dtype=np.uint8)
    for j, fc in enumerate(free):
        rows[j, fc] = 1
        for i, pc in enumerate(pivots):
            rows[j, pc] = fneg(ctx, r[i, fc])
    return Subspace.from_rows(ctx, rows, ambient=nc)


def solve_membership(ctx: FieldCtx, w: Subspace, v) -> bool:
    """True when v lies in the span of w; v must have matching length."""
    v = np.asarray(v, dtype=np.uint8).reshape(-1)
    if v.size != w.ambient:
        raise ValueError("vector length does not match the ambient dimension")
    res = v.copy()
    for row in w.basis:
        pc = int(np.nonzero(row)[0][0])
        c = res[pc]
        if c:
            res = fsub(ctx, res, ctx.mul[c, row])
    return not res.any()


def write_matrix_text(f, ctx: FieldCtx, m) -> None:
    m = as_matrix(ctx, m)
    f.write(f"{m.shape[0]} {m.shape[1]} {ctx.q2}\n")
    for row in m:
        f.write(" ".join(str(int(x)) for x in row) + "\n")


def read_matrix_text(f) -> tuple[np.ndarray, int]:
    """Parse the text format; returns (matrix, q2)."""
    toks = f.read().split()
    if len(toks) < 3:
        raise ValueError("malformed matrix text")
    nr, nc, q2 = int(toks[0]), int(toks[1]), int(toks[2])
    body = toks[3:]
    if len(body) != nr * nc:
        raise ValueError("matrix text has wrong number of entries")
    m = np.array([int(t) for t in body], dtype=np.uint8).reshape(nr, nc)
    if m.size and m.max() >= q2:
        raise ValueError("matrix entry out of range")
    return m, q2
