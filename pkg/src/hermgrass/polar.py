"""Hermitian polar spaces over GF(q^2).

A HermitianSpace wraps V(m, q^2) with a nondegenerate sesquilinear
form, conjugate-linear in the first argument:

    inner(x, y) = conj(x)^T H y,    conj = Frobenius a -> a^q.

The Gram matrix H defaults to the identity; every nondegenerate
Hermitian form on V(m, q^2) is equivalent to that one.

Conventions fixed here and relied on elsewhere:

* projective points are normalized so the first nonzero coordinate
  is 1, and the canonical point order is ascending lexicographic on
  coordinate code tuples;
* a totally isotropic 2-space is represented by its unique 2 x m
  reduced row echelon basis, and the canonical line order is
  ascending lexicographic on the flattened basis.

Counting helpers (all exact integers):

* ``isotropic_point_count(m, q)`` for the nondegenerate space,
* ``line_count(m, q)`` for totally isotropic lines,
* ``cone_point_count(m, i, t, q)`` for the section of the space cut
  by an (m-2i)-dimensional subspace whose induced singular radical
  has dimension t (a cone with a t-dimensional vertex over a
  nondegenerate piece of dimension m-2i-t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .ff import FieldCtx
from .linalg import Subspace, fadd

__all__ = [
    "isotropic_point_count",
    "line_count",
    "cone_point_count",
    "ProjectivePoint",
    "IsotropicLine",
    "RadicalProfile",
    "HermitianSpace",
    "enumerate_points",
    "enumerate_lines",
    "perp",
    "radical_profile",
    "write_points_csv",
    "write_lines_csv",
]


def isotropic_point_count(m: int, q: int) -> int:
    """Projective isotropic points of a nondegenerate form on V(m, q^2).

    Zero for m < 2 (the m = 0 value is a convention used by the cone
    count below).
    """
    if m <= 1:
        return 0
    s = (-1) ** (m - 1)
    num = (q**m + s) * (q ** (m - 1) - s)
    den = q * q - 1
    assert num % den == 0
    return num // den


def line_count(m: int, q: int) -> int:
    """Totally isotropic 2-spaces of a nondegenerate form on V(m, q^2)."""
    if m < 4:
        return 0
    num = isotropic_point_count(m, q) * isotropic_point_count(m - 2, q)
    den = q * q + 1
    assert num % den == 0
    return num // den


def cone_point_count(m: int, i: int, t: int, q: int) -> int:
    """Points of a vertex-t cone section inside an (m-2i)-subspace.

    The subspace meets the polar space in a cone with a totally
    isotropic vertex of dimension t over a nondegenerate section of
    dimension m-2i-t.  Requires 1 <= 2i <= m and
    0 <= t <= min(2i, m-2i).
    """
    if i < 1 or 2 * i > m:
        raise ValueError(f"i = {i} out of range for m = {m}")
    if t < 0 or t > min(2 * i, m - 2 * i):
        raise ValueError(f"t = {t} out of range for m = {m}, i = {i}")
    q2 = q * q
    return q2**t * isotropic_point_count(m - 2 * i - t, q) + (q2**t - 1) // (q2 - 1)


@dataclass(frozen=True)
class ProjectivePoint:
    """Normalized projective point (first nonzero coordinate is 1)."""

    coords: tuple[int, ...]


class IsotropicLine:
    """Totally isotropic 2-space held by its canonical RREF basis."""

    __slots__ = ("basis",)

    def __init__(self, basis: np.ndarray):
        basis = np.ascontiguousarray(np.asarray(basis, dtype=np.uint8))
        if basis.shape[0] != 2:
            raise ValueError("a line basis has exactly 2 rows")
        basis.flags.writeable = False
        self.basis = basis

    @property
    def key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, IsotropicLine) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"IsotropicLine({[tuple(int(x) for x in r) for r in self.basis]})"


@dataclass(frozen=True)
class RadicalProfile:
    """Shape of a subspace section of the polar space.

    ``dim`` is the subspace dimension, ``t`` the dimension of the
    radical of the restricted form.  The label reads [Pi_t]H_s for the
    cone with vertex dimension t over a nondegenerate section of
    dimension s = dim - t.
    """

    dim: int
    t: int
    label: str


class HermitianSpace:
    """V(m, q^2) with a nondegenerate Hermitian form.

    Enumerations are cached on the instance; the caches are immutable
    arrays, so sharing a space between workers is safe.
    """

    def __init__(self, m: int, ctx: FieldCtx, gram=None):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.ctx = ctx
        if gram is None:
            gram = np.eye(m, dtype=np.uint8)
        gram = linalg.as_matrix(ctx, gram)
        if gram.shape != (m, m):
            raise ValueError("Gram matrix must be m x m")
        if not np.array_equal(ctx.frob[gram].T, gram):
            raise ValueError("Gram matrix is not Hermitian")
        if linalg.rank(ctx, gram) != m:
            raise ValueError("Gram matrix is singular")
        gram.flags.writeable = False
        self.gram = gram
        self.is_identity_gram = bool(np.array_equal(gram, np.eye(m, dtype=np.uint8)))
        self._cache: dict[str, object] = {}

    # -- scalar form ----------------------------------------------------
    def inner(self, x, y) -> int:
        """conj(x)^T H y; conjugate-linear in x, linear in y."""
        ctx = self.ctx
        x = np.asarray(x, dtype=np.uint8).reshape(-1)
        y = np.asarray(y, dtype=np.uint8).reshape(-1)
        if x.size != self.m or y.size != self.m:
            raise ValueError("vector length does not match the space dimension")
        hx = linalg.matvec(ctx, self.gram.T, ctx.frob[x])
        acc = 0
        for j in range(self.m):
            acc = int(fadd(ctx, np.uint8(acc), ctx.mul[hx[j], y[j]]))
        return acc

    def is_isotropic(self, u) -> bool:
        return self.inner(u, u) == 0

    # -- point enumeration ----------------------------------------------
    def inner_diag(self, pts: np.ndarray) -> np.ndarray:
        """inner(row, row) for every row of pts."""
        ctx = self.ctx
        left = linalg.matmul(ctx, ctx.frob[pts], self.gram)
        vals = np.zeros(len(pts), dtype=np.uint8)
        for j in range(self.m):
            vals = fadd(ctx, vals, ctx.mul[left[:, j], pts[:, j]])
        return vals

    def all_points(self) -> np.ndarray:
        """All normalized points of PG(m-1, q^2), ascending lex order."""
        if "all_points" not in self._cache:
            q2 = self.ctx.q2
            blocks = []
            for lead in range(self.m - 1, -1, -1):
                tail = self.m - 1 - lead
                cnt = q2**tail
                arr = np.zeros((cnt, self.m), dtype=np.uint8)
                arr[:, lead] = 1
                if tail:
                    idx = np.arange(cnt, dtype=np.int64)
                    pows = q2 ** np.arange(tail - 1, -1, -1, dtype=np.int64)
                    arr[:, lead + 1 :] = ((idx[:, None] // pows) % q2).astype(np.uint8)
                blocks.append(arr)
            pts = np.vstack(blocks)
            pts.flags.writeable = False
            self._cache["all_points"] = pts
        return self._cache["all_points"]

    def points(self) -> np.ndarray:
        """Isotropic points, canonical order, one row per point."""
        if "points" not in self._cache:
            allp = self.all_points()
            mask = self.inner_diag(allp) == 0
            pts = np.ascontiguousarray(allp[mask])
            pts.flags.writeable = False
            self._cache["points"] = pts
        return self._cache["points"]

    def point_leads(self) -> np.ndarray:
        if "leads" not in self._cache:
            pts = self.points()
            leads = (pts != 0).argmax(axis=1).astype(np.int16)
            leads.flags.writeable = False
            self._cache["leads"] = leads
        return self._cache["leads"]

    def conj_gram_rows(self) -> np.ndarray:
        """Row i equals conj(p_i)^T H, for p_i the i-th isotropic point."""
        if "cgr" not in self._cache:
            ctx = self.ctx
            r = linalg.matmul(ctx, ctx.frob[self.points()], self.gram)
            r.flags.writeable = False
            self._cache["cgr"] = r
        return self._cache["cgr"]

    @property
    def num_points(self) -> int:
        return len(self.points())

    # -- line enumeration -------------------------------------------------
    def line_pair_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """Index pairs (a, b) into points() whose rows stacked form the
        canonical RREF basis of each totally isotropic line.

        Every line appears exactly once: the rows (p_a, p_b) are in RREF
        exactly when lead(a) < lead(b), a[lead(b)] = 0, and the two
        points are orthogonal.  Pairs are sorted by the flattened basis.
        """
        if "line_pairs" not in self._cache:
            ctx = self.ctx
            pts = self.points()
            leads = self.point_leads()
            cgr = self.conj_gram_rows()
            n_pts = len(pts)
            ais, bis = [], []
            for ib in range(n_pts):
                b = pts[ib]
                vals = np.zeros(n_pts, dtype=np.uint8)
                for j in range(self.m):
                    s = b[j]
                    if s:
                        vals = fadd(ctx, vals, ctx.mul[s, cgr[:, j]])
                lb = leads[ib]
                mask = (vals == 0) & (leads < lb) & (pts[:, lb] == 0)
                ai = np.nonzero(mask)[0]
                if ai.size:
                    ais.append(ai.astype(np.int32))
                    bis.append(np.full(ai.size, ib, dtype=np.int32))
            if ais:
                a_idx = np.concatenate(ais)
                b_idx = np.concatenate(bis)
            else:
                a_idx = np.zeros(0, dtype=np.int32)
                b_idx = np.zeros(0, dtype=np.int32)
            keys = np.hstack([pts[a_idx], pts[b_idx]])
            order = np.lexsort(keys.T[::-1])
            a_idx = np.ascontiguousarray(a_idx[order])
            b_idx = np.ascontiguousarray(b_idx[order])
            expected = line_count(self.m, self.ctx.q)
            if len(a_idx) != expected:
                raise RuntimeError(
                    f"line enumeration produced {len(a_idx)} lines, expected {expected}"
                )
            a_idx.flags.writeable = False
            b_idx.flags.writeable = False
            self._cache["line_pairs"] = (a_idx, b_idx)
        return self._cache["line_pairs"]

    def line_bases(self) -> tuple[np.ndarray, np.ndarray]:
        """First and second RREF basis rows of every line (N x m each)."""
        a_idx, b_idx = self.line_pair_indices()
        pts = self.points()
        return pts[a_idx], pts[b_idx]

    @property
    def num_lines(self) -> int:
        return len(self.line_pair_indices()[0])

    # -- orthogonality pairs (for per-point line counts) -------------------
    def orthogonal_point_pairs(self, max_pairs: int = 20_000_000):
        """(u, x) index pairs over isotropic points with inner(p_u, p_x) = 0.

        Both orders are present, self pairs included.  Returns None when
        the pair set would exceed max_pairs; callers then stream instead.
        """
        key = "orth_pairs"
        if key not in self._cache:
            q = self.ctx.q
            est = self.num_points * (q * q * isotropic_point_count(self.m - 2, q) + 1)
            if est > max_pairs:
                self._cache[key] = None
            else:
                ctx = self.ctx
                pts = self.points()
                cgr = self.conj_gram_rows()
                n_pts = len(pts)
                uis, xis = [], []
                for iu in range(n_pts):
                    vals = np.zeros(n_pts, dtype=np.uint8)
                    row = cgr[iu]
                    for j in range(self.m):
                        s = row[j]
                        if s:
                            vals = fadd(ctx, vals, ctx.mul[s, pts[:, j]])
                    xi = np.nonzero(vals == 0)[0]
                    uis.append(np.full(xi.size, iu, dtype=np.int32))
                    xis.append(xi.astype(np.int32))
                ui = np.concatenate(uis)
                xi = np.concatenate(xis)
                ui.flags.writeable = False
                xi.flags.writeable = False
                self._cache[key] = (ui, xi)
        return self._cache[key]

    def __repr__(self) -> str:
        return f"HermitianSpace(m={self.m}, q={self.ctx.q})"


def enumerate_points(space: HermitianSpace) -> list[ProjectivePoint]:
    return [ProjectivePoint(tuple(int(x) for x in row)) for row in space.points()]


def enumerate_lines(space: HermitianSpace) -> list[IsotropicLine]:
    if space.m < 4:
        raise ValueError("totally isotropic lines require m >= 4")
    a, b = space.line_bases()
    return [IsotropicLine(np.stack([a[i], b[i]])) for i in range(len(a))]


def perp(space: HermitianSpace, w) -> Subspace:
    """Subspace of vectors orthogonal to all of w under the form."""
    ctx = space.ctx
    rows = w.basis if isinstance(w, Subspace) else linalg.as_matrix(ctx, w)
    if rows.shape[1] != space.m:
        raise ValueError("subspace ambient dimension mismatch")
    if rows.shape[0] == 0:
        return Subspace.from_rows(ctx, np.eye(space.m, dtype=np.uint8))
    mat = linalg.matmul(ctx, ctx.frob[rows], space.gram)
    return linalg.kernel(ctx, mat)


def radical_profile(space: HermitianSpace, r) -> RadicalProfile:
    """Profile of the section cut by the subspace r.

    t is the dimension of the radical of the form restricted to r, so
    the section is a cone [Pi_t]H_(dim-t).
    """
    ctx = space.ctx
    rows = r.basis if isinstance(r, Subspace) else linalg.as_matrix(ctx, r)
    d = rows.shape[0]
    if d == 0:
        return RadicalProfile(dim=0, t=0, label="[Pi_0]H_0")
    gram = linalg.matmul(ctx, linalg.matmul(ctx, ctx.frob[rows], space.gram), rows.T)
    t = d - linalg.rank(ctx, gram)
    return RadicalProfile(dim=d, t=t, label=f"[Pi_{t}]H_{d - t}")


def write_points_csv(f, space: HermitianSpace) -> None:
    ctx = space.ctx
    pts = space.points()
    f.write(f"# points m={space.m} p={ctx.p} e={ctx.e} count={len(pts)}\n")
    for row in pts:
        f.write(",".join(str(int(x)) for x in row) + "\n")


def write_lines_csv(f, space: HermitianSpace) -> None:
    ctx = space.ctx
    a, b = space.line_bases()
    f.write(f"# lines m={space.m} p={ctx.p} e={ctx.e} count={len(a)}\n")
    for i in range(len(a)):
        row = [str(int(x)) for x in a[i]] + [str(int(x)) for x in b[i]]
        f.write(",".join(row) + "\n")
