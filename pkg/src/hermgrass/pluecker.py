"""Pluecker embedding of totally isotropic lines.

A 2-space with basis rows (v, w) maps to the point of PG(C(m,2)-1, q^2)
with coordinates v_i w_j - v_j w_i, indexed by pairs (i, j), i < j, in
lexicographic order.  For a basis in reduced row echelon form these
coordinates are already normalized (the pivot-pair coordinate is 1).

The ordered images of all totally isotropic lines form a projective
system; stacking them as columns gives the generator matrix of the
induced linear code.  Generator matrix text format: header
"m p e N K", then K rows of N whitespace-separated entries.
"""

from __future__ import annotations

import numpy as np

from . import linalg, polar
from .ff import FieldCtx
from .linalg import fsub

__all__ = ["pair_indices", "pluecker_point", "ProjectiveSystem", "build_system", "write_genmat"]


def pair_indices(m: int) -> list[tuple[int, int]]:
    """Coordinate pair order (0,1), (0,2), ..., (m-2, m-1)."""
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def pluecker_point(ctx: FieldCtx, basis) -> np.ndarray:
    """Normalized Pluecker coordinates of the 2-space spanned by basis.

    The result does not depend on the chosen basis of the span.
    Raises ValueError when the two rows are dependent.
    """
    b = basis.basis if isinstance(basis, polar.IsotropicLine) else linalg.as_matrix(ctx, basis)
    if b.shape[0] != 2:
        raise ValueError("need exactly 2 basis rows")
    v, w = b[0], b[1]
    m = b.shape[1]
    coords = np.zeros(m * (m - 1) // 2, dtype=np.uint8)
    for k, (i, j) in enumerate(pair_indices(m)):
        coords[k] = fsub(ctx, ctx.mul[v[i], w[j]], ctx.mul[v[j], w[i]])
    nz = np.nonzero(coords)[0]
    if nz.size == 0:
        raise ValueError("degenerate basis: rows are linearly dependent")
    lead = coords[nz[0]]
    if lead != 1:
        coords = ctx.mul[ctx.inv[lead], coords]
    return coords


class ProjectiveSystem:
    """Ordered Pluecker images of all totally isotropic lines.

    ``matrix`` is the K x N generator matrix whose j-th column holds
    the normalized coordinates of the j-th line in canonical order.
    Construction verifies that the matrix has full rank K, so distinct
    coefficient vectors give distinct codewords.
    """

    def __init__(self, space: polar.HermitianSpace, matrix: np.ndarray):
        self.space = space
        self.ctx = space.ctx
        matrix = np.ascontiguousarray(matrix)
        matrix.flags.writeable = False
        self.matrix = matrix
        self.k = matrix.shape[0]
        self.n = matrix.shape[1]
        self.pairs = pair_indices(space.m)

    def omega_column(self, j: int) -> np.ndarray:
        return self.matrix[:, j]

    def __repr__(self) -> str:
        return f"ProjectiveSystem(m={self.space.m}, q={self.ctx.q}, N={self.n}, K={self.k})"


def build_system(space: polar.HermitianSpace, check_rank: bool = True) -> ProjectiveSystem:
    """Generator matrix of the line code of the given space (cached)."""
    if "system" in space._cache:
        return space._cache["system"]
    if space.m < 4:
        raise ValueError("the line system requires m >= 4")
    ctx = space.ctx
    m = space.m
    a, b = space.line_bases()
    n = len(a)
    k = m * (m - 1) // 2
    g = np.empty((k, n), dtype=np.uint8)
    for idx, (i, j) in enumerate(pair_indices(m)):
        g[idx] = fsub(ctx, ctx.mul[a[:, i], b[:, j]], ctx.mul[a[:, j], b[:, i]])
    if check_rank:
        got = linalg.rank(ctx, g)
        if got != k:
            raise RuntimeError(f"generator matrix rank {got}, expected {k}")
    system = ProjectiveSystem(space, g)
    space._cache["system"] = system
    return system


def write_genmat(f, system: ProjectiveSystem) -> None:
    ctx = system.ctx
    f.write(f"{system.space.m} {ctx.p} {ctx.e} {system.n} {system.k}\n")
    for row in system.matrix:
        f.write(" ".join(str(int(x)) for x in row) + "\n")
