"""Structural analysis of codeword forms.

For a nonzero alternating form S, the semilinear map

    [x]  ->  perp_form([x]) then perp_hermitian(...)

sends a point to the pole, under the Hermitian polarity, of its polar
hyperplane under the alternating form.  With the identity Gram matrix
it is [x] -> [S^q x^q]; its kernel is the projectivized radical of S.
Isotropic points split into three classes by their per-point line
count:

* zero class: image equals the point itself, or the point sits in
  the radical;
* secant class: image is a different non-isotropic point;
* tangent class: image is a different isotropic point.

The class sizes (counted as vectors, q^2 - 1 per point) reconstruct
the weight of the codeword exactly, giving a third route to weights
besides the direct and the per-point recursive counts.

zero_class_bound(m, i, q) bounds the zero-class size over all forms of
rank 2i; stratum_weight_bound turns it into a per-rank lower bound on
weights.  make_rank2_cone_form and make_permutable_form build the two
families of certified minimum-weight witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from . import linalg, polar
from .code import AlternatingForm, code_params, weight_direct, weight_recursive
from .ff import FieldCtx
from .linalg import fsub
from .pluecker import ProjectiveSystem

__all__ = [
    "polar_image",
    "point_classes",
    "ClassificationReport",
    "classify_points",
    "fixed_point_count",
    "weight_from_class_counts",
    "cone_count_max",
    "zero_class_bound",
    "stratum_weight_bound",
    "BoundRow",
    "BoundTable",
    "bound_table",
    "write_bounds_csv",
    "rank2_cone_weight",
    "make_rank2_cone_form",
    "make_permutable_form",
    "check_min_weight_profile",
]

ZERO_CLASS, SECANT_CLASS, TANGENT_CLASS = 0, 1, 2


def polar_image(phi: AlternatingForm, space: polar.HermitianSpace, x) -> np.ndarray | None:
    """Image of the point [x] under the composition of the two
    polarities, normalized; None when [x] lies in the radical.

    With the identity Gram matrix this is [S^q x^q] = [(S x)^q].  The
    general path composes the two perps on subspaces and agrees with
    the fast path whenever both apply.
    """
    ctx = space.ctx
    x = np.asarray(x, dtype=np.uint8).reshape(-1)
    if x.size != space.m:
        raise ValueError("vector length does not match the space")
    if space.is_identity_gram:
        y = ctx.frob[linalg.matvec(ctx, phi.s, x)]
    else:
        row = linalg.matvec(ctx, phi.s.T, x)  # x^T S; its kernel is the polar hyperplane
        if not row.any():
            return None
        hyper = linalg.kernel(ctx, row.reshape(1, -1))
        pole = polar.perp(space, hyper)
        if pole.dim != 1:
            return None
        y = pole.basis[0].copy()
    nz = np.nonzero(y)[0]
    if nz.size == 0:
        return None
    lead = y[nz[0]]
    if lead != 1:
        y = ctx.mul[ctx.inv[lead], y]
    return y


def _images(phi: AlternatingForm, space: polar.HermitianSpace, pts: np.ndarray):
    """Vectorized polar images of the given point rows.

    Returns (kernel_mask, normalized_images); image rows for kernel
    points are zero.
    """
    ctx = space.ctx
    if space.is_identity_gram:
        y = ctx.frob[linalg.matmul(ctx, pts, phi.s.T)]
    else:
        rows = []
        for r in pts:
            img = polar_image(phi, space, r)
            rows.append(np.zeros(space.m, dtype=np.uint8) if img is None else img)
        y = np.array(rows, dtype=np.uint8)
    kernel_mask = ~y.any(axis=1)
    live = ~kernel_mask
    if live.any():
        sub = y[live]
        lead = (sub != 0).argmax(axis=1)
        vals = sub[np.arange(len(sub)), lead]
        y[live] = ctx.mul[ctx.inv[vals][:, None], sub]
    return kernel_mask, y


def point_classes(phi: AlternatingForm, space: polar.HermitianSpace) -> np.ndarray:
    """Class label (0 zero, 1 secant, 2 tangent) per isotropic point."""
    if phi.is_zero():
        raise ValueError("the zero form has no point classification")
    pts = space.points()
    kernel_mask, y = _images(phi, space, pts)
    fixed = ~kernel_mask & (y == pts).all(axis=1)
    iso = space.inner_diag(y) == 0
    labels = np.full(len(pts), SECANT_CLASS, dtype=np.int8)
    labels[kernel_mask | fixed] = ZERO_CLASS
    labels[~(kernel_mask | fixed) & iso] = TANGENT_CLASS
    return labels


def fixed_point_count(phi: AlternatingForm, space: polar.HermitianSpace) -> int:
    """Projective fixed points of the composed polarity map over the
    whole projective space."""
    pts = space.all_points()
    kernel_mask, y = _images(phi, space, pts)
    return int((~kernel_mask & (y == pts).all(axis=1)).sum())


def weight_from_class_counts(m: int, q: int, a: int, b: int, c: int) -> int:
    """Weight reconstructed from the three vector-class sizes.

    Requires a + b + c = (q^2 - 1) * (number of isotropic points); the
    reconstruction (q^(2m-7) (b + c) + (-1)^m q^(m-4) b) / (q^4 - 1)
    must come out an exact integer.
    """
    mu = polar.isotropic_point_count(m, q)
    if a + b + c != (q * q - 1) * mu:
        raise ValueError("class counts do not add up to the number of isotropic vectors")
    num = q ** (2 * m - 7) * (b + c) + (-1) ** m * q ** (m - 4) * b
    den = q**4 - 1
    if num % den:
        raise ValueError("class counts do not give an integral weight")
    return num // den


@dataclass(frozen=True)
class ClassificationReport:
    """Class sizes and cross-checked weights for one nonzero form."""

    A: int
    B: int
    C: int
    rad_dim: int
    profile: polar.RadicalProfile
    fix_count: int
    weight_from_counts: int
    weight_direct: int
    checks: dict


def classify_points(
    phi: AlternatingForm,
    space: polar.HermitianSpace,
    system: ProjectiveSystem | None = None,
) -> ClassificationReport:
    """Full classification report for a nonzero form.

    When a projective system is supplied the direct weight is taken
    from the codeword; otherwise it falls back to the per-point count,
    which is an independent route from the class-size reconstruction
    either way.
    """
    ctx = space.ctx
    q = ctx.q
    labels = point_classes(phi, space)
    scale = ctx.q2 - 1
    a = int((labels == ZERO_CLASS).sum()) * scale
    b = int((labels == SECANT_CLASS).sum()) * scale
    c = int((labels == TANGENT_CLASS).sum()) * scale
    wfc = weight_from_class_counts(space.m, q, a, b, c)
    if system is not None:
        wd = weight_direct(phi, system)
    else:
        wd = weight_recursive(phi, space)
    profile = polar.radical_profile(space, phi.radical)
    report = ClassificationReport(
        A=a,
        B=b,
        C=c,
        rad_dim=phi.rad_dim,
        profile=profile,
        fix_count=fixed_point_count(phi, space),
        weight_from_counts=wfc,
        weight_direct=wd,
        checks={
            "conservation": a + b + c == scale * polar.isotropic_point_count(space.m, q),
            "weight_agreement": wfc == wd,
        },
    )
    return report


# -- bounds per rank stratum -------------------------------------------------


def cone_count_max(m: int, i: int, q: int) -> int:
    """Largest point count of a section cut by the radical of a form
    of rank 2i, over all admissible vertex dimensions t."""
    if i < 1 or 2 * i > m:
        raise ValueError(f"i = {i} out of range for m = {m}")
    if 4 * i >= m:
        t = m - 2 * i
    elif m % 2 == 0:
        t = 2 * i
    else:
        t = 2 * i - 1
    return polar.cone_point_count(m, i, t, q)


def zero_class_bound(m: int, i: int, q: int) -> int:
    """Upper bound for the zero-class size of forms of rank 2i."""
    return (q ** (2 * i) - 1) * (q + 1) + (q * q - 1) * cone_count_max(m, i, q)


def stratum_weight_bound(m: int, i: int, q: int) -> Fraction:
    """Lower bound for weights of forms of rank 2i (exact rational)."""
    lead = q ** (2 * m - 7) - (q ** (m - 4) if m % 2 else 0)
    mu = polar.isotropic_point_count(m, q)
    return Fraction(lead, q * q + 1) * (mu - Fraction(zero_class_bound(m, i, q), q * q - 1))


@dataclass(frozen=True)
class BoundRow:
    i: int
    xi: int
    mu_max: int
    d_lower: Fraction


@dataclass(frozen=True)
class BoundTable:
    m: int
    q: int
    rows: tuple[BoundRow, ...]

    def max_indices(self) -> list[int]:
        best = max(r.xi for r in self.rows)
        return [r.i for r in self.rows if r.xi == best]

    def second_index(self) -> int | None:
        """Index attaining the second largest bound value, None when
        fewer than two strata exist."""
        if len(self.rows) < 2:
            return None
        ranked = sorted(self.rows, key=lambda r: r.xi, reverse=True)
        return ranked[1].i


def bound_table(m: int, q: int) -> BoundTable:
    rows = tuple(
        BoundRow(
            i=i,
            xi=zero_class_bound(m, i, q),
            mu_max=cone_count_max(m, i, q),
            d_lower=stratum_weight_bound(m, i, q),
        )
        for i in range(1, m // 2 + 1)
    )
    return BoundTable(m=m, q=q, rows=rows)


def write_bounds_csv(f, table: BoundTable) -> None:
    f.write("i,xi,muMax,dLower\n")
    for r in table.rows:
        f.write(f"{r.i},{r.xi},{r.mu_max},{ceil(r.d_lower)}\n")


# -- constructions ------------------------------------------------------------


def _outer_antisym(ctx: FieldCtx, a, b) -> np.ndarray:
    """a b^T - b a^T, a rank-2 alternating matrix for independent a, b."""
    ab = ctx.mul[a[:, None], b[None, :]]
    ba = ctx.mul[b[:, None], a[None, :]]
    return fsub(ctx, ab, ba)


def _norm_minus_one_element(ctx: FieldCtx) -> int:
    want = int(ctx.neg[1])
    for t in range(1, ctx.q2):
        if int(ctx.norm[t]) == want:
            return t
    raise RuntimeError("norm map misses -1; field tables are broken")


def rank2_cone_weight(m: int, q: int) -> int:
    """Weight of a rank-2 form whose radical cuts the fattest cone:
    q^(4m-12) - q^(3m-9) for odd m, q^(4m-12) for even m."""
    if m % 2:
        return q ** (4 * m - 12) - q ** (3 * m - 9)
    return q ** (4 * m - 12)


def make_rank2_cone_form(
    space: polar.HermitianSpace,
    system: ProjectiveSystem | None = None,
    seed: int = 1,
    max_tries: int = 10_000,
) -> AlternatingForm:
    """Rank-2 form whose radical cuts the fattest possible cone.

    For odd m the radical meets the space in a vertex-1 cone
    [Pi_1]H_(m-3); for even m in a vertex-2 cone [Pi_2]H_(m-4) with a
    totally isotropic vertex.  A deterministic candidate built from a
    norm(-1) element is tried first, then seeded random pairs.  The
    radical profile is always certified; the weight is certified too
    when a system is supplied (q^(4m-12) - q^(3m-9) for odd m,
    q^(4m-12) for even m).
    """
    ctx = space.ctx
    m = space.m
    if m < 5:
        raise ValueError("rank-2 cone witnesses need m >= 5")
    want_t = 1 if m % 2 else 2

    def candidates():
        x0 = _norm_minus_one_element(ctx)
        if space.is_identity_gram:
            if m % 2:
                rows = np.zeros((m - 2, m), dtype=np.uint8)
                rows[0, 0] = 1
                rows[0, 1] = x0
                for j in range(3, m):
                    rows[j - 2, j] = 1
            else:
                p1 = np.zeros(m, dtype=np.uint8)
                p1[0], p1[1] = 1, x0
                p2 = np.zeros(m, dtype=np.uint8)
                p2[2], p2[3] = 1, x0
                rows = polar.perp(space, np.stack([p1, p2])).basis
            ab = linalg.kernel(ctx, rows).basis
            if ab.shape[0] == 2:
                yield _outer_antisym(ctx, ab[0], ab[1])
        rng = np.random.default_rng(seed)
        for _ in range(max_tries):
            a = rng.integers(0, ctx.q2, size=m, dtype=np.uint8)
            b = rng.integers(0, ctx.q2, size=m, dtype=np.uint8)
            yield _outer_antisym(ctx, a, b)

    expected = rank2_cone_weight(m, ctx.q)
    for s in candidates():
        if not s.any():
            continue
        phi = AlternatingForm(ctx, s)
        if phi.rank != 2:
            continue
        profile = polar.radical_profile(space, phi.radical)
        if profile.t != want_t:
            continue
        if system is not None and weight_direct(phi, system) != expected:
            continue
        return phi
    raise RuntimeError("no rank-2 cone witness found within the retry budget")


def make_permutable_form(
    space: polar.HermitianSpace,
    system: ProjectiveSystem | None = None,
    seed: int = 1,
    max_tries: int = 10_000,
) -> AlternatingForm:
    """Nonsingular form whose polarity commutes with the Hermitian one.

    Only m in {4, 6} is supported, where such forms induce the
    minimum-weight codewords.  The certificate is computational: the
    zero class has size (q^m - 1)(q + 1) and the secant class is
    empty.  The default candidate is the block-diagonal standard
    symplectic matrix over the prime subfield; seeded random
    nonsingular alternating matrices with subfield entries follow.
    """
    ctx = space.ctx
    m = space.m
    if m not in (4, 6):
        raise ValueError("permutable witnesses are used for m in {4, 6} only")
    q = ctx.q
    a_target = (q**m - 1) * (q + 1)

    def candidates():
        s = np.zeros((m, m), dtype=np.uint8)
        for blk in range(0, m, 2):
            s[blk, blk + 1] = 1
            s[blk + 1, blk] = ctx.neg[1]
        yield s
        rng = np.random.default_rng(seed)
        sub = np.asarray(ctx.subfield)
        n_up = m * (m - 1) // 2
        from .pluecker import pair_indices

        for _ in range(max_tries):
            upper = sub[rng.integers(0, len(sub), size=n_up)]
            s = np.zeros((m, m), dtype=np.uint8)
            for k, (i, j) in enumerate(pair_indices(m)):
                s[i, j] = upper[k]
                s[j, i] = ctx.neg[upper[k]]
            yield s

    for s in candidates():
        phi = AlternatingForm(ctx, s)
        if phi.rank != m:
            continue
        labels = point_classes(phi, space)
        a = int((labels == ZERO_CLASS).sum()) * (ctx.q2 - 1)
        b = int((labels == SECANT_CLASS).sum())
        if a != a_target or b != 0:
            continue
        if system is not None:
            expected = q ** (4 * m - 12) - q ** (2 * m - 6)
            if weight_direct(phi, system) != expected:
                continue
        return phi
    raise RuntimeError("no permutable witness found within the retry budget")


def check_min_weight_profile(
    phi: AlternatingForm, space: polar.HermitianSpace, weight: int
) -> tuple[bool, str]:
    """Whether a minimum-weight form has the shape the minimum demands.

    For m in {4, 6}: nonsingular with the permutable signature.  For
    other even m: radical of dimension m-2 cutting a vertex-2 cone.
    For odd m (except m = 5 with q = 2): radical of dimension m-2
    cutting a vertex-1 cone.  For (m, q) = (5, 2) minimum words occur
    with radical dimension 1 as well as 3; the 3-dimensional ones must
    cut a vertex-1 cone.

    Raises ValueError when the supplied weight is not the minimum
    distance.
    """
    m, q = space.m, space.ctx.q
    if weight != code_params(m, q).d_min:
        raise ValueError("not a minimum-weight form")
    rad_dim = phi.rad_dim
    if m in (4, 6):
        labels = point_classes(phi, space)
        a = int((labels == ZERO_CLASS).sum()) * (space.ctx.q2 - 1)
        b = int((labels == SECANT_CLASS).sum())
        ok = phi.rank == m and a == (q**m - 1) * (q + 1) and b == 0
        return ok, f"rank={phi.rank}, A={a}, B={b}"
    profile = polar.radical_profile(space, phi.radical)
    if m % 2 == 0:
        ok = rad_dim == m - 2 and profile.t == 2
        return ok, f"rad_dim={rad_dim}, profile={profile.label}"
    if m == 5 and q == 2:
        ok = rad_dim == 1 or (rad_dim == 3 and profile.t == 1)
        return ok, f"rad_dim={rad_dim}, profile={profile.label}"
    ok = rad_dim == m - 2 and profile.t == 1
    return ok, f"rad_dim={rad_dim}, profile={profile.label}"
