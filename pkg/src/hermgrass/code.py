"""Codewords of the line code from alternating bilinear forms.

Every codeword corresponds to exactly one alternating form S (the
generator matrix has full rank, so the correspondence is bijective):
the value at a line with canonical basis (v, w) is v^T S w, which
equals the dot product of the strict upper triangle of S with the
line's normalized Pluecker coordinates.

Weights are computed three independent ways across the package:

* ``weight_direct``: count nonzero codeword positions;
* ``weight_recursive``: accumulate, over all isotropic vectors u, the
  number of totally isotropic lines through [u] not annihilated by
  the form, then divide by q^4 - 1;
* ``classify.weight_from_class_counts``: reconstruct from the sizes
  of the three per-point classes.

Form file format (JSON): {"m": .., "p": .., "e": .., "upper": [..]}
where "upper" lists the strict upper triangle in pair order.

Spectrum scans enumerate the strict upper triangle as a mixed-radix
counter (most significant digit first); exhaustive mode visits all
q^(2K) forms, sample mode draws seeded uniform forms.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg, polar
from .ff import FieldCtx, make_field
from .linalg import Subspace, fadd
from .pluecker import ProjectiveSystem, pair_indices

__all__ = [
    "AlternatingForm",
    "CodeParams",
    "Codeword",
    "SpectrumReport",
    "code_params",
    "evaluate",
    "codeword",
    "weight_direct",
    "point_weight",
    "point_weights",
    "point_weight_values",
    "weight_recursive",
    "spectrum",
    "min_distance",
    "form_from_index",
    "form_to_index",
    "read_form_json",
    "write_form_json",
    "write_spectrum_csv",
    "spectrum_metadata",
]


class AlternatingForm:
    """m x m matrix S over GF(q^2) with S^T = -S and zero diagonal.

    The zero diagonal is required explicitly so the condition is
    meaningful in characteristic 2 as well.  Rank (always even) and
    the two-sided kernel are computed lazily and cached.
    """

    def __init__(self, ctx: FieldCtx, s):
        s = linalg.as_matrix(ctx, s)
        if s.shape[0] != s.shape[1]:
            raise ValueError("form matrix must be square")
        if np.any(np.diagonal(s)):
            raise ValueError("form matrix must have zero diagonal")
        if not np.array_equal(s.T, ctx.neg[s]):
            raise ValueError("form matrix must be antisymmetric")
        s = s.copy()
        s.flags.writeable = False
        self.ctx = ctx
        self.s = s
        self.m = s.shape[0]
        self._rank: int | None = None
        self._radical: Subspace | None = None

    @classmethod
    def from_upper(cls, ctx: FieldCtx, m: int, upper) -> "AlternatingForm":
        upper = np.asarray(upper, dtype=np.uint8).reshape(-1)
        if upper.size != m * (m - 1) // 2:
            raise ValueError("upper triangle has wrong length")
        s = np.zeros((m, m), dtype=np.uint8)
        for k, (i, j) in enumerate(pair_indices(m)):
            s[i, j] = upper[k]
            s[j, i] = ctx.neg[upper[k]]
        return cls(ctx, s)

    def upper(self) -> np.ndarray:
        m = self.m
        return np.array([self.s[i, j] for i, j in pair_indices(m)], dtype=np.uint8)

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = linalg.rank(self.ctx, self.s)
        return self._rank

    @property
    def radical(self) -> Subspace:
        if self._radical is None:
            self._radical = linalg.kernel(self.ctx, self.s)
        return self._radical

    @property
    def rad_dim(self) -> int:
        return self.m - self.rank

    def is_zero(self) -> bool:
        return not self.s.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlternatingForm)
            and self.ctx.q2 == other.ctx.q2
            and np.array_equal(self.s, other.s)
        )

    def __hash__(self) -> int:
        return hash((self.ctx.q2, self.s.tobytes()))

    def __repr__(self) -> str:
        return f"AlternatingForm(m={self.m}, q2={self.ctx.q2}, rank={self.rank})"


@dataclass(frozen=True)
class CodeParams:
    """Length, dimension and minimum distance of the line code."""

    m: int
    q: int
    n: int
    k: int
    d_min: int


def code_params(m: int, q: int) -> CodeParams:
    """Parameters of the line code on V(m, q^2); requires m >= 4.

    d_min is q^(4m-12) - q^(2m-6) for m in {4, 6}, q^(4m-12) for even
    m >= 8, and q^(4m-12) - q^(3m-9) for odd m.
    """
    if m < 4:
        raise ValueError("the line code requires m >= 4")
    n = polar.line_count(m, q)
    k = m * (m - 1) // 2
    if m in (4, 6):
        d = q ** (4 * m - 12) - q ** (2 * m - 6)
    elif m % 2 == 0:
        d = q ** (4 * m - 12)
    else:
        d = q ** (4 * m - 12) - q ** (3 * m - 9)
    return CodeParams(m=m, q=q, n=n, k=k, d_min=d)


def evaluate(phi: AlternatingForm, line) -> int:
    """v^T S w on the line's basis rows (v, w).

    Zero exactly when the 2-space is totally isotropic for the form;
    nonzero values depend on the basis only up to a nonzero scalar.
    """
    ctx = phi.ctx
    b = line.basis if isinstance(line, polar.IsotropicLine) else linalg.as_matrix(ctx, line)
    if b.shape != (2, phi.m):
        raise ValueError("line basis must be 2 x m")
    sw = linalg.matvec(ctx, phi.s, b[1])
    acc = np.uint8(0)
    for i in range(phi.m):
        acc = fadd(ctx, acc, ctx.mul[b[0, i], sw[i]])
    return int(acc)


@dataclass(frozen=True)
class Codeword:
    values: np.ndarray
    weight: int


def codeword(phi: AlternatingForm, system: ProjectiveSystem) -> Codeword:
    """Codeword of the form: position j holds the form's value on the
    normalized Pluecker coordinates of line j."""
    ctx = system.ctx
    if phi.m != system.space.m or phi.ctx.q2 != ctx.q2:
        raise ValueError("form does not match the system")
    u = phi.upper()
    vals = np.zeros(system.n, dtype=np.uint8)
    for k in range(system.k):
        s = u[k]
        if s:
            vals = fadd(ctx, vals, ctx.mul[s, system.matrix[k]])
    return Codeword(values=vals, weight=int(np.count_nonzero(vals)))


def weight_direct(phi: AlternatingForm, system: ProjectiveSystem) -> int:
    """Number of lines on which the form does not vanish."""
    return codeword(phi, system).weight


# -- per-point line counts ------------------------------------------------


def point_weight_values(m: int, q: int) -> tuple[int, int, int]:
    """The three possible per-point line counts (zero, secant, tangent)."""
    mu2 = polar.isotropic_point_count(m - 2, q)
    mu3 = polar.isotropic_point_count(m - 3, q)
    return 0, mu2 - mu3, q ** (2 * m - 7)


def point_weights(phi: AlternatingForm, space: polar.HermitianSpace) -> np.ndarray:
    """For every isotropic point [u], the number of totally isotropic
    lines through [u] not annihilated by the form.

    Each qualifying line through [u] carries exactly q^2 isotropic
    points other than [u], so the pair count divides exactly by q^2.
    """
    ctx = space.ctx
    if phi.m != space.m:
        raise ValueError("form does not match the space")
    pts = space.points()
    n_pts = len(pts)
    q2 = ctx.q2
    ps = linalg.matmul(ctx, pts, phi.s)
    pairs = space.orthogonal_point_pairs()
    if pairs is not None:
        ui, xi = pairs
        vals = np.zeros(len(ui), dtype=np.uint8)
        for k in range(space.m):
            vals = fadd(ctx, vals, ctx.mul[ps[ui, k], pts[xi, k]])
        cnt = np.bincount(ui[vals != 0], minlength=n_pts).astype(np.int64)
    else:
        cgr = space.conj_gram_rows()
        cnt = np.zeros(n_pts, dtype=np.int64)
        block = max(1, 2_000_000 // max(n_pts, 1))
        for lo in range(0, n_pts, block):
            hi = min(n_pts, lo + block)
            eta = np.zeros((hi - lo, n_pts), dtype=np.uint8)
            val = np.zeros((hi - lo, n_pts), dtype=np.uint8)
            for k in range(space.m):
                eta = fadd(ctx, eta, ctx.mul[cgr[lo:hi, k][:, None], pts[:, k][None, :]])
                val = fadd(ctx, val, ctx.mul[ps[lo:hi, k][:, None], pts[:, k][None, :]])
            cnt[lo:hi] = ((eta == 0) & (val != 0)).sum(axis=1)
    if (cnt % q2).any():
        raise RuntimeError("pair count not divisible by q^2; arithmetic bug")
    return cnt // q2


def point_weight(phi: AlternatingForm, space: polar.HermitianSpace, u) -> int:
    """Per-point line count at a single isotropic vector u."""
    ctx = space.ctx
    u = np.asarray(u, dtype=np.uint8).reshape(-1)
    if u.size != space.m:
        raise ValueError("vector length does not match the space")
    if space.inner(u, u) != 0:
        raise ValueError("u is not isotropic")
    pts = space.points()
    us = linalg.matvec(ctx, phi.s.T, u)  # row u^T S
    cu = linalg.matvec(ctx, space.gram.T, ctx.frob[u])  # row conj(u)^T H
    eta = np.zeros(len(pts), dtype=np.uint8)
    val = np.zeros(len(pts), dtype=np.uint8)
    for k in range(space.m):
        if cu[k]:
            eta = fadd(ctx, eta, ctx.mul[cu[k], pts[:, k]])
        if us[k]:
            val = fadd(ctx, val, ctx.mul[us[k], pts[:, k]])
    cnt = int(((eta == 0) & (val != 0)).sum())
    if cnt % ctx.q2:
        raise RuntimeError("pair count not divisible by q^2; arithmetic bug")
    return cnt // ctx.q2


def weight_recursive(phi: AlternatingForm, space: polar.HermitianSpace) -> int:
    """Weight recovered from the per-point line counts.

    Summing the counts over all isotropic vectors (q^2 - 1 per point)
    counts every non-annihilated line once per nonzero vector on it,
    q^4 - 1 times in total.  The division must be exact; a nonzero
    remainder would expose an arithmetic bug.
    """
    q2 = space.ctx.q2
    total = int(point_weights(phi, space).sum()) * (q2 - 1)
    den = q2 * q2 - 1
    if total % den:
        raise RuntimeError("vector sum not divisible by q^4 - 1; arithmetic bug")
    return total // den


# -- form indexing and files ------------------------------------------------


def form_from_index(ctx: FieldCtx, m: int, n: int) -> AlternatingForm:
    """Form at position n of the mixed-radix counter over the upper
    triangle (most significant digit = first pair)."""
    k = m * (m - 1) // 2
    q2 = ctx.q2
    if not 0 <= n < q2**k:
        raise ValueError("index out of range")
    digits = np.zeros(k, dtype=np.uint8)
    for pos in range(k - 1, -1, -1):
        digits[pos] = n % q2
        n //= q2
    return AlternatingForm.from_upper(ctx, m, digits)


def form_to_index(phi: AlternatingForm) -> int:
    n = 0
    q2 = phi.ctx.q2
    for d in phi.upper():
        n = n * q2 + int(d)
    return n


def write_form_json(f, phi: AlternatingForm) -> None:
    json.dump(
        {
            "m": phi.m,
            "p": phi.ctx.p,
            "e": phi.ctx.e,
            "upper": [int(x) for x in phi.upper()],
        },
        f,
        sort_keys=True,
    )
    f.write("\n")


def read_form_json(f, ctx: FieldCtx | None = None) -> AlternatingForm:
    try:
        data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed form file: {exc}") from None
    for key in ("m", "p", "e", "upper"):
        if key not in data:
            raise ValueError(f"malformed form file: missing {key!r}")
    if ctx is None:
        ctx = make_field(int(data["p"]), int(data["e"]))
    elif (ctx.p, ctx.e) != (int(data["p"]), int(data["e"])):
        raise ValueError("form file field does not match the requested field")
    m = int(data["m"])
    upper = data["upper"]
    if any(not isinstance(x, int) or not 0 <= x < ctx.q2 for x in upper):
        raise ValueError("malformed form file: upper entries out of range")
    return AlternatingForm.from_upper(ctx, m, upper)


# -- spectrum scans ---------------------------------------------------------


@dataclass
class SpectrumReport:
    """Weight histogram of a scan over alternating forms.

    In exhaustive mode the histogram covers all q^(2K) forms and
    ``min_weight_radical_dims`` maps radical dimension to the number
    of minimum-weight forms with that radical.  Sample mode reports
    the seeded sample only.
    """

    mode: str
    m: int
    q: int
    histogram: dict[int, int]
    forms_scanned: int
    seed: int | None
    wall_time_s: float
    min_nonzero_weight: int | None
    min_weight_example: list[int] | None
    min_weight_radical_dims: dict[int, int] | None = None
    _min_indices: np.ndarray | None = field(default=None, repr=False)


def _scan_block(mul_rows, add_table, xor, powers, q2, n_cols, lo, hi, chunk=4096):
    """Histogram + minimum tracking for counter indices [lo, hi)."""
    hist = np.zeros(n_cols + 1, dtype=np.int64)
    best_w: int | None = None
    best_idx: list[np.ndarray] = []
    k = len(powers)
    for start in range(lo, hi, chunk):
        idx = np.arange(start, min(hi, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % q2
        c = mul_rows[digits[:, 0], 0].copy()
        for t in range(1, k):
            term = mul_rows[digits[:, t], t]
            if xor:
                np.bitwise_xor(c, term, out=c)
            else:
                c = add_table[c, term]
        w = np.count_nonzero(c, axis=1)
        hist += np.bincount(w, minlength=n_cols + 1)
        nz = w > 0
        if nz.any():
            local = int(w[nz].min())
            if best_w is None or local < best_w:
                best_w = local
                best_idx = []
            if local == best_w:
                best_idx.append(idx[nz & (w == local)])
    merged = np.concatenate(best_idx) if best_idx else np.zeros(0, dtype=np.int64)
    return hist, best_w, merged


def _scan_worker(args):
    mul_rows, add_table, xor, powers, q2, n_cols, lo, hi = args
    return _scan_block(mul_rows, add_table, xor, powers, q2, n_cols, lo, hi)


def spectrum(
    system: ProjectiveSystem,
    mode: str = "exhaustive",
    budget: int = 1 << 24,
    seed: int | None = 1,
    samples: int | None = None,
    jobs: int = 1,
    radical_dims: bool = True,
) -> SpectrumReport:
    """Weight histogram over alternating forms.

    Exhaustive mode scans all q^(2K) forms and requires that count to
    fit in the budget.  Sample mode draws ``samples`` uniform nonzero
    forms from numpy's default PCG64 generator seeded with ``seed``;
    the seed is recorded in the report.  Histograms are merged
    associatively, so the result does not depend on the worker count.
    """
    ctx = system.ctx
    q2 = ctx.q2
    k, n = system.k, system.n
    m = system.space.m
    started = time.perf_counter()
    mul_rows = ctx.mul[np.arange(q2, dtype=np.intp)[:, None, None], system.matrix[None, :, :]]
    xor = ctx.p == 2
    add_table = None if xor else ctx.add

    if mode == "exhaustive":
        total = q2**k
        if total > budget:
            raise ValueError(f"exhaustive scan of {total} forms exceeds budget {budget}")
        powers = q2 ** np.arange(k - 1, -1, -1, dtype=np.int64)
        if jobs > 1 and total >= 4 * q2:
            splits = q2 * q2 if (jobs > q2 and k >= 2) else q2
            block = total // splits
            tasks = [
                (mul_rows, add_table, xor, powers, q2, n, d * block, (d + 1) * block)
                for d in range(splits)
            ]
            with multiprocessing.get_context("fork").Pool(processes=jobs) as pool:
                parts = pool.map(_scan_worker, tasks)
        else:
            parts = [_scan_block(mul_rows, add_table, xor, powers, q2, n, 0, total)]
        hist = np.zeros(n + 1, dtype=np.int64)
        best_w = None
        best_idx: list[np.ndarray] = []
        for h, w, idx in parts:
            hist += h
            if w is None:
                continue
            if best_w is None or w < best_w:
                best_w = w
                best_idx = []
            if w == best_w:
                best_idx.append(idx)
        min_idx = np.concatenate(best_idx) if best_idx else np.zeros(0, dtype=np.int64)
        rad_counts = None
        example = None
        if best_w is not None and min_idx.size:
            example = [int(x) for x in form_from_index(ctx, m, int(min_idx[0])).upper()]
            if radical_dims:
                rad_counts = {}
                for i in min_idx:
                    phi = form_from_index(ctx, m, int(i))
                    rd = phi.rad_dim
                    rad_counts[rd] = rad_counts.get(rd, 0) + 1
        report = SpectrumReport(
            mode="exhaustive",
            m=m,
            q=ctx.q,
            histogram={int(w): int(c) for w, c in enumerate(hist) if c},
            forms_scanned=total,
            seed=None,
            wall_time_s=time.perf_counter() - started,
            min_nonzero_weight=best_w,
            min_weight_example=example,
            min_weight_radical_dims=rad_counts,
            _min_indices=min_idx,
        )
        return report

    if mode == "sample":
        if not samples or samples < 1:
            raise ValueError("sample mode needs a positive sample count")
        rng = np.random.default_rng(seed)
        hist = np.zeros(n + 1, dtype=np.int64)
        best_w = None
        best_upper = None
        remaining = samples
        chunk = 4096
        while remaining:
            b = min(chunk, remaining)
            digits = rng.integers(0, q2, size=(b, k), dtype=np.uint8)
            zero = ~digits.any(axis=1)
            while zero.any():
                digits[zero] = rng.integers(0, q2, size=(int(zero.sum()), k), dtype=np.uint8)
                zero = ~digits.any(axis=1)
            c = mul_rows[digits[:, 0], 0].copy()
            for t in range(1, k):
                term = mul_rows[digits[:, t], t]
                if xor:
                    np.bitwise_xor(c, term, out=c)
                else:
                    c = add_table[c, term]
            w = np.count_nonzero(c, axis=1)
            hist += np.bincount(w, minlength=n + 1)
            local = int(w.min())
            if best_w is None or local < best_w:
                best_w = local
                best_upper = [int(x) for x in digits[int(w.argmin())]]
            remaining -= b
        return SpectrumReport(
            mode="sample",
            m=m,
            q=ctx.q,
            histogram={int(w): int(c) for w, c in enumerate(hist) if c},
            forms_scanned=samples,
            seed=seed,
            wall_time_s=time.perf_counter() - started,
            min_nonzero_weight=best_w,
            min_weight_example=best_upper,
        )

    raise ValueError(f"unknown mode {mode!r}")


def write_spectrum_csv(f, report: SpectrumReport) -> None:
    f.write("weight,count\n")
    for w in sorted(report.histogram):
        f.write(f"{w},{report.histogram[w]}\n")


def spectrum_metadata(report: SpectrumReport, wall_time: bool = True) -> dict:
    """Metadata dictionary for a scan; wall time is optional so written
    files can stay byte-identical between reruns."""
    meta = {
        "mode": report.mode,
        "m": report.m,
        "q": report.q,
        "seed": report.seed,
        "forms_scanned": report.forms_scanned,
        "min_nonzero_weight": report.min_nonzero_weight,
    }
    if report.min_weight_radical_dims is not None:
        meta["min_weight_radical_dims"] = {
            str(k): v for k, v in sorted(report.min_weight_radical_dims.items())
        }
    if wall_time:
        meta["wall_time_s"] = report.wall_time_s
    return meta


def min_distance(
    system: ProjectiveSystem,
    strategy: str = "exhaustive",
    seed: int = 1,
    samples: int = 100_000,
    budget: int = 1 << 24,
    jobs: int = 1,
) -> tuple[int, dict]:
    """Minimum distance with a certificate.

    "exhaustive" scans every nonzero form and returns the true minimum
    with a witness.  "construct+sample" returns the closed-form value,
    a constructed witness verified to achieve it, and a seeded sample
    showing no scanned form beats it.
    """
    ctx = system.ctx
    m = system.space.m
    params = code_params(m, ctx.q)
    if strategy == "exhaustive":
        rep = spectrum(system, mode="exhaustive", budget=budget, jobs=jobs, radical_dims=False)
        d = rep.min_nonzero_weight
        witness = form_from_index(ctx, m, int(rep._min_indices[0]))
        assert weight_direct(witness, system) == d
        cert = {
            "strategy": "exhaustive",
            "forms_scanned": rep.forms_scanned,
            "witness_upper": [int(x) for x in witness.upper()],
            "weight": d,
        }
        return d, cert
    if strategy == "construct+sample":
        from . import classify

        if m in (4, 6):
            witness = classify.make_permutable_form(system.space, system=system, seed=seed)
            kind = "permutable"
        else:
            witness = classify.make_rank2_cone_form(system.space, system=system, seed=seed)
            kind = "rank2-cone"
        wd = weight_direct(witness, system)
        if wd != params.d_min:
            raise RuntimeError(f"constructed witness has weight {wd}, expected {params.d_min}")
        rep = spectrum(system, mode="sample", seed=seed, samples=samples, jobs=jobs)
        cert = {
            "strategy": "construct+sample",
            "witness_kind": kind,
            "witness_upper": [int(x) for x in witness.upper()],
            "weight": wd,
            "samples": samples,
            "seed": seed,
            "sample_min_weight": rep.min_nonzero_weight,
        }
        if rep.min_nonzero_weight is not None and rep.min_nonzero_weight < wd:
            raise RuntimeError("sampled a form below the closed-form minimum; arithmetic bug")
        return params.d_min, cert
    raise ValueError(f"unknown strategy {strategy!r}")
