"""Command line front end.

Subcommands: params, points, lines, genmat, weight, spectrum,
classify, bounds, min-word, verify.  Exit codes: 0 success, 1
verification failure, 2 usage error.

All randomized paths take a seed (default 1) and echo it into the
output metadata.  Identical invocations, seed included, write
byte-identical output files; wall-clock timing is reported on stderr
only.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np
from contextlib import nullcontext
from dataclasses import dataclass

from . import classify, code, pluecker, polar
from .ff import make_field

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

COMMANDS = (
    "params",
    "points",
    "lines",
    "genmat",
    "weight",
    "spectrum",
    "classify",
    "bounds",
    "min-word",
    "verify",
)


@dataclass(frozen=True)
class RunConfig:
    """Normalized run settings shared by all subcommands."""

    command: str
    budget: int
    seed: int
    samples: int | None
    out: str | None
    fmt: str
    jobs: int

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cfg = cls(
            command=args.command,
            budget=getattr(args, "budget", 1 << 24),
            seed=getattr(args, "seed", 1),
            samples=getattr(args, "samples", None) or getattr(args, "sample", None),
            out=getattr(args, "out", None),
            fmt=getattr(args, "fmt", "csv"),
            jobs=getattr(args, "jobs", 1),
        )
        if cfg.command not in COMMANDS:
            raise ValueError(f"unknown command {cfg.command!r}")
        if cfg.budget <= 0:
            raise ValueError("budget must be positive")
        if cfg.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if cfg.samples is not None and cfg.samples < 1:
            raise ValueError("sample count must be positive")
        return cfg


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return p, e


def _add_field_args(sp, with_m=True, m_range=False):
    if with_m:
        help_m = "space dimension m (range like 4..8 allowed)" if m_range else "space dimension m"
        sp.add_argument("-m", required=True, help=help_m)
    sp.add_argument("-q", type=int, help="shorthand for the subfield order (prime power)")
    sp.add_argument("-p", type=int, help="subfield characteristic")
    sp.add_argument("-e", type=int, help="subfield extension degree over GF(p)")


def _add_output_args(sp):
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hermgrass", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("params", help="N, K, d_min table over ranges of m and q")
    sp.add_argument("-m", required=True, help="dimension or range, like 4..8")
    sp.add_argument("-q", type=int, action="append", help="subfield order (repeatable)")
    sp.add_argument("-p", type=int)
    sp.add_argument("-e", type=int)
    _add_output_args(sp)

    for name, desc in (
        ("points", "dump the canonical isotropic point enumeration"),
        ("lines", "dump the canonical totally isotropic line enumeration"),
        ("genmat", "dump the generator matrix"),
    ):
        sp = sub.add_parser(name, help=desc)
        _add_field_args(sp)
        _add_output_args(sp)

    sp = sub.add_parser("weight", help="weights of one form, computed three ways")
    _add_field_args(sp, with_m=False)
    sp.add_argument("--form", required=True, help="form JSON file")
    _add_output_args(sp)

    sp = sub.add_parser("spectrum", help="weight histogram over forms")
    _add_field_args(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true", default=None)
    g.add_argument("--sample", type=int, metavar="N")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--budget", type=int, default=1 << 24)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    _add_output_args(sp)

    sp = sub.add_parser("classify", help="class sizes and cross-checks for one form")
    _add_field_args(sp, with_m=False)
    sp.add_argument("--form", required=True)
    _add_output_args(sp)

    sp = sub.add_parser("bounds", help="per-rank zero-class bounds and weight bounds")
    _add_field_args(sp)
    _add_output_args(sp)

    sp = sub.add_parser("min-word", help="minimum distance with certificate")
    _add_field_args(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--construct", action="store_true", default=None)
    g.add_argument("--exhaustive", action="store_true", default=None)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--budget", type=int, default=1 << 24)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    _add_output_args(sp)

    sp = sub.add_parser("verify", help="run every claim check feasible at (m, q)")
    _add_field_args(sp)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--budget", type=int, default=1 << 24)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    return ap


def _resolve_field(args) -> tuple[int, int]:
    q = getattr(args, "q", None)
    p = getattr(args, "p", None)
    e = getattr(args, "e", None)
    if isinstance(q, list):
        raise ValueError("internal: list q must be handled by the caller")
    if q is not None:
        if p is not None or e is not None:
            raise ValueError("give either -q or -p/-e, not both")
        return _factor_prime_power(q)
    if p is None:
        raise ValueError("a field is required: -q Q or -p P [-e E]")
    return p, e if e is not None else 1


def _open_out(path):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w")


# -- command handlers ---------------------------------------------------------


def cmd_params(args) -> int:
    m_values = _parse_range(args.m)
    if args.q:
        if args.p is not None or args.e is not None:
            raise ValueError("give either -q or -p/-e, not both")
        q_values = list(args.q)
    else:
        p = args.p
        if p is None:
            raise ValueError("params needs -q or -p/-e")
        e = args.e if args.e is not None else 1
        q_values = [p**e]
    rows = []
    for q in q_values:
        _factor_prime_power(q)
        for m in m_values:
            cp = code.code_params(m, q)
            rows.append(cp)
    with _open_out(args.out) as f:
        if args.fmt == "json":
            json.dump(
                [{"m": r.m, "q": r.q, "N": r.n, "K": r.k, "d_min": r.d_min} for r in rows],
                f,
                indent=2,
                sort_keys=True,
            )
            f.write("\n")
        else:
            f.write("m, q, N, K, d_min\n")
            for r in rows:
                f.write(f"{r.m}, {r.q}, {r.n}, {r.k}, {r.d_min}\n")
    return EXIT_OK


def _space_for(args) -> polar.HermitianSpace:
    p, e = _resolve_field(args)
    ctx = make_field(p, e)
    m = _parse_range(args.m)
    if len(m) != 1:
        raise ValueError("this command takes a single m")
    return polar.HermitianSpace(m[0], ctx)


def cmd_points(args) -> int:
    space = _space_for(args)
    with _open_out(args.out) as f:
        if args.fmt == "json":
            json.dump(
                {
                    "m": space.m,
                    "p": space.ctx.p,
                    "e": space.ctx.e,
                    "points": [[int(x) for x in row] for row in space.points()],
                },
                f,
                sort_keys=True,
            )
            f.write("\n")
        else:
            polar.write_points_csv(f, space)
    return EXIT_OK


def cmd_lines(args) -> int:
    space = _space_for(args)
    with _open_out(args.out) as f:
        if args.fmt == "json":
            a, b = space.line_bases()
            json.dump(
                {
                    "m": space.m,
                    "p": space.ctx.p,
                    "e": space.ctx.e,
                    "lines": [
                        [[int(x) for x in a[i]], [int(x) for x in b[i]]] for i in range(len(a))
                    ],
                },
                f,
                sort_keys=True,
            )
            f.write("\n")
        else:
            polar.write_lines_csv(f, space)
    return EXIT_OK


def cmd_genmat(args) -> int:
    space = _space_for(args)
    system = pluecker.build_system(space)
    with _open_out(args.out) as f:
        pluecker.write_genmat(f, system)
    return EXIT_OK


def _load_form(args):
    p, e = _resolve_field(args)
    ctx = make_field(p, e)
    with open(args.form) as f:
        phi = code.read_form_json(f, ctx)
    return ctx, phi


def cmd_weight(args) -> int:
    ctx, phi = _load_form(args)
    space = polar.HermitianSpace(phi.m, ctx)
    system = pluecker.build_system(space)
    wd = code.weight_direct(phi, system)
    wr = code.weight_recursive(phi, space)
    if phi.is_zero():
        wfc = 0
    else:
        rep = classify.classify_points(phi, space, system)
        wfc = rep.weight_from_counts
    payload = {
        "m": phi.m,
        "q": ctx.q,
        "weight_direct": wd,
        "weight_recursive": wr,
        "weight_from_counts": wfc,
        "agree": wd == wr == wfc,
    }
    with _open_out(args.out) as f:
        if args.fmt == "json":
            json.dump(payload, f, sort_keys=True)
            f.write("\n")
        else:
            f.write("route,weight\n")
            f.write(f"direct,{wd}\nrecursive,{wr}\nfrom_counts,{wfc}\n")
    if not payload["agree"]:
        print("weight routes disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args) -> int:
    space = _space_for(args)
    system = pluecker.build_system(space)
    if args.sample is not None:
        rep = code.spectrum(
            system, mode="sample", seed=args.seed, samples=args.sample, jobs=args.jobs
        )
    else:
        rep = code.spectrum(system, mode="exhaustive", budget=args.budget, jobs=args.jobs)
    meta = code.spectrum_metadata(rep, wall_time=False)
    with _open_out(args.out) as f:
        if args.fmt == "json":
            json.dump(
                {"histogram": {str(k): v for k, v in sorted(rep.histogram.items())}, "meta": meta},
                f,
                indent=2,
                sort_keys=True,
            )
            f.write("\n")
        else:
            code.write_spectrum_csv(f, rep)
            if args.out:
                with open(args.out + ".meta.json", "w") as mf:
                    json.dump(meta, mf, indent=2, sort_keys=True)
                    mf.write("\n")
            else:
                f.write(json.dumps(meta, sort_keys=True) + "\n")
    print(
        f"spectrum: {rep.forms_scanned} forms in {rep.wall_time_s:.2f}s "
        f"(mode={rep.mode}, seed={rep.seed})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    ctx, phi = _load_form(args)
    if phi.is_zero():
        raise ValueError("the zero form has no classification report")
    space = polar.HermitianSpace(phi.m, ctx)
    system = pluecker.build_system(space)
    rep = classify.classify_points(phi, space, system)
    payload = {
        "A": rep.A,
        "B": rep.B,
        "C": rep.C,
        "radDim": rep.rad_dim,
        "profile": rep.profile.label,
        "fixCount": rep.fix_count,
        "weightFromABC": rep.weight_from_counts,
        "weightDirect": rep.weight_direct,
        "checks": rep.checks,
    }
    with _open_out(args.out) as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return EXIT_OK if all(rep.checks.values()) else EXIT_FAIL


def cmd_bounds(args) -> int:
    p, e = _resolve_field(args)
    q = p**e
    m = _parse_range(args.m)
    if len(m) != 1:
        raise ValueError("bounds takes a single m")
    table = classify.bound_table(m[0], q)
    with _open_out(args.out) as f:
        if args.fmt == "json":
            json.dump(
                {
                    "m": table.m,
                    "q": table.q,
                    "rows": [
                        {
                            "i": r.i,
                            "xi": r.xi,
                            "muMax": r.mu_max,
                            "dLower": math.ceil(r.d_lower),
                        }
                        for r in table.rows
                    ],
                },
                f,
                indent=2,
                sort_keys=True,
            )
            f.write("\n")
        else:
            classify.write_bounds_csv(f, table)
    return EXIT_OK


def cmd_min_word(args) -> int:
    space = _space_for(args)
    system = pluecker.build_system(space)
    strategy = "exhaustive" if args.exhaustive else "construct+sample"
    d, cert = code.min_distance(
        system,
        strategy=strategy,
        seed=args.seed,
        samples=args.samples,
        budget=args.budget,
        jobs=args.jobs,
    )
    with _open_out(args.out) as f:
        json.dump({"d_min": d, "certificate": cert}, f, indent=2, sort_keys=True)
        f.write("\n")
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _verify_checks(space, seed: int, samples: int, budget: int, jobs: int):
    """Yield (name, ok, detail) for every claim feasible at this size."""
    ctx = space.ctx
    m, q = space.m, ctx.q
    params = code.code_params(m, q)

    n_points = space.num_points
    yield (
        "point count",
        n_points == polar.isotropic_point_count(m, q),
        f"{n_points} isotropic points",
    )
    n_lines = space.num_lines
    yield ("line count", n_lines == params.n, f"{n_lines} totally isotropic lines")
    system = pluecker.build_system(space)
    yield ("generator rank", system.k == params.k, f"rank {system.k} = C(m,2)")

    table = classify.bound_table(m, q)
    maxima = table.max_indices()
    if m in (4, 6):
        ok = maxima == [m // 2]
    elif m == 5:
        ok = sorted(maxima) == [1, 2]
    else:
        ok = maxima == [1]
    yield ("bound table maximum", ok, f"max at i={maxima}")

    rng = np.random.default_rng(seed)
    values = set(code.point_weight_values(m, q))
    all_ok = True
    bound_ok = True
    detail = ""
    for _ in range(samples):
        upper = rng.integers(0, ctx.q2, size=params.k, dtype=np.uint8)
        if not upper.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, m, upper)
        wd = code.weight_direct(phi, system)
        wr = code.weight_recursive(phi, space)
        rep = classify.classify_points(phi, space, system)
        pw = set(int(x) for x in np.unique(code.point_weights(phi, space)))
        if not (wd == wr == rep.weight_from_counts and rep.checks["conservation"]):
            all_ok = False
            detail = f"disagreement at upper={list(map(int, upper))}"
            break
        if not pw <= values:
            all_ok = False
            detail = f"per-point value outside the case set: {sorted(pw)}"
            break
        i = phi.rank // 2
        if wd < classify.stratum_weight_bound(m, i, q):
            bound_ok = False
    yield ("three weight routes + conservation + case values", all_ok, detail or f"{samples} seeded forms")
    yield ("per-rank lower bounds", bound_ok, "weights >= stratum bounds")

    if m >= 5:
        witness = classify.make_rank2_cone_form(space, system=system, seed=seed)
        w = code.weight_direct(witness, system)
        expect = classify.rank2_cone_weight(m, q)
        yield ("rank-2 cone witness", w == expect, f"weight {w}")
        if m % 2 or m >= 8:
            ok, why = classify.check_min_weight_profile(witness, space, w)
            yield ("minimum-word profile (rank-2)", ok, why)
    if m in (4, 6):
        witness = classify.make_permutable_form(space, system=system, seed=seed)
        w = code.weight_direct(witness, system)
        yield ("permutable witness", w == params.d_min, f"weight {w}")
        ok, why = classify.check_min_weight_profile(witness, space, w)
        yield ("minimum-word profile (permutable)", ok, why)

    total = ctx.q2**params.k
    if total <= budget:
        rep = code.spectrum(system, mode="exhaustive", budget=budget, jobs=jobs)
        yield (
            "exhaustive minimum distance",
            rep.min_nonzero_weight == params.d_min,
            f"min weight {rep.min_nonzero_weight} over {total} forms",
        )
        if (m, q) == (5, 2):
            ok = (
                sorted(rep.histogram) == [0, 192, 216, 224, 232, 256]
                and rep.histogram[192] == 24948
                and rep.min_weight_radical_dims == {3: 5940, 1: 19008}
            )
            yield (
                "exhaustive (5,2) spectrum",
                ok,
                f"weights {sorted(rep.histogram)}, "
                f"min multiplicity {rep.histogram.get(192)}, "
                f"radical split {rep.min_weight_radical_dims}",
            )


def cmd_verify(args) -> int:
    space = _space_for(args)
    failures = 0
    for name, ok, detail in _verify_checks(space, args.seed, args.samples, args.budget, args.jobs):
        tag = "PASS" if ok else "FAIL"
        print(f"{tag} {name}: {detail}")
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_FAIL


_HANDLERS = {
    "params": cmd_params,
    "points": cmd_points,
    "lines": cmd_lines,
    "genmat": cmd_genmat,
    "weight": cmd_weight,
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "bounds": cmd_bounds,
    "min-word": cmd_min_word,
    "verify": cmd_verify,
}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        RunConfig.from_args(args)
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
