#!/usr/bin/env python3
# One codeword, three independent weight computations:
#   1. count nonzero positions of the codeword,
#   2. sum per-point line counts over all isotropic vectors and divide,
#   3. reconstruct from the sizes of the three point classes.

import numpy as np

from hermgrass import (
    AlternatingForm,
    HermitianSpace,
    build_system,
    classify_points,
    make_field,
    point_weight_values,
    point_weights,
    weight_direct,
    weight_recursive,
)

ctx = make_field(2, 1)
space = HermitianSpace(5, ctx)
system = build_system(space)

rng = np.random.default_rng(2024)
upper = rng.integers(0, 4, size=10, dtype=np.uint8)
phi = AlternatingForm.from_upper(ctx, 5, upper)
print("form upper triangle:", [int(x) for x in upper])
print("rank:", phi.rank, " radical dim:", phi.rad_dim)

w1 = weight_direct(phi, system)
w2 = weight_recursive(phi, space)
rep = classify_points(phi, space, system)
print("\nweight, three ways:")
print("  direct count      :", w1)
print("  per-point recursion:", w2)
print("  from class sizes  :", rep.weight_from_counts)
assert w1 == w2 == rep.weight_from_counts

zero_v, secant_v, tangent_v = point_weight_values(5, 2)
vals = point_weights(phi, space)
print("\nper-point line counts take only the three case values",
      (zero_v, secant_v, tangent_v))
for v in (zero_v, secant_v, tangent_v):
    print(f"  value {v}: {int((vals == v).sum())} points")
print("class sizes as vectors: A =", rep.A, " B =", rep.B, " C =", rep.C)
print("conservation A+B+C = (q^2-1) mu :", rep.A + rep.B + rep.C)
