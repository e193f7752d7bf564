#!/usr/bin/env python3
# A tour of the field layer: GF(q^2) tables, the conjugation x -> x^q,
# and the norm map down to GF(q).

import numpy as np

from hermgrass import frobenius, hermitian_norm, make_field

for p, e in [(2, 1), (3, 1), (2, 2)]:
    ctx = make_field(p, e)
    print(f"\n=== {ctx} ===")
    print("subfield GF(q) =", [int(x) for x in ctx.subfield])

    # conjugation is the unique order-2 automorphism fixing GF(q)
    fixed = [x for x in ctx.elements if frobenius(ctx, x) == x]
    print("fixed points of x -> x^q:", fixed)
    assert all(frobenius(ctx, frobenius(ctx, x)) == x for x in ctx.elements)

    # the norm x -> x^(q+1) is onto GF(q), each nonzero value hit q+1 times
    norms = np.array([hermitian_norm(ctx, x) for x in ctx.elements])
    for s in sorted(set(int(v) for v in norms)):
        print(f"norm fiber over {s}: {int((norms == s).sum())} elements")

ctx = make_field(2, 1)
print("\nGF(4) multiplication table:")
print(np.asarray(ctx.mul))
