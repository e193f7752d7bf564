import numpy as np
import pytest
from fractions import Fraction

import hermgrass as hg
from hermgrass import classify, code, linalg, polar


def _symplectic_block(ctx, m):
    s = np.zeros((m, m), dtype=np.uint8)
    for b in range(0, m, 2):
        s[b, b + 1] = 1
        s[b + 1, b] = ctx.neg[1]
    return code.AlternatingForm(ctx, s)


def test_polar_image_kernel_and_symplectic(space42):
    ctx = space42.ctx
    phi = _symplectic_block(ctx, 4)
    e0 = np.array([1, 0, 0, 0], dtype=np.uint8)
    img = classify.polar_image(phi, space42, e0)
    assert np.array_equal(img, np.array([0, 1, 0, 0], dtype=np.uint8))
    # involution: prime-subfield S with S^2 = -I acts projectively as identity
    rng = np.random.default_rng(6)
    for _ in range(10):
        x = rng.integers(0, 4, size=4, dtype=np.uint8)
        if not x.any():
            continue
        y = classify.polar_image(phi, space42, x)
        z = classify.polar_image(phi, space42, y)
        lead = np.nonzero(x)[0][0]
        xn = ctx.mul[ctx.inv[x[lead]], x]
        assert np.array_equal(z, xn)


def test_polar_image_kernel_case(space52):
    phi = hg.make_rank2_cone_form(space52)
    rad = phi.radical.basis
    assert classify.polar_image(phi, space52, rad[0]) is None


def test_polar_image_general_composition_oracle(space52):
    """The fast path must match an explicit perp-then-perp composition."""
    ctx = space52.ctx
    rng = np.random.default_rng(9)
    for _ in range(10):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        if not up.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        x = space52.points()[int(rng.integers(0, space52.num_points))]
        row = linalg.matvec(ctx, phi.s.T, x)
        img = classify.polar_image(phi, space52, x)
        if not row.any():
            assert img is None
            continue
        hyper = linalg.kernel(ctx, row.reshape(1, -1))
        pole = polar.perp(space52, hyper)
        assert pole.dim == 1
        lead = np.nonzero(pole.basis[0])[0][0]
        expect = ctx.mul[ctx.inv[pole.basis[0][lead]], pole.basis[0]]
        assert np.array_equal(img, expect)


def test_polar_image_non_identity_gram(ctx2):
    h = np.zeros((4, 4), dtype=np.uint8)
    for i in range(4):
        h[i, 3 - i] = 1
    space = hg.HermitianSpace(4, ctx2, gram=h)
    phi = _symplectic_block(ctx2, 4)
    x = space.points()[3]
    img = classify.polar_image(phi, space, x)
    # defining property: the image is orthogonal to the polar hyperplane of x
    hyper = linalg.kernel(ctx2, linalg.matvec(ctx2, phi.s.T, x).reshape(1, -1))
    for row in hyper.basis:
        assert space.inner(row, img) == 0


def test_point_classes_match_point_weight_cases(space52, system52):
    ctx = space52.ctx
    zero_v, secant_v, tangent_v = code.point_weight_values(5, 2)
    rng = np.random.default_rng(20)
    for _ in range(15):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        if not up.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        labels = classify.point_classes(phi, space52)
        vals = code.point_weights(phi, space52)
        assert np.all(vals[labels == classify.ZERO_CLASS] == zero_v)
        assert np.all(vals[labels == classify.SECANT_CLASS] == secant_v)
        assert np.all(vals[labels == classify.TANGENT_CLASS] == tangent_v)


def test_zero_form_has_no_classification(space42):
    zero = code.AlternatingForm(space42.ctx, np.zeros((4, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        classify.point_classes(zero, space42)


def test_classification_reports(space42, system42, space43, system43):
    rep = classify.classify_points(hg.make_permutable_form(space42), space42, system42)
    assert (rep.A, rep.B, rep.C) == (45, 0, 90)
    assert rep.fix_count == 15
    assert rep.rad_dim == 0
    assert rep.weight_from_counts == rep.weight_direct == 12
    assert rep.checks == {"conservation": True, "weight_agreement": True}
    rep3 = classify.classify_points(hg.make_permutable_form(space43), space43, system43)
    assert (rep3.A, rep3.B) == (320, 0)
    assert rep3.weight_direct == 72


def test_classify_without_system_uses_recursive_route(space42):
    phi = hg.make_permutable_form(space42)
    rep = classify.classify_points(phi, space42)
    assert rep.weight_direct == 12


def test_weight_from_class_counts(ctx2):
    mu = polar.isotropic_point_count(4, 2)
    total = 3 * mu
    assert classify.weight_from_class_counts(4, 2, total, 0, 0) == 0
    assert classify.weight_from_class_counts(4, 2, 45, 0, 90) == 12
    with pytest.raises(ValueError):
        classify.weight_from_class_counts(4, 2, 1, 2, 3)
    with pytest.raises(ValueError):
        classify.weight_from_class_counts(4, 2, total - 2, 1, 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_zero_class_bound_polynomials(q):
    assert classify.zero_class_bound(4, 1, q) == q**4 + q**3 + q**2 - q - 2
    assert classify.zero_class_bound(4, 2, q) == q**5 + q**4 - q - 1
    x51 = classify.zero_class_bound(5, 1, q)
    assert x51 == q**5 + q**4 + q**2 - q - 2
    assert classify.zero_class_bound(5, 2, q) == x51
    assert classify.zero_class_bound(6, 1, q) == q**7 + q**6 - q**5 + q**3 + q**2 - q - 2
    assert classify.zero_class_bound(6, 2, q) == q**5 + 2 * q**4 - q - 2
    assert classify.zero_class_bound(6, 3, q) == q**7 + q**6 - q - 1


def test_bound_table_orderings_small():
    t4 = classify.bound_table(4, 2)
    assert t4.max_indices() == [2]
    t5 = classify.bound_table(5, 2)
    assert sorted(t5.max_indices()) == [1, 2]
    t6 = classify.bound_table(6, 2)
    assert t6.max_indices() == [3] and t6.second_index() == 1
    t7 = classify.bound_table(7, 2)
    assert t7.max_indices() == [1] and t7.second_index() == 3


def test_stratum_weight_bound_values():
    assert classify.stratum_weight_bound(4, 2, 2) == 12
    assert classify.stratum_weight_bound(4, 1, 2) == Fraction(74, 5)


def test_bounds_csv(tmp_path):
    table = classify.bound_table(6, 2)
    path = tmp_path / "bounds.csv"
    with open(path, "w") as f:
        classify.write_bounds_csv(f, table)
    lines = path.read_text().splitlines()
    assert lines[0] == "i,xi,muMax,dLower"
    assert lines[3] == "3,189,0,4032"


def test_rank2_witness_52(space52, system52):
    phi = hg.make_rank2_cone_form(space52, system=system52)
    assert phi.rank == 2 and phi.rad_dim == 3
    assert polar.radical_profile(space52, phi.radical).label == "[Pi_1]H_2"
    assert code.weight_direct(phi, system52) == 192


def test_rank2_witness_62(space62, system62):
    phi = hg.make_rank2_cone_form(space62, system=system62)
    prof = polar.radical_profile(space62, phi.radical)
    assert prof.label == "[Pi_2]H_2"
    # the vertex of the cone is totally isotropic
    gram_rows = linalg.matmul(space62.ctx, space62.ctx.frob[phi.radical.basis], space62.gram)
    vertex = linalg.kernel(space62.ctx, linalg.matmul(space62.ctx, gram_rows, phi.radical.basis.T))
    assert vertex.dim == 2
    assert code.weight_direct(phi, system62) == 4096


def test_rank2_witness_rejects_small_m(space42):
    with pytest.raises(ValueError):
        hg.make_rank2_cone_form(space42)


@pytest.mark.parametrize("m,want_t", [(7, 1), (8, 2), (9, 1), (11, 1), (10, 2)])
def test_rank2_witness_profiles_scale_with_m(ctx2, m, want_t):
    # profile certification needs no line enumeration, so large m is cheap
    space = hg.HermitianSpace(m, ctx2)
    phi = hg.make_rank2_cone_form(space)
    assert phi.rank == 2
    prof = polar.radical_profile(space, phi.radical)
    assert prof.t == want_t and prof.dim == m - 2


def test_permutable_witness_62(space62, system62):
    phi = hg.make_permutable_form(space62, system=system62)
    rep = classify.classify_points(phi, space62, system62)
    assert rep.A == (2**6 - 1) * 3 == 189
    assert rep.B == 0
    assert rep.fix_count == 63
    assert rep.weight_direct == 4032


def test_permutable_rejects_other_m(space52):
    with pytest.raises(ValueError):
        hg.make_permutable_form(space52)


@pytest.mark.parametrize("p,e", [(2, 2), (5, 1)])
def test_weight_routes_and_witness_on_headroom_fields(p, e):
    ctx = hg.make_field(p, e)
    q = ctx.q
    space = hg.HermitianSpace(4, ctx)
    system = hg.build_system(space)
    perm = hg.make_permutable_form(space, system=system)
    assert code.weight_direct(perm, system) == q**4 - q**2 == code.code_params(4, q).d_min
    rng = np.random.default_rng(p * 100 + e)
    for _ in range(5):
        upper = rng.integers(0, ctx.q2, size=6, dtype=np.uint8)
        if not upper.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, 4, upper)
        wd = code.weight_direct(phi, system)
        assert wd == code.weight_recursive(phi, space)
        assert wd == classify.classify_points(phi, space, system).weight_from_counts


def test_check_min_weight_profile(space42, space52, space62, system42, system52, system62):
    perm = hg.make_permutable_form(space42, system=system42)
    ok, why = classify.check_min_weight_profile(perm, space42, 12)
    assert ok, why
    cone = hg.make_rank2_cone_form(space52, system=system52)
    ok, why = classify.check_min_weight_profile(cone, space52, 192)
    assert ok, why
    cone62 = hg.make_rank2_cone_form(space62, system=system62)
    with pytest.raises(ValueError):
        classify.check_min_weight_profile(cone62, space62, 4096)


def test_min_profile_accepts_rank4_minimum_words_at_52(space52, system52):
    # at (5, 2) minimum words exist with a 1-dimensional radical too
    ctx = space52.ctx
    rng = np.random.default_rng(77)
    found = 0
    for _ in range(3000):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        if not up.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        if code.weight_direct(phi, system52) != 192 or phi.rad_dim != 1:
            continue
        ok, why = classify.check_min_weight_profile(phi, space52, 192)
        assert ok, why
        found += 1
        if found >= 3:
            break
    assert found >= 3


def test_fixed_point_lemma_rank4_at_52(space52):
    """Rank-4 forms on V(5): the fixed set of the composed polarity is
    either a full subplane-geometry, q^3 + q^2 + q + 1 points, or has
    at most q^2 + q + 2 points."""
    ctx = space52.ctx
    q = ctx.q
    rng = np.random.default_rng(33)
    full = (q**4 - 1) // (q - 1)
    seen = 0
    for _ in range(200):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        if not up.any():
            continue
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        if phi.rank != 4:
            continue
        seen += 1
        fc = classify.fixed_point_count(phi, space52)
        assert fc == full or fc <= q * q + q + 2
    assert seen > 50
