import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hermgrass as hg
from hermgrass import code, linalg, polar


def test_params_table():
    cases = {
        (4, 2): (27, 6, 12),
        (5, 2): (297, 10, 192),
        (6, 2): (6237, 15, 4032),
        (7, 2): (89397, 21, 61440),
        (8, 2): (1519749, 28, 1048576),
        (4, 3): (112, 6, 72),
        (5, 3): (6832, 10, 5832),
    }
    for (m, q), (n, k, d) in cases.items():
        cp = code.code_params(m, q)
        assert (cp.n, cp.k, cp.d_min) == (n, k, d)
    with pytest.raises(ValueError):
        code.code_params(3, 2)


def test_alternating_form_validation(ctx3):
    s = np.zeros((3, 3), dtype=np.uint8)
    s[0, 0] = 1
    with pytest.raises(ValueError):
        code.AlternatingForm(ctx3, s)
    s = np.zeros((3, 3), dtype=np.uint8)
    s[0, 1] = 1
    s[1, 0] = 1  # should be -1 = 2 over GF(9)
    with pytest.raises(ValueError):
        code.AlternatingForm(ctx3, s)
    s[1, 0] = ctx3.neg[1]
    phi = code.AlternatingForm(ctx3, s)
    assert phi.rank == 2 and phi.rad_dim == 1


def test_upper_round_trip(ctx2):
    rng = np.random.default_rng(1)
    for _ in range(20):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        phi = code.AlternatingForm.from_upper(ctx2, 5, up)
        assert np.array_equal(phi.upper(), up)
    assert code.AlternatingForm.from_upper(ctx2, 5, np.zeros(10, dtype=np.uint8)).rank == 0


def test_evaluate_equals_pluecker_pairing(space52, system52):
    ctx = space52.ctx
    rng = np.random.default_rng(3)
    a, b = space52.line_bases()
    for _ in range(20):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        j = int(rng.integers(0, len(a)))
        val = code.evaluate(phi, np.stack([a[j], b[j]]))
        col = system52.omega_column(j)
        acc = 0
        for k in range(10):
            acc = ctx.add_s(acc, ctx.mul_s(up[k], col[k]))
        assert val == acc


def test_evaluate_zero_form_and_scaled_basis(space42):
    ctx = space42.ctx
    zero = code.AlternatingForm(ctx, np.zeros((4, 4), dtype=np.uint8))
    a, b = space42.line_bases()
    assert all(code.evaluate(zero, np.stack([a[i], b[i]])) == 0 for i in range(5))
    up = np.array([1, 2, 0, 3, 0, 1], dtype=np.uint8)
    phi = code.AlternatingForm.from_upper(ctx, 4, up)
    basis = np.stack([a[0], b[0]])
    scaled = np.stack([ctx.mul[3, a[0]], b[0]])
    assert code.evaluate(phi, scaled) == ctx.mul_s(3, code.evaluate(phi, basis))


def test_rank2_form_vanishes_exactly_on_lines_meeting_radical(space52, system52):
    ctx = space52.ctx
    phi = hg.make_rank2_cone_form(space52)
    rad = phi.radical.basis
    a, b = space52.line_bases()
    for j in range(system52.n):
        stacked = np.vstack([np.stack([a[j], b[j]]), rad])
        meets = linalg.rank(ctx, stacked) < 2 + rad.shape[0]
        val = code.evaluate(phi, np.stack([a[j], b[j]]))
        assert (val == 0) == meets


def test_codeword_zero_iff_zero_form(space42, system42):
    ctx = space42.ctx
    zero = code.AlternatingForm(ctx, np.zeros((4, 4), dtype=np.uint8))
    assert code.codeword(zero, system42).weight == 0
    rng = np.random.default_rng(8)
    for _ in range(30):
        up = rng.integers(0, 4, size=6, dtype=np.uint8)
        if not up.any():
            continue
        assert code.codeword(code.AlternatingForm.from_upper(ctx, 4, up), system42).weight > 0


CTX42 = hg.make_field(2, 1)
SPACE42 = hg.HermitianSpace(4, CTX42)
SYSTEM42 = hg.build_system(SPACE42)

uppers = st.lists(st.integers(0, 3), min_size=6, max_size=6)


@settings(deadline=None, max_examples=60)
@given(uppers, uppers, st.integers(1, 3))
def test_codeword_is_linear(u1, u2, alpha):
    ctx = CTX42
    f1 = code.AlternatingForm.from_upper(ctx, 4, u1)
    f2 = code.AlternatingForm.from_upper(ctx, 4, u2)
    s_sum = linalg.fadd(ctx, f1.s, f2.s)
    c1 = code.codeword(f1, SYSTEM42).values
    c2 = code.codeword(f2, SYSTEM42).values
    csum = code.codeword(code.AlternatingForm(ctx, s_sum), SYSTEM42).values
    assert np.array_equal(csum, linalg.fadd(ctx, c1, c2))
    cs = code.codeword(code.AlternatingForm(ctx, ctx.mul[alpha, f1.s]), SYSTEM42).values
    assert np.array_equal(cs, ctx.mul[alpha, c1])


def test_weight_scaling_invariance(space42, system42):
    ctx = space42.ctx
    up = np.array([1, 0, 2, 3, 0, 1], dtype=np.uint8)
    phi = code.AlternatingForm.from_upper(ctx, 4, up)
    w = code.weight_direct(phi, system42)
    for alpha in (2, 3):
        scaled = code.AlternatingForm(ctx, ctx.mul[alpha, phi.s])
        assert code.weight_direct(scaled, system42) == w


def test_weight_direct_against_per_line_loop(space42, system42):
    ctx = space42.ctx
    lines = polar.enumerate_lines(space42)
    rng = np.random.default_rng(4)
    for _ in range(15):
        up = rng.integers(0, 4, size=6, dtype=np.uint8)
        phi = code.AlternatingForm.from_upper(ctx, 4, up)
        naive = sum(1 for ln in lines if code.evaluate(phi, ln) != 0)
        assert code.weight_direct(phi, system42) == naive


def test_point_weight_cases(space52, system52):
    space = space52
    phi = hg.make_rank2_cone_form(space, system=system52)
    vals = code.point_weights(phi, space)
    assert set(int(v) for v in np.unique(vals)) == {0, 6, 8}
    assert code.point_weight_values(5, 2) == (0, 6, 8)
    # vectors of the radical meeting the variety sit in the zero class
    rad = phi.radical.basis
    for row in rad:
        if space.inner(row, row) == 0:
            assert code.point_weight(phi, space, row) == 0
    with pytest.raises(ValueError):
        code.point_weight(phi, space, np.array([1, 0, 0, 0, 0], dtype=np.uint8))


def test_point_weight_matches_vector_version(space52):
    rng = np.random.default_rng(12)
    ctx = space52.ctx
    pts = space52.points()
    up = rng.integers(0, 4, size=10, dtype=np.uint8)
    phi = code.AlternatingForm.from_upper(ctx, 5, up)
    vals = code.point_weights(phi, space52)
    for idx in rng.integers(0, len(pts), size=12):
        assert code.point_weight(phi, space52, pts[idx]) == int(vals[idx])


@pytest.mark.parametrize("seed,count", [(101, 60)])
def test_weight_recursive_agrees_with_direct(space52, system52, seed, count):
    ctx = space52.ctx
    rng = np.random.default_rng(seed)
    for _ in range(count):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        phi = code.AlternatingForm.from_upper(ctx, 5, up)
        assert code.weight_recursive(phi, space52) == code.weight_direct(phi, system52)


def test_weight_recursive_zero_form(space52):
    zero = code.AlternatingForm(space52.ctx, np.zeros((5, 5), dtype=np.uint8))
    assert code.weight_recursive(zero, space52) == 0


def test_point_weights_streaming_branch_matches_pairs(ctx2):
    # a fresh space whose pair cache is forced empty must stream and agree
    paired = hg.HermitianSpace(5, ctx2)
    streamed = hg.HermitianSpace(5, ctx2)
    assert streamed.orthogonal_point_pairs(max_pairs=1) is None
    rng = np.random.default_rng(55)
    for _ in range(5):
        up = rng.integers(0, 4, size=10, dtype=np.uint8)
        phi = code.AlternatingForm.from_upper(ctx2, 5, up)
        assert np.array_equal(
            code.point_weights(phi, paired), code.point_weights(phi, streamed)
        )


def test_form_index_round_trip(ctx3):
    for n in (0, 1, 500, 9**6 - 1):
        phi = code.form_from_index(ctx3, 4, n)
        assert code.form_to_index(phi) == n
    with pytest.raises(ValueError):
        code.form_from_index(ctx3, 4, 9**6)


def test_form_json_round_trip(ctx2):
    phi = code.AlternatingForm.from_upper(ctx2, 5, np.arange(10, dtype=np.uint8) % 4)
    buf = io.StringIO()
    code.write_form_json(buf, phi)
    buf.seek(0)
    again = code.read_form_json(buf, ctx2)
    assert again == phi
    with pytest.raises(ValueError):
        code.read_form_json(io.StringIO("not json"))
    with pytest.raises(ValueError):
        code.read_form_json(io.StringIO('{"m": 4, "p": 2, "e": 1}'))
    with pytest.raises(ValueError):
        code.read_form_json(io.StringIO('{"m": 4, "p": 2, "e": 1, "upper": [9,0,0,0,0,0]}'))
    with pytest.raises(ValueError):
        code.read_form_json(
            io.StringIO('{"m": 4, "p": 3, "e": 1, "upper": [0,0,0,0,0,0]}'), ctx2
        )


FROZEN_42_HISTOGRAM = {0: 1, 12: 108, 16: 81, 18: 720, 20: 1620, 22: 1296, 24: 270}


def test_exhaustive_spectrum_42(system42):
    rep = code.spectrum(system42, mode="exhaustive")
    assert rep.histogram == FROZEN_42_HISTOGRAM
    assert rep.forms_scanned == 4**6
    assert rep.min_nonzero_weight == 12
    assert sum(rep.histogram.values()) == 4**6
    assert rep.histogram[0] == 1


def test_exhaustive_codewords_all_distinct(system42):
    ctx = system42.ctx
    seen = {
        code.codeword(code.form_from_index(ctx, 4, n), system42).values.tobytes()
        for n in range(4**6)
    }
    assert len(seen) == 4**6


def test_exhaustive_spectrum_respects_budget(system62):
    with pytest.raises(ValueError):
        code.spectrum(system62, mode="exhaustive", budget=1 << 20)


def test_worker_partition_merges_identically(system42):
    r1 = code.spectrum(system42, mode="exhaustive", jobs=1)
    r2 = code.spectrum(system42, mode="exhaustive", jobs=2)
    assert r1.histogram == r2.histogram
    assert r1.min_weight_radical_dims == r2.min_weight_radical_dims


def test_worker_partition_odd_characteristic(system43):
    # odd p goes through the add-table path inside the workers
    r1 = code.spectrum(system43, mode="exhaustive", jobs=2, radical_dims=False)
    assert r1.min_nonzero_weight == 72
    assert sum(r1.histogram.values()) == 9**6


def test_sample_spectrum_reproducible(system42):
    r1 = code.spectrum(system42, mode="sample", seed=42, samples=500)
    r2 = code.spectrum(system42, mode="sample", seed=42, samples=500)
    assert r1.histogram == r2.histogram
    assert r1.forms_scanned == 500
    assert 0 not in r1.histogram
    assert r1.seed == 42


def test_spectrum_csv_and_metadata(system42):
    rep = code.spectrum(system42, mode="exhaustive")
    buf = io.StringIO()
    code.write_spectrum_csv(buf, rep)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "weight,count"
    assert lines[1] == "0,1"
    meta = code.spectrum_metadata(rep, wall_time=False)
    assert meta["mode"] == "exhaustive" and meta["forms_scanned"] == 4096
    assert "wall_time_s" not in meta
    assert "wall_time_s" in code.spectrum_metadata(rep)
    json.dumps(meta)


def test_min_distance_exhaustive(system42):
    d, cert = code.min_distance(system42, strategy="exhaustive")
    assert d == 12
    assert cert["strategy"] == "exhaustive"
    witness = code.AlternatingForm.from_upper(system42.ctx, 4, cert["witness_upper"])
    assert code.weight_direct(witness, system42) == 12


def test_min_distance_constructed(system62):
    d, cert = code.min_distance(system62, strategy="construct+sample", seed=5, samples=3000)
    assert d == 4032
    assert cert["witness_kind"] == "permutable"
    assert cert["weight"] == 4032
    assert cert["sample_min_weight"] >= 4032
    with pytest.raises(ValueError):
        code.min_distance(system62, strategy="guess")
