import pytest

from catalanregions.exactfield import Q, is_zero, sgn, sqrt2, sqrt3, tau
from catalanregions.rootsystem import (
    NonPositiveRatio,
    OddRatioNotOne,
    SystemSpec,
    build,
    evaluate,
    parse_spec,
)


def test_positive_root_counts():
    assert len(build(parse_spec("H3")).positives) == 15
    assert len(build(parse_spec("H4")).positives) == 60
    for m in range(2, 31):
        assert len(build(parse_spec(f"I2:{m}")).positives) == m


def test_backend_selection():
    assert build(parse_spec("H3")).field == "tau"
    assert build(parse_spec("H4")).field == "tau"
    assert build(parse_spec("I2:3")).field == "rational"
    assert build(parse_spec("I2:4")).field == "sqrt2"
    assert build(parse_spec("I2:5")).field == "tau"
    assert build(parse_spec("I2:6")).field == "sqrt3"
    assert build(parse_spec("I2:7")).field == "approx"
    assert build(parse_spec("H3", force_approx=True)).field == "approx"


def test_parse_spec_grammar():
    assert parse_spec("I2:6").ratio == 1
    assert parse_spec("I2:6:r=0.5").ratio == Q(1, 2)
    assert parse_spec("I2:8:r=sin(1)/sin(3)").ratio == ("sin", 1, 3)
    for bad in ("X5", "I2", "I2:1", "I2:6:0.5", "I2:6:r=sin(1)", "H5"):
        with pytest.raises(ValueError):
            parse_spec(bad)


def test_ratio_validation():
    with pytest.raises(OddRatioNotOne):
        build(SystemSpec("I2", 5, Q(1, 2)))
    with pytest.raises(NonPositiveRatio):
        build(SystemSpec("I2", 6, Q(-1)))


def test_spec_labels():
    assert parse_spec("H4").label() == "H4"
    assert parse_spec("I2:6").label() == "I2:6"
    assert parse_spec("I2:6:r=sin(1)/sin(2)").label() == "I2:6:r=sin(1)/sin(2)"


def test_i2_6_roots_match_closed_form():
    # with both simple roots of length 1 the mixed roots carry sqrt3 weights
    rs = build(parse_spec("I2:6"))
    s3 = sqrt3()
    one = rs.one
    zero = rs.zero
    expected = {
        (one, zero), (zero, one),
        (s3, one), (one, s3),
        (2 * one, s3), (s3, 2 * one),
    }
    got = {r.coeffs for r in rs.positives}
    assert got == expected


def test_i2_4_roots_match_closed_form():
    rs = build(parse_spec("I2:4"))
    s2 = sqrt2()
    one, zero = rs.one, rs.zero
    assert {r.coeffs for r in rs.positives} == {
        (one, zero), (zero, one), (s2, one), (one, s2)}


def test_reflection_closure_idempotent():
    for label in ("H3", "I2:5", "I2:7"):
        rs = build(parse_spec(label))
        all_coeffs = [r.coeffs for r in rs.positives]
        for c in all_coeffs:
            for i in range(rs.rank):
                img = rs.reflect(i, c)
                neg = tuple(rs.zero - x for x in img)
                assert any(
                    all(is_zero(a - b) for a, b in zip(img, other))
                    or all(is_zero(a - b) for a, b in zip(neg, other))
                    for other in all_coeffs)


def test_simple_reflection_negates_simple_root():
    rs = build(parse_spec("H3"))
    e0 = tuple(rs.one if i == 0 else rs.zero for i in range(3))
    assert rs.reflect(0, e0) == tuple(-x for x in e0)


def test_weight_basis_duality():
    for label in ("H3", "H4", "I2:6", "I2:7"):
        rs = build(parse_spec(label))
        w = rs.weight_basis()
        for i in range(rs.rank):
            for j in range(rs.rank):
                e_j = tuple(rs.one if k == j else rs.zero for k in range(rs.rank))
                val = rs.inner(w[i], e_j)
                assert is_zero(val - (rs.one if i == j else rs.zero))


def test_evaluate_is_dot_product():
    rs = build(parse_spec("H3"))
    x = (rs.one, 2 * rs.one, 3 * rs.one)
    r = rs.positives[0]
    manual = sum((xi * ci for xi, ci in zip(x, r.coeffs)), rs.zero)
    assert is_zero(evaluate(x, r) - manual)
    with pytest.raises(ValueError):
        evaluate((rs.one,), r)


def test_orbits():
    h3 = build(parse_spec("H3"))
    assert {r.orbit for r in h3.positives} == {0}  # one orbit: odd bond labels
    i24 = build(parse_spec("I2:4"))
    assert {r.orbit for r in i24.positives} == {0, 1}
    i25 = build(parse_spec("I2:5"))
    assert {r.orbit for r in i25.positives} == {0}


def test_gram_matrix_h3():
    rs = build(parse_spec("H3"))
    g = rs.gram
    assert g[0][1] == tau(0, Q(-1, 2))     # -cos(pi/5)
    assert g[1][2] == tau(Q(-1, 2), 0)
    assert is_zero(g[0][2])
    assert g[0][0] == rs.one


def test_all_coefficients_nonnegative():
    for label in ("H3", "H4", "I2:9", "I2:6:r=0.5"):
        rs = build(parse_spec(label))
        for r in rs.positives:
            assert all(sgn(c) >= 0 for c in r.coeffs)
            assert any(sgn(c) > 0 for c in r.coeffs)
            assert sgn(r.norm2) > 0


def test_canonical_order_is_by_height():
    rs = build(parse_spec("H4"))
    heights = [sum((c for c in r.coeffs), rs.zero) for r in rs.positives]
    assert all(sgn(heights[i + 1] - heights[i]) >= 0
               for i in range(len(heights) - 1))


def test_exact_sin_ratio():
    spec = parse_spec("I2:6:r=sin(2)/sin(1)")
    rs = build(spec)
    assert rs.field == "sqrt3"  # sin(2pi/6)/sin(pi/6) = sqrt3 stays exact
    spec = parse_spec("I2:8:r=sin(1)/sin(2)")
    assert build(spec).field == "approx"


def test_roots_to_json():
    rs = build(parse_spec("I2:4"))
    doc = rs.roots_to_json()
    assert len(doc) == 4
    assert doc[0]["index"] == 0
    assert all({"index", "coeffs", "norm2"} <= set(d) for d in doc)
