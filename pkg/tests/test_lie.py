from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from liegra import graphs as G
from liegra.algebra import NC, AlgebraError, Series, bracket, star_top_first
from liegra.formats import parse_decorated
from liegra.lie import (
    GroupElement,
    IdentityReport,
    ad_exp,
    bch,
    bch_words,
    bowtie,
    compare,
    corolla_down,
    corolla_up,
    disjoint_exp,
    dynkin_terms,
    exp,
    exp_components,
    gauge_action,
    gen,
    gp_inverse,
    gp_product,
    gp_product_nc,
    left_normed_words,
    log,
    three_level_sum,
    tri_left,
    tri_right,
)


def coeff(s, text):
    g, deco = parse_decorated(text)
    series = s.series if isinstance(s, GroupElement) else s
    return series.coefficient(g, deco)


def test_exp_coefficients_are_levelizations_over_factorial():
    x = gen("x", 4)
    e = exp(x)
    for n in range(1, 5):
        for c in G.enumerate_iso_classes(n):
            text = f"n={n}" + (";e=" + ",".join(f"{u}>{v}" for u, v in c.graph.edges) if c.graph.edges else "")
            text += ";d=" + ",".join("x" * n)
            ell = G.linear_extension_count(c.graph) // c.aut_order
            assert coeff(e, text) == Fraction(ell, factorial(n))


def test_exp_of_zero_is_the_unit():
    assert exp(Series.zero(3, {"x": 0})).is_one()


def test_flow_route_agrees_with_direct_route():
    x = gen("x", 5)
    assert exp(x) == exp(x, route="flow")


def test_log_inverts_exp():
    x = gen("x", 4)
    assert log(exp(x)) == x
    one_plus_x = GroupElement(x)
    assert exp(log(one_plus_x)) == one_plus_x


def test_unit_and_associativity_on_three_generators():
    K = 3
    x, y, z = (gen(s, K) for s in "xyz")
    X, Y, Z = GroupElement(x), GroupElement(y), GroupElement(z)
    one = GroupElement.one(K)
    assert gp_product(one, X) == X == gp_product(X, one)
    left = gp_product(gp_product(X, Y), Z)
    assert left == gp_product(X, gp_product(Y, Z))
    assert left.series == three_level_sum(x, y, z)


def test_labeled_route_matches_class_route():
    X, Y = GroupElement(gen("x", 4)), GroupElement(gen("y", 4))
    assert gp_product(X, Y) == gp_product(X, Y, route="labeled")


def test_inverse_is_two_sided():
    X = GroupElement(gen("x", 4))
    inv = gp_inverse(X)
    one = GroupElement.one(4)
    assert gp_product(inv, X) == one == gp_product(X, inv)


def test_product_on_a_single_chain():
    X, Y = GroupElement(gen("x", 2)), GroupElement(gen("y", 2))
    # y sits above x
    assert coeff(gp_product(X, Y), "n=2;e=2>1;d=x,y") == 1
    assert coeff(gp_product(X, Y), "n=2;e=2>1;d=y,x") == 0


def test_bch_word_series():
    words = dict(bch_words(3))
    assert words[("x",)] == 1 and words[("y",)] == 1
    assert words[("x", "y")] == Fraction(1, 2) and words[("y", "x")] == Fraction(-1, 2)
    assert words[("x", "x", "y")] == Fraction(1, 12)
    assert words[("x", "y", "x")] == Fraction(-1, 6)
    assert words[("y", "y", "x")] == Fraction(1, 12)


def test_left_normed_expansion():
    # [[x, y], z] = xyz - yxz - zxy + zyx
    assert left_normed_words(("x", "y", "z")) == {
        ("x", "y", "z"): 1,
        ("y", "x", "z"): -1,
        ("z", "x", "y"): -1,
        ("z", "y", "x"): 1,
    }


def test_dynkin_terms_cover_each_weight():
    assert {len(w) for w, _ in dynkin_terms(3)} == {1, 2, 3}


def test_bch_weight_two_and_group_route():
    x, y = gen("x", 3), gen("y", 3)
    b = bch(x, y)
    low = (x + y + bracket(x, y).scale(Fraction(1, 2))).with_K(2)
    assert b.with_K(2) == low
    assert b == bch(x, y, route="group")
    assert exp(b) == gp_product(exp(x), exp(y))


def test_top_first_star_breaks_the_bch_identity():
    x, y = gen("x", 2), gen("y", 2)
    wrong = x + y + bracket(x, y, product=star_top_first).scale(Fraction(1, 2))
    rep = compare("top-first", exp(wrong), gp_product(exp(x), exp(y)))
    assert not rep.passed and rep.first_failing_weight == 2


def test_triangle_operations_reduce_to_corollas():
    x, y = gen("x", 3), gen("y", 3)
    assert corolla_up(2).edges == ((3, 1), (3, 2))
    assert corolla_down(2).edges == ((2, 1), (3, 1))
    assert coeff(tri_right(GroupElement(x), y), "n=3;e=3>1,3>2;d=x,x,y") == Fraction(1, 2)
    assert coeff(tri_left(x, GroupElement(y)), "n=3;e=2>1,3>1;d=x,y,y") == Fraction(1, 2)


def test_flow_equation_per_weight():
    z = gen("z", 4)
    E = exp(z)
    comps = exp_components(z)
    right = tri_right(E, z)
    left = tri_left(z, E)
    for n, En in enumerate(comps, start=1):
        assert right.weight_component(n) == En.scale(n)
        assert left.weight_component(n) == En.scale(n)


def test_bowtie_and_gauge_action():
    K = 3
    lam, alpha = gen("l", K), gen("a", K, -1)
    assert gauge_action(lam, alpha) == ad_exp(lam, alpha)
    x, y = gen("x", K), gen("y", K)
    bt = bowtie(GroupElement(x), alpha, GroupElement(y))
    assert coeff(bt, "n=1;d=a") == 1
    assert coeff(bt, "n=3;e=3>1,3>2;d=x,x,a") == Fraction(1, 2)


def test_gauge_parameter_must_have_degree_zero():
    with pytest.raises(AlgebraError):
        gauge_action(gen("l", 3, 1), gen("a", 3, -1))


def test_nc_product_routes_agree():
    X, Y = GroupElement(gen("x", 3, flavor=NC)), GroupElement(gen("y", 3, flavor=NC))
    direct = gp_product_nc(X, Y)
    assert direct == gp_product_nc(X, Y, route="assembly")
    assert direct == gp_product_nc(X, Y, route="labeled")
    # the disjoint pair (x, y) appears once
    assert coeff(direct, "n=2;d=x,y") == 1


def test_disjoint_exp_of_a_generator():
    x = gen("x", 3, flavor=NC)
    out = disjoint_exp(x)
    assert [coeff(out, t) for t in ("n=1;d=x", "n=2;d=x,x", "n=3;d=x,x,x")] == [1, Fraction(1, 2), Fraction(1, 6)]


def test_nc_product_is_not_associative_on_the_witness_graph():
    cap = {"x": 2, "y": 1, "z": 3}
    x, y, z = (GroupElement(gen(s, 6, flavor=NC)) for s in "xyz")
    left = gp_product_nc(gp_product_nc(x, y, content_cap=cap), z, content_cap=cap)
    right = gp_product_nc(x, gp_product_nc(y, z, content_cap=cap), content_cap=cap)
    text = "n=6;e=4>1,4>2,5>3,6>3;d=x,x,y,z,z,z"
    assert coeff(left, text) == Fraction(5, 4)
    assert coeff(right, text) == Fraction(1, 2)


def test_mixed_associativity():
    K = 3
    x, y, z = (GroupElement(gen(s, K)) for s in "xyz")
    assert gp_product_nc(gp_product(x, y), z) == gp_product_nc(x, gp_product(y, z))


def test_compare_reports_first_failing_weight():
    x, y = gen("x", 3), gen("y", 3)
    rep = compare("x = x + xy", x, x + bracket(x, y))
    assert not rep.passed and rep.first_failing_weight == 2
    assert rep.differences and rep.to_dict()["status"] == "fail"
    assert "FAIL" in rep.line()
    assert compare("x = x", x, x).line() == "[PASS] x = x @ K=3"
    assert IdentityReport("plain", None, True).line() == "[PASS] plain"
