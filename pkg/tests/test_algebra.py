from __future__ import annotations

from fractions import Fraction

import pytest

from liegra.algebra import (
    AlgebraError,
    Series,
    apply_graph,
    bracket,
    derivation_extend,
    polarize,
    star,
    star_top_first,
    substitute,
    sum_series,
)
from liegra.formats import parse_decorated
from liegra.graphs import DirectedGraph
from liegra.lie import exp, gen, gp_product


def coeff(s: Series, text: str) -> Fraction:
    g, deco = parse_decorated(text)
    return s.coefficient(g, deco)


def test_generator_and_arithmetic():
    x, y = gen("x", 3), gen("y", 3)
    s = x + y.scale(2) - x
    assert s == y.scale(2)
    assert (x - x).is_zero()
    assert len(x + y) == 2
    assert x.weights() == [1] and x.min_weight() == 1


def test_truncation_and_mixed_orders():
    x = gen("x", 3)
    sq = star(x, x)
    assert sq.truncate(1).is_zero()
    with pytest.raises(AlgebraError):
        x + gen("x", 2)


def test_conflicting_degrees_rejected():
    with pytest.raises(AlgebraError):
        gen("x", 3) + gen("x", 3, degree=1)
    with pytest.raises(AlgebraError):
        Series(2, {(1, 0, ("q",)): Fraction(1)}, {})


def test_star_puts_first_argument_at_the_bottom():
    x, y = gen("x", 2), gen("y", 2)
    assert coeff(star(x, y), "n=2;e=2>1;d=x,y") == 1
    assert coeff(star_top_first(x, y), "n=2;e=2>1;d=y,x") == 1


def test_apply_graph_is_multilinear():
    g = DirectedGraph(2, [(2, 1)])
    x, y, z = gen("x", 3), gen("y", 3), gen("z", 3)
    lhs = apply_graph(g, [x + y.scale(3), z])
    rhs = apply_graph(g, [x, z]) + apply_graph(g, [y, z]).scale(3)
    assert lhs == rhs


def test_automorphisms_merge_labeled_terms():
    # the sink-join applied to (x, y, y): the two tops are exchangeable
    x, y = gen("x", 3), gen("y", 3)
    out = apply_graph(DirectedGraph(3, [(2, 1), (3, 1)]), [x, y, y])
    assert list(out.terms.values()) == [Fraction(1)]


def test_odd_symmetric_terms_vanish():
    a = gen("a", 2, degree=1)
    edgeless = DirectedGraph(2)
    assert apply_graph(edgeless, [a, a]).is_zero()
    b = gen("a", 2, degree=0)
    assert not apply_graph(edgeless, [b, b]).is_zero()


def test_bracket_is_graded_antisymmetric():
    for da, db in [(0, 0), (1, 0), (1, 1), (-1, 0)]:
        a, b = gen("a", 3, da), gen("b", 3, db)
        sign = (-1) ** (da * db)
        assert bracket(a, b) == bracket(b, a).scale(-sign)


@pytest.mark.parametrize("degrees", [(0, 0, 0), (1, 0, 0), (1, 1, 0), (-1, 1, 1)])
def test_graded_jacobi(degrees):
    K = 4
    a, b, c = (gen(n, K, d) for n, d in zip("abc", degrees))
    da, db, dc = degrees

    def s(p, q):
        return (-1) ** (p * q)

    total = (
        bracket(a, bracket(b, c)).scale(s(da, dc))
        + bracket(b, bracket(c, a)).scale(s(db, da))
        + bracket(c, bracket(a, b)).scale(s(dc, db))
    )
    assert total.is_zero()


def test_substitute_replaces_generators():
    x, y = gen("x", 3), gen("y", 3)
    s = star(x, x)
    out = substitute(s, {"x": y.scale(2)})
    assert out == star(y, y).scale(4)


def test_sum_series_matches_repeated_addition():
    parts = [gen("x", 3).scale(k) for k in range(1, 5)] + [star(gen("x", 3), gen("y", 3))]
    acc = parts[0]
    for p in parts[1:]:
        acc = acc + p
    assert sum_series(parts, 3) == acc


def test_derivation_squares_to_zero():
    K = 4
    x = gen("x", K, 1)
    y = gen("y", K, 0)
    d = derivation_extend({"x": y})
    for s in (exp(x).series, star(x, x) + star(x, y), bracket(x, x)):
        assert d(d(s)).is_zero()


def test_derivation_on_odd_chain_is_a_derivation():
    K = 3
    a, b = gen("a", K, 1), gen("b", K, 0)
    d = derivation_extend({"a": b.scale(1)})
    # d(a * a) = (da) * a - a * (da) in the bottom-first product
    lhs = d(star(a, a))
    rhs = star(b, a) - star(a, b)
    assert lhs == rhs


def test_derivation_checks_degrees():
    with pytest.raises(AlgebraError):
        derivation_extend({"x": gen("y", 3, 0)})(gen("x", 3, 0))


def test_derivation_agrees_with_polarization_for_degree_zero_slots():
    K = 4
    x, u = gen("x", K, 0), gen("u", K, -1)
    d = derivation_extend({"x": u})
    assert d(exp(x).series) == polarize(lambda s: exp(s), [x], 0, u)


def test_polarization_matches_finite_difference():
    K = 4
    x, y = gen("x", K), gen("y", K)

    def F(a):
        return gp_product(exp(a), exp(a)).series

    pol = polarize(F, [x], 0, y)
    diff = F(x + y) - F(x)
    linear = diff.filter(lambda k: k[2].count("y") == 1)
    assert pol == linear


def test_series_dict_round_trip():
    x, a = gen("x", 3), gen("a", 3, -1)
    s = star(x, a) + star(a, x).scale(Fraction(1, 3))
    assert Series.from_dict(s.to_dict()) == s
    assert "n=2" in s.describe()


def test_degree_components():
    x, a = gen("x", 3), gen("a", 3, -1)
    s = x + star(x, a)
    comps = s.degree_components()
    assert set(comps) == {0, -1}
    with pytest.raises(AlgebraError):
        s.homogeneous_degree()
    assert Series.zero(3).homogeneous_degree() is None
    assert star(x, a).homogeneous_degree() == -1
