"""Integration theory of Lie-graph algebras on truncated free algebras.

Group elements are written ``1 + X`` with ``X`` a series of positive weight.
Every identity is evaluated by exact expansion; most constructions have a
second, independent route so that the two can be compared term by term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Mapping, Sequence

from . import graphs as G
from .algebra import (
    CONNECTED,
    NC,
    AlgebraError,
    Generator,
    Series,
    apply_graph,
    bracket,
    merge_degrees,
    sum_series,
)
from .graphs import DirectedGraph


@dataclass(frozen=True)
class GroupElement:
    """The formal element ``1 + series``."""

    series: Series

    @property
    def K(self) -> int:
        return self.series.K

    @classmethod
    def one(cls, K: int, degrees: Mapping[str, int] | None = None, flavor: str = CONNECTED) -> "GroupElement":
        return cls(Series.zero(K, degrees, flavor))

    @classmethod
    def of(cls, x: Series) -> "GroupElement":
        """The element ``1 + x``."""
        return cls(x)

    def replace_series(self, s: Series) -> "GroupElement":
        return GroupElement(s)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.series == other.series

    def __hash__(self):
        return hash(self.series)

    def is_one(self) -> bool:
        return self.series.is_zero()

    def is_degree_zero(self) -> bool:
        return all(self.series.degree_of(k) == 0 for k in self.series.terms)

    def to_dict(self) -> dict:
        d = self.series.to_dict()
        d["unit"] = 1
        return d


def _series(a) -> Series:
    return a.series if isinstance(a, GroupElement) else a


# ---------------------------------------------------------------------------
# cached index sets


@lru_cache(maxsize=None)
def connected_classes(n: int) -> tuple:
    return tuple((c.graph, c.aut_order) for c in G.enumerate_iso_classes(n, G.CONNECTED))


@lru_cache(maxsize=None)
def leveled_classes(shape: tuple, connected: bool = True) -> tuple:
    """(graph, levels, level-preserving |Aut|) for every leveled class."""
    return tuple(
        (lg.graph, lg.levels, G.leveled_aut_order(lg)) for lg in G.enumerate_leveled(list(shape), connected=connected)
    )


def _level_args(levels: Sequence[int], by_level: Sequence[Series]) -> list[Series]:
    return [by_level[lv - 1] for lv in levels]


def _shapes(K: int, min_weights: Sequence[int], connected: bool):
    """Level shapes whose cheapest filling fits in weight K."""
    k = len(min_weights)
    for shape in product(range(K + 1), repeat=k):
        total = sum(shape)
        if total < 1:
            continue
        if sum(s * w for s, w in zip(shape, min_weights)) > K:
            continue
        yield shape


def leveled_sum(by_level: Sequence[Series], connected: bool = True, K: int | None = None, content_cap=None,
                shape_filter=None) -> Series:
    """Sum over leveled classes of g(level fillings) / |Aut(g)|.

    ``by_level[j]`` fills the vertices on level j+1.  A level whose series is
    zero forces that level to be empty.
    """
    K = by_level[0].K if K is None else K
    degrees = merge_degrees(by_level)
    flavor = NC if not connected or any(s.flavor == NC for s in by_level) else CONNECTED
    total = Series.zero(K, degrees, flavor)
    parts = []
    mins = [s.min_weight() for s in by_level]
    for shape in _shapes(K, mins, connected):
        if shape_filter is not None and not shape_filter(shape):
            continue
        if any(sz and by_level[j].is_zero() for j, sz in enumerate(shape)):
            continue
        for g, levels, aut in leveled_classes(shape, connected):
            args = _level_args(levels, by_level)
            parts.append(apply_graph(g, args, K, content_cap).scale(Fraction(1, aut)))
    return sum_series([total, *parts], K)


# ---------------------------------------------------------------------------
# the gauge product and its relatives


def gp_product(a: GroupElement, b: GroupElement, route: str = "classes", content_cap=None) -> GroupElement:
    """``a ⊙ b``: bottoms filled from ``a``, tops from ``b``.

    ``route="classes"`` sums over connected 2-leveled classes with weight
    1/|Aut|; ``route="labeled"`` sums over labeled 2-leveled graphs with
    weight 1/(p! q!).
    """
    X, Y = _series(a), _series(b)
    if X.K != Y.K:
        raise AlgebraError("mixed truncation orders")
    if route == "classes":
        return GroupElement(leveled_sum([X, Y], True, content_cap=content_cap))
    if route == "labeled":
        return GroupElement(_labeled_two_level(X, Y, connected=True, content_cap=content_cap))
    raise AlgebraError(f"unknown route {route!r}")


def _labeled_two_level(X: Series, Y: Series, connected: bool, content_cap=None) -> Series:
    K = X.K
    degrees = merge_degrees([X, Y])
    total = Series.zero(K, degrees, CONNECTED if connected else NC)
    parts = []
    for p, q in _shapes(K, [X.min_weight(), Y.min_weight()], connected):
        if (p and X.is_zero()) or (q and Y.is_zero()):
            continue
        pairs = [(u, v) for u in range(p + 1, p + q + 1) for v in range(1, p + 1)]
        weight = Fraction(1, factorial(p) * factorial(q))
        args = [X] * p + [Y] * q
        for choice in range(1 << len(pairs)):
            g = DirectedGraph(p + q, [pairs[t] for t in G.bits(choice)])
            if connected and not g.is_connected():
                continue
            parts.append(apply_graph(g, args, K, content_cap).scale(weight))
    return sum_series([total, *parts], K)


def gp_product_nc(a: GroupElement, b: GroupElement, route: str = "direct", content_cap=None) -> GroupElement:
    """``a ⊙_nc b`` over 2-leveled graphs that need not be connected.

    ``route="assembly"`` uses 1 + sum_n (1/n!) m_n((a⊙b - 1)^n), where m_n is
    the edgeless graph on n vertices (disjoint union).
    """
    X, Y = _series(a), _series(b)
    if route == "direct":
        return GroupElement(leveled_sum([X, Y], False, content_cap=content_cap))
    if route == "labeled":
        return GroupElement(_labeled_two_level(X, Y, connected=False, content_cap=content_cap))
    if route == "assembly":
        P = gp_product(a, b, content_cap=content_cap).series
        return GroupElement(disjoint_exp(P, content_cap))
    raise AlgebraError(f"unknown route {route!r}")


def disjoint_exp(P: Series, content_cap=None) -> Series:
    """sum_{n>=1} (1/n!) m_n(P, ..., P) with m_n the edgeless n-vertex graph."""
    K = P.K
    total = Series.zero(K, P.degrees, NC)
    if P.is_zero():
        return total
    n = 1
    while n * P.min_weight() <= K:
        total = total + apply_graph(DirectedGraph(n), [P] * n, K, content_cap).scale(Fraction(1, factorial(n)))
        n += 1
    return total


def three_level_sum(x: Series, y: Series, z: Series, connected: bool = True, content_cap=None) -> Series:
    """Sum over 3-leveled classes (x bottom, y middle, z top) of g / |Aut|."""
    return leveled_sum([x, y, z], connected, content_cap=content_cap)


def gp_inverse(a: GroupElement) -> GroupElement:
    """``1 + sum_g (-1)^|g| / |Aut(g)| g(X, ..., X)`` over connected classes."""
    X = _series(a)
    K = X.K
    total = Series.zero(K, X.degrees, X.flavor)
    parts = []
    if X.is_zero():
        return GroupElement(total)
    for n in range(1, K // X.min_weight() + 1):
        for g, aut in connected_classes(n):
            parts.append(apply_graph(g, [X] * n).scale(Fraction((-1) ** n, aut)))
    return GroupElement(sum_series([total, *parts], K))


def corolla_up(r: int) -> DirectedGraph:
    """Bottom vertices 1..r under a single top vertex r+1."""
    return DirectedGraph(r + 1, [(r + 1, i) for i in range(1, r + 1)])


def corolla_down(r: int) -> DirectedGraph:
    """A single bottom vertex 1 under top vertices 2..r+1."""
    return DirectedGraph(r + 1, [(j, 1) for j in range(2, r + 2)])


def tri_right(a: GroupElement, y: Series) -> Series:
    """``a ▷ y = y + sum_r (1/r!) corolla(r bottoms from a; y on top)``."""
    X = _series(a)
    total = y + Series.zero(y.K, X.degrees)
    if X.is_zero() or y.is_zero():
        return total
    r = 1
    while r * X.min_weight() + y.min_weight() <= y.K:
        total = total + apply_graph(corolla_up(r), [X] * r + [y]).scale(Fraction(1, factorial(r)))
        r += 1
    return total


def tri_left(x: Series, b: GroupElement) -> Series:
    """``x ◁ b = x + sum_r (1/r!) (x at the bottom; r tops from b)``."""
    Y = _series(b)
    total = x + Series.zero(x.K, Y.degrees)
    if Y.is_zero() or x.is_zero():
        return total
    r = 1
    while r * Y.min_weight() + x.min_weight() <= x.K:
        total = total + apply_graph(corolla_down(r), [x] + [Y] * r).scale(Fraction(1, factorial(r)))
        r += 1
    return total


# ---------------------------------------------------------------------------
# exponential and logarithm


def exp_components(x: Series) -> list[Series]:
    """[E_1, ..., E_K] with E_n = sum_{|g|=n} ell_g/n! g(x, ..., x)."""
    K = x.K
    comps = []
    for n in range(1, K + 1):
        parts = [Series.zero(K, x.degrees, x.flavor)]
        if not x.is_zero() and n * x.min_weight() <= K:
            for g, aut in connected_classes(n):
                ell = G.levelization_count(g)
                parts.append(apply_graph(g, [x] * n).scale(Fraction(ell, factorial(n))))
        comps.append(sum_series(parts, K))
    return comps


def exp_flow_components(x: Series) -> list[Series]:
    """[E_1, ..., E_K] from the flow recursion n E_n = ((sum_k E_k) ▷ x)_n,
    where the subscript is the polynomial degree in x."""
    K = x.K
    zero = Series.zero(K, x.degrees, x.flavor)
    comps: list[Series] = []
    for n in range(1, K + 1):
        if x.is_zero() or n * x.min_weight() > K:
            comps.append(zero)
            continue
        acc = x if n == 1 else zero
        for r in range(1, n):
            for parts in _compositions(n - 1, r):
                args = [comps[k - 1] for k in parts]
                if any(a.is_zero() for a in args):
                    continue
                acc = acc + apply_graph(corolla_up(r), args + [x]).scale(Fraction(1, factorial(r)))
        comps.append(acc.scale(Fraction(1, n)))
    return comps


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def exp(x: Series, route: str = "direct") -> GroupElement:
    """Graph exponential ``1 + sum_g ell_g/|g|! g(x)`` over connected classes."""
    if route == "direct":
        comps = exp_components(x)
    elif route == "flow":
        comps = exp_flow_components(x)
    else:
        raise AlgebraError(f"unknown route {route!r}")
    total = Series.zero(x.K, x.degrees, x.flavor)
    for E in comps:
        total = total + E
    return GroupElement(total)


def log(e: GroupElement) -> Series:
    """Inverse of ``exp``, found weight by weight.

    With L the answer through weight k-1, the weight-k part of exp(L) differs
    from L_k only through lower-weight data, so L_k = (e - exp(L))_k.
    """
    E = _series(e)
    L = Series.zero(E.K, E.degrees, E.flavor)
    for k in range(1, E.K + 1):
        residual = (E - exp(L).series).weight_component(k)
        L = L + residual
    return L


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff


Word = tuple


def _word_mul(a: dict, b: dict, K: int) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) <= K:
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


def _word_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + scale * c
    return {w: c for w, c in out.items() if c}


def _word_exp(letter: str, K: int) -> dict:
    return {(letter,) * n: Fraction(1, factorial(n)) for n in range(K + 1)}


@lru_cache(maxsize=None)
def bch_words(K: int) -> tuple:
    """log(e^x e^y) in the free associative algebra on x, y, through length K."""
    prod = _word_mul(_word_exp("x", K), _word_exp("y", K), K)
    Z = {w: c for w, c in prod.items() if w}
    result: dict = {}
    power = {(): Fraction(1)}
    for n in range(1, K + 1):
        power = _word_mul(power, Z, K)
        result = _word_add(result, power, Fraction((-1) ** (n + 1), n))
    return tuple(sorted(result.items(), key=lambda t: (len(t[0]), t[0])))


def dynkin_terms(K: int) -> list[tuple[Word, Fraction]]:
    """Coefficients c_w/|w| such that BCH = sum of left-normed brackets of w."""
    return [(w, c / len(w)) for w, c in bch_words(K)]


def left_normed_words(word: Word) -> dict:
    """Expansion of [[..[w1,w2],..],wm] into words (commutator a b - b a)."""
    acc = {(word[0],): Fraction(1)}
    for letter in word[1:]:
        right = {w + (letter,): c for w, c in acc.items()}
        left = {(letter,) + w: c for w, c in acc.items()}
        acc = _word_add(right, left, -1)
    return acc


def bch_dynkin(x: Series, y: Series, K: int | None = None) -> Series:
    """BCH(x, y) from the universal Dynkin coefficients, evaluated with the
    graph bracket."""
    K = x.K if K is None else K
    letters = {"x": x, "y": y}
    degrees = merge_degrees([x, y])
    total = Series.zero(K, degrees, NC if NC in (x.flavor, y.flavor) else CONNECTED)
    memo: dict = {}

    def nested(word):
        if word in memo:
            return memo[word]
        if len(word) == 1:
            val = letters[word[0]]
        else:
            val = bracket(nested(word[:-1]), letters[word[-1]])
        memo[word] = val
        return val

    minw = {"x": x.min_weight(), "y": y.min_weight()}
    for w, c in dynkin_terms(K):
        if sum(minw[a] for a in w) > K:
            continue
        total = total + nested(w).scale(c)
    return total


def bch(x: Series, y: Series, route: str = "dynkin") -> Series:
    if route == "dynkin":
        return bch_dynkin(x, y)
    if route == "group":
        return log(gp_product(exp(x), exp(y)))
    raise AlgebraError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# bowtie and gauge action


def bowtie(a: GroupElement, m: Series, b: GroupElement) -> Series:
    """Sum over connected 3-leveled classes with exactly one middle vertex:
    bottoms from ``a``, the middle from ``m``, tops from ``b``, weight 1/|Aut|."""
    X, Y = _series(a), _series(b)
    return leveled_sum([X, m, Y], True, shape_filter=lambda s: s[1] == 1)


def ad_exp(lam: Series, alpha: Series) -> Series:
    """e^{ad_lam}(alpha) = sum_k ad_lam^k(alpha) / k!."""
    total = alpha
    term = alpha
    k = 1
    while not term.is_zero() and k <= alpha.K:
        term = bracket(lam, term).scale(Fraction(1, k))
        total = total + term
        k += 1
    return total


def gauge_action(lam: Series, alpha: Series) -> Series:
    """exp(lam) acting on alpha: bowtie(exp lam, alpha, exp(-lam))."""
    if lam.homogeneous_degree() not in (0, None):
        raise AlgebraError("the gauge parameter must have degree 0")
    return bowtie(exp(lam), alpha, exp(-lam))


# ---------------------------------------------------------------------------
# identity reports


@dataclass
class IdentityReport:
    name: str
    K: int | None
    passed: bool
    first_failing_weight: int | None = None
    differences: list = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        at = "" if self.K is None else f" @ K={self.K}"
        extra = f" ({self.note})" if self.note else ""
        if not self.passed:
            extra = f" (first failing weight {self.first_failing_weight})" if self.first_failing_weight else f" ({self.note})"
        return f"[{status}] {self.name}{at}{extra}"

    def to_dict(self) -> dict:
        return {
            "identity": self.name,
            "K": self.K,
            "status": "pass" if self.passed else "fail",
            "first_failing_weight": self.first_failing_weight,
            "differences": self.differences,
            "note": self.note,
        }


def compare(name: str, lhs, rhs, K: int | None = None, limit: int = 5) -> IdentityReport:
    """Exact comparison of two series (or group elements) through weight K."""
    L, R = _series(lhs), _series(rhs)
    K = min(L.K, R.K) if K is None else K
    diff = L.with_K(K) - R.with_K(K)
    if diff.is_zero():
        return IdentityReport(name, K, True)
    first = min(k[0] for k in diff.terms)
    rows = []
    for key, _ in diff.sorted_terms():
        if key[0] != first:
            continue
        rows.append(
            {
                "graph": {"n": key[0], "edges": [list(e) for e in G.edges_of(key[1])]},
                "decoration": list(key[2]),
                "lhs": str(L.terms.get(key, 0)),
                "rhs": str(R.terms.get(key, 0)),
            }
        )
        if len(rows) >= limit:
            break
    return IdentityReport(name, K, False, first, rows)


def gen(name: str, K: int, degree: int = 0, flavor: str = CONNECTED) -> Series:
    return Series.generator(Generator(name, degree), K, flavor=flavor)
