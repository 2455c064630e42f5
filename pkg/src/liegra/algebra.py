"""Weight-truncated free (dg) Lie-graph algebras over the rationals.

A basis element is a decorated isomorphism class: a canonical graph whose
vertices carry generator names, stored as ``(n, mask, decoration)`` with the
decoration listed in canonical vertex order (which is always sorted by name).
Graph operations act by full composition in the graph operad followed by
canonicalization; reordering odd-degree decorations contributes the Koszul
sign, and classes admitting an automorphism that permutes odd decorations by
an odd permutation vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from . import graphs as G
from .graphs import DirectedGraph
from .operad import full_compose_simple_raw

CONNECTED = "connected"
NC = "nc"

Key = tuple  # (n, mask, decoration)


class AlgebraError(ValueError):
    """Inconsistent algebra input (truncation, arity, degrees)."""


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    degree: int = 0


def key_weight(key: Key) -> int:
    return key[0]


def key_graph(key: Key) -> DirectedGraph:
    return DirectedGraph.from_mask(key[0], key[1])


@dataclass(frozen=True)
class Series:
    """Rational combination of decorated classes of weight at most ``K``."""

    K: int
    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    degrees: Mapping[str, int] = field(default_factory=dict)
    flavor: str = CONNECTED

    def __post_init__(self):
        if self.K < 1:
            raise AlgebraError("truncation order K must be at least 1")
        clean = {
            k: c if type(c) is Fraction else Fraction(c) for k, c in self.terms.items() if c and k[0] <= self.K
        }
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "degrees", dict(self.degrees))
        missing = {name for k in clean for name in k[2]} - self.degrees.keys()
        if missing:
            raise AlgebraError(f"generator {min(missing)!r} has no declared degree")

    # -- construction -----------------------------------------------------

    @classmethod
    def generator(cls, gen: Generator | str, K: int, degree: int = 0, flavor: str = CONNECTED) -> "Series":
        if isinstance(gen, str):
            gen = Generator(gen, degree)
        return cls(K, {(1, 0, (gen.name,)): Fraction(1)}, {gen.name: gen.degree}, flavor)

    @classmethod
    def zero(cls, K: int, degrees: Mapping[str, int] | None = None, flavor: str = CONNECTED) -> "Series":
        return cls(K, {}, degrees or {}, flavor)

    def _like(self, terms, K=None, degrees=None, flavor=None) -> "Series":
        return Series(
            self.K if K is None else K,
            terms,
            self.degrees if degrees is None else degrees,
            self.flavor if flavor is None else flavor,
        )

    # -- arithmetic -------------------------------------------------------

    def _merge(self, other: "Series"):
        if self.K != other.K:
            raise AlgebraError(f"mixed truncation orders {self.K} and {other.K}")
        degrees = merge_degrees([self, other])
        flavor = NC if NC in (self.flavor, other.flavor) else CONNECTED
        return degrees, flavor

    def __add__(self, other: "Series") -> "Series":
        degrees, flavor = self._merge(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return Series(self.K, acc, degrees, flavor)

    def __neg__(self) -> "Series":
        return self.scale(-1)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c) -> "Series":
        c = Fraction(c)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Series":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.K == other.K and self.terms == other.terms

    def __hash__(self):
        return hash((self.K, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, K: int) -> "Series":
        if K > self.K:
            raise AlgebraError(f"cannot raise truncation from {self.K} to {K}")
        return self._like({k: c for k, c in self.terms.items() if k[0] <= K}, K=K)

    def with_K(self, K: int) -> "Series":
        """Reinterpret at another truncation (dropping terms above it)."""
        return self._like({k: c for k, c in self.terms.items() if k[0] <= K}, K=K)

    def weight_component(self, n: int) -> "Series":
        return self._like({k: c for k, c in self.terms.items() if k[0] == n})

    def weights(self) -> list[int]:
        return sorted({k[0] for k in self.terms})

    def min_weight(self) -> int:
        return min((k[0] for k in self.terms), default=self.K + 1)

    def degree_of(self, key: Key) -> int:
        return sum(self.degrees[name] for name in key[2])

    def degree_components(self) -> dict[int, "Series"]:
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(self.degree_of(k), {})[k] = c
        return {d: self._like(t) for d, t in sorted(parts.items())}

    def homogeneous_degree(self) -> int | None:
        degs = {self.degree_of(k) for k in self.terms}
        if len(degs) > 1:
            raise AlgebraError(f"series is not homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def filter(self, predicate: Callable[[Key], bool]) -> "Series":
        return self._like({k: c for k, c in self.terms.items() if predicate(k)})

    def with_degrees(self, degrees: Mapping[str, int]) -> "Series":
        merged = dict(self.degrees)
        merged.update(degrees)
        return self._like(self.terms, degrees=merged)

    # -- inspection -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (t[0][0], G.edges_of(t[0][1]), t[0][2]))

    def coefficient(self, g: DirectedGraph, decoration: Sequence[str]) -> Fraction:
        """Coefficient of the element ``g(decoration)`` written in this basis."""
        key, sign = basis_key(g.n, g.mask, tuple(decoration), self.degrees)
        if key is None:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "generators": [{"name": n, "degree": d} for n, d in sorted(self.degrees.items())],
            "terms": [
                {
                    "coeff": f"{c.numerator}/{c.denominator}",
                    "graph": {"n": k[0], "edges": [list(e) for e in G.edges_of(k[1])]},
                    "decoration": list(k[2]),
                }
                for k, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, flavor: str = CONNECTED) -> "Series":
        degrees = {g["name"]: int(g["degree"]) for g in data["generators"]}
        acc: dict = {}
        for t in data["terms"]:
            g = DirectedGraph(int(t["graph"]["n"]), [tuple(e) for e in t["graph"]["edges"]])
            key, sign = basis_key(g.n, g.mask, tuple(t["decoration"]), degrees)
            if key is not None:
                acc[key] = acc.get(key, 0) + sign * Fraction(t["coeff"])
        return cls(int(data["K"]), acc, degrees, flavor)

    def describe(self) -> str:
        from .formats import format_graph

        return "\n".join(
            f"{c!s:>10}  {format_graph(DirectedGraph.from_mask(k[0], k[1]), k[2])}" for k, c in self.sorted_terms()
        )


def sum_series(parts: Iterable[Series], K: int, degrees: Mapping[str, int] | None = None,
               flavor: str = CONNECTED) -> Series:
    """Sum of many series with a single accumulator (repeated ``+`` is quadratic)."""
    acc: dict = {}
    degrees = dict(degrees or {})
    for part in parts:
        if part.K != K:
            raise AlgebraError(f"mixed truncation orders {K} and {part.K}")
        for name, d in part.degrees.items():
            if degrees.setdefault(name, d) != d:
                raise AlgebraError(f"generator {name!r} declared with degrees {degrees[name]} and {d}")
        if part.flavor == NC:
            flavor = NC
        for k, c in part.terms.items():
            acc[k] = acc.get(k, 0) + c
    return Series(K, acc, degrees, flavor)


def merge_degrees(items: Iterable[Series]) -> dict[str, int]:
    degrees: dict[str, int] = {}
    for s in items:
        for name, d in s.degrees.items():
            if degrees.setdefault(name, d) != d:
                raise AlgebraError(f"generator {name!r} declared with degrees {degrees[name]} and {d}")
    return degrees


def _odd_mask(decoration: Sequence[str], degrees: Mapping[str, int]) -> int:
    m = 0
    for v, name in enumerate(decoration):
        if degrees[name] % 2:
            m |= 1 << v
    return m


def basis_key(n: int, mask: int, decoration: tuple, degrees: Mapping[str, int]):
    """Canonical key and sign for a labeled decorated graph; key None if zero."""
    cmask, _, _, sign, zero = G.canon(n, mask, decoration, _odd_mask(decoration, degrees))
    if zero:
        return None, 0
    return (n, cmask, tuple(sorted(decoration))), sign


# ---------------------------------------------------------------------------
# graph operations on series


@lru_cache(maxsize=1 << 18)
def _compose_terms(gn: int, gmask: int, blocks: tuple, odd_names: frozenset) -> tuple:
    """g(t1, ..., tk) on basis classes, as ((key, integer coefficient), ...)."""
    deco = tuple(name for _, _, d in blocks for name in d)
    odd = 0
    for v, name in enumerate(deco):
        if name in odd_names:
            odd |= 1 << v
    n = len(deco)
    sorted_deco = tuple(sorted(deco))
    acc: dict = {}
    for m in full_compose_simple_raw(gn, gmask, [(bn, bm) for bn, bm, _ in blocks]):
        cmask, _, _, sign, zero = G.canon(n, m, deco, odd)
        if zero:
            continue
        key = (n, cmask, sorted_deco)
        acc[key] = acc.get(key, 0) + sign
    return tuple((k, c) for k, c in acc.items() if c)


def _content(key: Key, names: tuple) -> tuple:
    return tuple(key[2].count(nm) for nm in names)


def apply_graph(
    g: DirectedGraph,
    args: Sequence[Series],
    K: int | None = None,
    content_cap: Mapping[str, int] | None = None,
) -> Series:
    """Multilinear action of the graph operation ``g`` on series arguments.

    ``content_cap`` optionally bounds how many vertices of each generator a
    kept term may carry; terms above the bound are never built.
    """
    if len(args) != g.n:
        raise AlgebraError(f"arity mismatch: graph has {g.n} vertices, {len(args)} arguments")
    if not args:
        raise AlgebraError("graphs have at least one vertex")
    Ks = {a.K for a in args}
    if len(Ks) != 1:
        raise AlgebraError(f"mixed truncation orders {sorted(Ks)}")
    K = args[0].K if K is None else K
    degrees = merge_degrees(args)
    flavor = NC if any(a.flavor == NC for a in args) or not g.is_connected() else CONNECTED
    odd_names = frozenset(nm for nm, d in degrees.items() if d % 2)
    names = tuple(sorted(content_cap)) if content_cap else ()
    cap = tuple(content_cap[nm] for nm in names) if content_cap else ()

    per_arg = []
    for a in args:
        items = []
        for k, c in a.terms.items():
            cont = _content(k, names) if names else ()
            if names and any(x > y for x, y in zip(cont, cap)):
                continue
            items.append((k[0], k, c, cont))
        items.sort(key=lambda t: t[0])
        per_arg.append(items)
    if any(not items for items in per_arg):
        return Series(K, {}, degrees, flavor)
    min_w = [items[0][0] for items in per_arg]
    suffix = [0] * (g.n + 1)
    for i in range(g.n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + min_w[i]
    if suffix[0] > K:
        return Series(K, {}, degrees, flavor)

    acc: dict = {}
    chosen: list = [None] * g.n

    def rec(i: int, weight: int, coeff: Fraction, cont: tuple):
        if i == g.n:
            blocks = tuple((k[0], k[1], k[2]) for k in chosen)
            for key, c in _compose_terms(g.n, g.mask, blocks, odd_names):
                acc[key] = acc.get(key, 0) + coeff * c
            return
        budget = K - weight - suffix[i + 1]
        for w, k, c, kc in per_arg[i]:
            if w > budget:
                break
            if names:
                nc = tuple(x + y for x, y in zip(cont, kc))
                if any(x > y for x, y in zip(nc, cap)):
                    continue
            else:
                nc = cont
            chosen[i] = k
            rec(i + 1, weight + w, coeff * c, nc)

    rec(0, 0, Fraction(1), (0,) * len(names))
    return Series(K, acc, degrees, flavor)


BOTTOM_TOP_CHAIN = DirectedGraph(2, [(2, 1)])  # vertex 1 bottom, vertex 2 top


def star(a: Series, b: Series) -> Series:
    """The 2-chain operation with ``a`` on the bottom vertex and ``b`` on top."""
    return apply_graph(BOTTOM_TOP_CHAIN, [a, b])


def star_top_first(a: Series, b: Series) -> Series:
    """The opposite orientation (``a`` on top); kept for convention checks."""
    return apply_graph(BOTTOM_TOP_CHAIN, [b, a])


def bracket(a: Series, b: Series, product: Callable[[Series, Series], Series] = star) -> Series:
    """Graded commutator ``a*b - (-1)^{|a||b|} b*a`` extended bilinearly."""
    total = Series.zero(a.K, merge_degrees([a, b]), NC if NC in (a.flavor, b.flavor) else CONNECTED)
    for da, pa in a.degree_components().items():
        for db, pb in b.degree_components().items():
            sign = -1 if (da * db) % 2 else 1
            total = total + product(pa, pb) - product(pb, pa).scale(sign)
    return total


def substitute(s: Series, mapping: Mapping[str, Series], K: int | None = None) -> Series:
    """Replace generators by series (generators not mapped stay themselves).

    Substituted series must have the degree of the generator they replace.
    """
    K = s.K if K is None else K
    gens = {}
    degrees = dict(s.degrees)
    for m in mapping.values():
        for nm, d in m.degrees.items():
            degrees.setdefault(nm, d)
    for nm, d in s.degrees.items():
        gens[nm] = mapping[nm].with_K(K) if nm in mapping else Series.generator(Generator(nm, d), K)
    parts = [Series.zero(K, degrees, s.flavor)]
    for key, c in s.terms.items():
        g = key_graph(key)
        args = [gens[nm].with_degrees(degrees) for nm in key[2]]
        parts.append(apply_graph(g, args, K).scale(c))
    return sum_series(parts, K)


# ---------------------------------------------------------------------------
# derivations and polarization


def derivation_extend(assignment: Mapping[str, Series]) -> Callable[[Series], Series]:
    """Extend ``name -> d(name)`` (degree -1 images) to a derivation of every
    graph operation: d(g(v1..vN)) = sum_i (-1)^(|v1|+..+|v_{i-1}|) g(.., d v_i, ..).
    Generators not in ``assignment`` are sent to zero."""

    def d(s: Series) -> Series:
        degrees = merge_degrees([s, *assignment.values()])
        for nm, img in assignment.items():
            if nm in s.degrees:
                deg = img.homogeneous_degree()
                if deg is not None and deg != s.degrees[nm] - 1:
                    raise AlgebraError(f"d({nm}) must have degree {s.degrees[nm] - 1}, got {deg}")
        parts = [Series.zero(s.K, degrees, s.flavor)]
        images = {nm: img.with_K(s.K).with_degrees(degrees) for nm, img in assignment.items()}
        for key, c in s.terms.items():
            g = key_graph(key)
            gens = [Series.generator(Generator(nm, degrees[nm]), s.K).with_degrees(degrees) for nm in key[2]]
            passed = 0
            for i, nm in enumerate(key[2]):
                if nm in images and not images[nm].is_zero():
                    args = gens[:i] + [images[nm]] + gens[i + 1 :]
                    sign = -1 if passed % 2 else 1
                    parts.append(apply_graph(g, args).scale(sign * c))
                passed += degrees[nm]
        return sum_series(parts, s.K)

    return d


EPSILON = "__eps"


def polarize(F: Callable[..., "Series"], args: Sequence, slot: int, direction: Series) -> Series:
    """The epsilon-linear part of ``F(..., args[slot] + eps*direction, ...)``.

    ``args[slot]`` may be a Series or a group element (anything with a
    ``series`` attribute and a ``replace_series`` method).  A fresh generator
    of the direction's degree stands for ``eps*direction``; the terms linear in
    it are kept and it is then substituted by the direction.
    """
    deg = direction.homogeneous_degree() or 0
    K = direction.K
    eps = Series.generator(Generator(EPSILON, deg), K)
    target = args[slot]
    if isinstance(target, Series):
        moved = target.with_degrees({EPSILON: deg}) + eps
    else:
        moved = target.replace_series(target.series.with_degrees({EPSILON: deg}) + eps)
    new_args = list(args)
    new_args[slot] = moved
    out = F(*new_args)
    series = out.series if hasattr(out, "series") else out
    linear = series.filter(lambda k: k[2].count(EPSILON) == 1)
    result = substitute(linear, {EPSILON: direction.with_degrees({EPSILON: deg})})
    degrees = {nm: d for nm, d in result.degrees.items() if nm != EPSILON}
    return Series(result.K, result.terms, degrees, result.flavor)
