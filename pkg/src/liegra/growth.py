"""Growth of the graph operad: exact counts of connected labeled DAGs, the
quadratic-exponent lower bound, Schroeder numbers and the shuffle-tree
bound, with a finite-range comparison of their logarithmic growth."""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations, product

from . import graphs as G


@lru_cache(maxsize=None)
def count_dsgra(n: int, method: str = "sink-peeling", cap: int | None = None) -> int:
    """Exact number of connected labeled simple DAGs on n vertices.

    ``sink-peeling`` and ``edge-subset`` enumerate every labeled DAG (by two
    unrelated constructions) and keep the connected ones; ``natural`` sums
    n!/linext(T) over connected DAGs T whose edges respect 1 < 2 < ... < n.
    """
    cap = G.cap_labeled() if cap is None else cap
    if n < 1:
        raise G.GraphError("n must be at least 1")
    if n > cap:
        raise G.CapExceededError("exact count", n, cap)
    if method == "sink-peeling":
        return sum(1 for m in G.sink_peeling_dags(n) if G.mask_connected(n, m))
    if method == "edge-subset":
        return sum(1 for _ in G.enumerate_labeled(n, G.CONNECTED, cap=cap))
    if method == "natural":
        return _natural_count(n, connected=True)
    raise ValueError(f"unknown counting method {method!r}")


def _natural_count(n: int, connected: bool) -> int:
    pairs = [G.bit(i, j) for i, j in combinations(range(n), 2)]
    total = Fraction(0)
    fact = math.factorial(n)
    for choice in range(1 << len(pairs)):
        m = 0
        for t in G.bits(choice):
            m |= pairs[t]
        if connected and not G.mask_connected(n, m):
            continue
        total += Fraction(fact, G.linext_mask(n, m))
    if total.denominator != 1:
        raise ArithmeticError("natural-labeling sum is not an integer")
    return int(total)


def count_all_dags(n: int) -> int:
    return sum(1 for _ in G.sink_peeling_dags(n))


def lower_bound(n: int) -> int:
    return 2 ** (math.comb(n, 2) - n + 1)


def upper_bound(n: int) -> int:
    return 3 ** math.comb(n, 2)


def lower_bound_check(n: int, cap: int | None = None) -> bool:
    """Strict inequality lower_bound(n) < |dsGra(n)| <= upper_bound(n)."""
    exact = count_dsgra(n, cap=cap)
    return lower_bound(n) < exact <= upper_bound(n)


@lru_cache(maxsize=None)
def schroder(n: int) -> int:
    """Planar rooted trees with n leaves and internal arities >= 2 (s1 = s2 = 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n <= 2:
        return 1
    num = (6 * n - 9) * schroder(n - 1) - (n - 3) * schroder(n - 2)
    q, r = divmod(num, n)
    if r:
        raise ArithmeticError(f"recurrence not integral at n={n}")
    return q


@lru_cache(maxsize=None)
def planar_trees(n: int) -> tuple:
    """Every planar tree with n leaves, as nested tuples (a leaf is ``()``)."""
    if n == 1:
        return ((),)
    out = []
    for k in range(2, n + 1):
        for sizes in _ordered_parts(n, k):
            for children in product(*(planar_trees(s) for s in sizes)):
                out.append(tuple(children))
    return tuple(out)


def _ordered_parts(total: int, k: int):
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _ordered_parts(total - first, k - 1):
            yield (first,) + rest


def schroder_enumerated(n: int) -> int:
    return len(planar_trees(n))


def shuffle_bound(n: int, b: int) -> int:
    return 6**n * math.factorial(n) * b ** (n - 1)


@dataclass
class GrowthRow:
    n: int
    exact: int | None
    lower: int
    upper: int
    schroder: int
    shuffle: int


@dataclass
class GrowthReport:
    rows: list
    b: int
    exact_cap: int
    slope_gaps: list
    monotone_from: int
    monotone_to: int
    monotone: bool
    crossover: int | None

    def verdict(self) -> str:
        trend = "strictly increasing" if self.monotone else "NOT monotone"
        cross = f"log2(lower) first exceeds log2(shuffle) at n={self.crossover}" if self.crossover else "no crossover found"
        return (
            f"finite-range evidence (not a proof): the successive log2 slope gap "
            f"[lower] - [shuffle] is {trend} on {self.monotone_from}<=n<={self.monotone_to} "
            f"(quadratic vs n log n growth); with b={self.b}, {cross}"
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "exact", "lower", "upper", "schroder", "shuffle"])
        for r in self.rows:
            w.writerow([r.n, "" if r.exact is None else r.exact, r.lower, r.upper, r.schroder, r.shuffle])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "exact_cap": self.exact_cap,
            "rows": [{k: (str(v) if isinstance(v, int) and v > 2**53 else v) for k, v in asdict(r).items()} for r in self.rows],
            "slope_gaps": [[n, round(g, 9)] for n, g in self.slope_gaps],
            "monotone": self.monotone,
            "crossover": self.crossover,
            "verdict": self.verdict(),
        }

    def to_text(self) -> str:
        lines = [f"{'n':>3} {'exact':>10} {'log2 lower':>11} {'log2 upper':>11} {'s_n':>12} {'log2 shuffle':>13}"]
        for r in self.rows:
            ex = "" if r.exact is None else str(r.exact)
            lines.append(
                f"{r.n:>3} {ex:>10} {math.log2(r.lower):>11.2f} {math.log2(r.upper):>11.2f} "
                f"{r.schroder:>12} {math.log2(r.shuffle):>13.2f}"
            )
        lines.append(self.verdict())
        return "\n".join(lines) + "\n"


def growth_report(n_max: int = 20, b: int | None = None, exact_cap: int | None = None,
                  window: tuple[int, int] = (8, 20)) -> GrowthReport:
    """Rows for 1..n_max (exact counts up to ``exact_cap``) plus the verdict.

    ``b`` defaults to the largest exact count computed, i.e. the largest
    arity dimension among the generators considered.
    """
    exact_cap = min(G.cap_labeled() if exact_cap is None else exact_cap, n_max)
    exact = {n: count_dsgra(n, cap=max(exact_cap, 1)) for n in range(1, exact_cap + 1)}
    if b is None:
        b = max(exact.values()) if exact else 2
    rows = [
        GrowthRow(n, exact.get(n), lower_bound(n), upper_bound(n), schroder(n), shuffle_bound(n, b))
        for n in range(1, n_max + 1)
    ]
    lo, hi = window
    hi = max(lo, min(hi, n_max))

    def log_lower(n):
        return math.comb(n, 2) - n + 1

    def log_shuffle(n):
        return n * math.log2(6) + math.lgamma(n + 1) / math.log(2) + (n - 1) * math.log2(b)

    gaps = [
        (n, (log_lower(n) - log_lower(n - 1)) - (log_shuffle(n) - log_shuffle(n - 1))) for n in range(lo, hi + 1)
    ]
    monotone = all(b2 > a2 for (_, a2), (_, b2) in zip(gaps, gaps[1:]))
    crossover = None
    for n in range(2, 100000):
        if log_lower(n) > log_shuffle(n):
            crossover = n
            break
    return GrowthReport(rows, b, exact_cap, gaps, lo, hi, monotone, crossover)
