from __future__ import annotations

import csv
import io
import json
import math

import pytest

from liegra import graphs as G
from liegra import growth as GR


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 18), (4, 446), (5, 26430)])
def test_exact_counts(n, expected):
    assert GR.count_dsgra(n) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_counting_routes_agree(n):
    assert GR.count_dsgra(n, "edge-subset") == GR.count_dsgra(n, "natural") == GR.count_dsgra(n)


def test_all_dag_counts():
    # labeled DAGs: 1, 3, 25, 543, 29281
    assert [GR.count_all_dags(n) for n in range(1, 6)] == [1, 3, 25, 543, 29281]


def test_count_errors():
    with pytest.raises(G.CapExceededError):
        GR.count_dsgra(7)
    with pytest.raises(ValueError):
        GR.count_dsgra(3, "guess")


def test_bounds():
    assert GR.lower_bound(2) == 1 and GR.lower_bound(3) == 2
    assert GR.upper_bound(3) == 27
    for n in range(3, 6):
        assert GR.lower_bound_check(n)


def test_schroder_against_enumeration():
    for n in range(1, 11):
        assert GR.schroder(n) == GR.schroder_enumerated(n)
    assert [GR.schroder(n) for n in range(1, 8)] == [1, 1, 3, 11, 45, 197, 903]
    assert all(GR.schroder(n) <= 6**n for n in range(1, 21))


def test_shuffle_bound():
    assert GR.shuffle_bound(1, 5) == 6
    assert GR.shuffle_bound(3, 2) == 6**3 * 6 * 4


def test_report_rows_and_verdict():
    rep = GR.growth_report(20, exact_cap=5)
    assert [r.n for r in rep.rows] == list(range(1, 21))
    assert rep.b == 26430
    for r in rep.rows:
        assert (r.exact is not None) == (r.n <= 5)
        if r.exact is not None:
            assert r.lower <= r.exact <= r.upper
    assert rep.monotone
    assert "not a proof" in rep.verdict()
    assert rep.crossover is not None and rep.crossover > 20
    # the crossover is where log2 of the lower bound passes log2 of the shuffle bound
    n = rep.crossover
    assert math.log2(GR.lower_bound(n)) > math.log2(GR.shuffle_bound(n, rep.b))
    assert math.log2(GR.lower_bound(n - 1)) <= math.log2(GR.shuffle_bound(n - 1, rep.b))


def test_report_serializations():
    rep = GR.growth_report(8, b=5, exact_cap=4)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["n", "exact", "lower", "upper", "schroder", "shuffle"]
    assert rows[3] == ["3", "18", "2", "27", "3", str(GR.shuffle_bound(3, 5))]
    assert rows[5][1] == ""
    data = json.loads(json.dumps(rep.to_dict()))
    assert data["b"] == 5 and len(data["rows"]) == 8
    assert rep.to_text().rstrip().endswith(f"n={rep.crossover}")
