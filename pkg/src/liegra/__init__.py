"""Exact computations in the operad of directed simple graphs and in free
Lie-graph algebras: compositions, graph exponential and logarithm, the gauge
group product, bowtie actions and growth counts."""

__version__ = "0.1.0"
