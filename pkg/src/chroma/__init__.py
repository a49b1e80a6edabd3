"""Exact counts, overprediction bounds and corpus checks for proper k-colorings."""

from .graph import Graph, from_edge_list, parse_graph6, encode_graph6
from .chromatic import chromatic_polynomial, count_colorings, chromatic_number, enumerate_colorings

__all__ = [
    "Graph",
    "from_edge_list",
    "parse_graph6",
    "encode_graph6",
    "chromatic_polynomial",
    "count_colorings",
    "chromatic_number",
    "enumerate_colorings",
]
