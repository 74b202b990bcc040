"""Exact Turan-number tools for odd prisms and related graphs."""

__version__ = "0.1.0"

from .graph import Graph, GraphError, decode_graph6, encode_graph6, make_graph  # noqa: E402
from .canon import canonical_bytes, canonical_form, is_isomorphic  # noqa: E402
from .containment import Pattern, contains, is_free  # noqa: E402

__all__ = [
    "Graph",
    "GraphError",
    "Pattern",
    "canonical_bytes",
    "canonical_form",
    "contains",
    "decode_graph6",
    "encode_graph6",
    "is_free",
    "is_isomorphic",
    "make_graph",
]
