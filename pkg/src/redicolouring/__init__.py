"""Digraph dicolouring and recolouring toolkit."""

from .colouring import Colouring, is_dicolouring
from .digraph import (
    Cycle,
    Digraph,
    Graph,
    bidirect,
    induced_subdigraph,
    is_acyclic_with_witness,
    strongly_connected_components,
    underlying_graph,
)
from .dwidth import DDecomposition
from .oracle import RecolouringSequence

__all__ = [
    "Colouring",
    "Cycle",
    "DDecomposition",
    "Digraph",
    "Graph",
    "RecolouringSequence",
    "bidirect",
    "induced_subdigraph",
    "is_acyclic_with_witness",
    "is_dicolouring",
    "strongly_connected_components",
    "underlying_graph",
]
