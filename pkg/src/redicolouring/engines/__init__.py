"""Redicolouring engines.

Each engine turns a structural certificate (a degeneracy ordering, a
partition with cycle witnesses, an optimal dicolouring, a proper colouring
of the underlying graph) into an explicit recolouring sequence, asserting
the promised invariants move by move.
"""

from .bounds import check_recurrences, f, g
from .grundy import digrundy_sequence, grundy_cascade
from .lists import ListAssignment, avoid_colours
from .mixing import mix_bounded, mix_simple
from .partition import (
    Partition,
    check_partition,
    eliminate_colours,
    mad_partition,
    partition_recolour,
    singleton_partition,
)
from .quadratic import mix_quadratic
from .underlying import reduced_graph, ug_reduction_sequence

__all__ = [
    "ListAssignment",
    "Partition",
    "avoid_colours",
    "check_partition",
    "check_recurrences",
    "digrundy_sequence",
    "eliminate_colours",
    "f",
    "g",
    "grundy_cascade",
    "mad_partition",
    "mix_bounded",
    "mix_quadratic",
    "mix_simple",
    "partition_recolour",
    "reduced_graph",
    "singleton_partition",
    "ug_reduction_sequence",
]
