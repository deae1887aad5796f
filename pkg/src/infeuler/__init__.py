"""Computable infinite Eulerian paths on moderately computable multigraphs."""

from .core import (
    INFINITE,
    FinitePath,
    Incidence,
    PathError,
    concat_left,
    concat_right,
    degree_in_path,
    invert,
    validate_path,
)
from .deciders import (
    Decided,
    Exhausted,
    connectivity_decider_one_end,
    finite_component_semidecider,
    incident_survivors,
    is_bi_extensible,
    is_distinguished,
    is_right_extensible,
)
from .finite import (
    FiniteMultigraph,
    Infeasible,
    brute_force_euler,
    components,
    eulerian_finite,
    handshake_check,
    induced,
    remove_edges,
    to_dot,
)
from .oracle import (
    FAMILIES,
    GraphDescription,
    GraphOracle,
    ball,
    family_fat_ray,
    family_line,
    family_loop_star,
    family_ray,
    load_graph,
    load_presentation,
)
from .stream import EulerStream, Mode, Side, one_way_stream, two_way_stream

__version__ = "0.1.0"
