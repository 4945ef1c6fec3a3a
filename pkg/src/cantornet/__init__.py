"""Clustered vs. connected atom networks as decomposition spaces of {0,1}^Λ."""

from .cantor import (
    BitStream,
    CoordinateId,
    CylinderPart,
    DyadicInterval,
    Family,
    Fiber,
    Tail,
    TailFamily,
    expansions,
    interval_for_code,
    kraft_check,
    parts_disjoint,
    truncate,
    value_of,
)
from .encoder import (
    EdgePoint,
    Encoding,
    Node,
    assign_codes,
    cover_check,
    decomposition_sample,
    diff,
    encode,
    encode_phase_i,
    encode_phase_ii,
    factor,
    fiber,
)
from .graph import PhaseI, PhaseII, components, invariants, obstruction, parse_phase, reduce

__version__ = "0.1.0"
