"""Decomposition-space encodings of the two phases.

Every arc of a phase gets a block of {0,1}^Λ cut out by a prefix code.  In
phase I the block is ``J_i · K_l``: a cluster code over λ followed by an edge
code over μ scoped to that cluster.  In phase II it is ``L_j`` over σ.  The
arc parameter t is carried by a per-edge tail family (ν or ξ) holding a
binary expansion of t, so the preimage of a point is a finite union of
cylinder parts.

Arcs are oriented by input order: ``bond.u`` sits at t = 0, ``bond.v`` at
t = 1.  A node's fiber therefore has one part per incident arc-end, with an
all-zero tail at u-ends and an all-one tail at v-ends.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cantor import (
    ONES,
    ZEROS,
    Bits,
    BitStream,
    CoordinateId,
    CylinderPart,
    Family,
    Fiber,
    KraftVerdict,
    Tail,
    TailFamily,
    as_bits,
    as_rational,
    expansions,
    fibers_disjoint,
    format_rational,
    kraft_check,
)
from .graph import Bond, Phase, PhaseI, PhaseII


class EncodingError(ValueError):
    @property
    def name(self) -> str:
        return type(self).__name__


class UnknownPoint(EncodingError):
    pass


class EndpointParameter(EncodingError):
    pass


class MixedClusters(EncodingError):
    pass


class AtomMissingInPhase(EncodingError):
    pass


class AtomUniverseMismatch(EncodingError):
    pass


class KindMismatch(EncodingError):
    pass


class DepthTooSmall(EncodingError):
    pass


class DepthTooLarge(EncodingError):
    pass


MAX_COVER_DEPTH = 22


@dataclass(frozen=True)
class PrefixCode:
    """A code word bound to the coordinates ``(family, scope, 1..len)``."""

    bits: Bits
    family: Family
    scope: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bits", as_bits(self.bits))
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "scope", tuple(self.scope))

    def coordinates(self) -> dict[CoordinateId, int]:
        return {CoordinateId(self.family, self.scope, k): b for k, b in enumerate(self.bits, start=1)}

    def to_json(self) -> list[int]:
        return list(self.bits)


def assign_codes(count: int, family: Family = Family.LAMBDA, scope: Sequence[int] = ()) -> list[PrefixCode]:
    """Codes ``1^(i-1) 0`` for i < count and ``1^(count-1)`` for the last block."""
    if count < 1:
        raise ValueError("count must be at least 1")
    words = [(1,) * (i - 1) + (0,) for i in range(1, count)] + [(1,) * (count - 1)]
    return [PrefixCode(w, family, tuple(scope)) for w in words]


@dataclass(frozen=True)
class Block:
    """The cylinder block of {0,1}^Λ mapped onto one arc.

    ``edge`` is the 1-based bond index inside its cluster (phase I) or
    inside the whole graph (phase II).
    """

    edge: int
    bond: Bond
    edge_code: PrefixCode
    tail: TailFamily
    cluster: str | None = None
    cluster_code: PrefixCode | None = None

    @property
    def code(self) -> Bits:
        head = self.cluster_code.bits if self.cluster_code is not None else ()
        return head + self.edge_code.bits

    @property
    def fixed(self) -> dict[CoordinateId, int]:
        out = {} if self.cluster_code is None else self.cluster_code.coordinates()
        out.update(self.edge_code.coordinates())
        return out

    def part(self, stream: BitStream) -> CylinderPart:
        return CylinderPart(self.fixed, Tail(self.tail, stream))

    def to_json(self) -> dict:
        return {
            "cluster": self.cluster,
            "edge": self.edge,
            "bond": [self.bond.u, self.bond.v],
            "J": None if self.cluster_code is None else self.cluster_code.to_json(),
            "code": self.edge_code.to_json(),
            "tail": self.tail.to_json(),
        }


@dataclass(frozen=True)
class Encoding:
    kind: str
    phase: Phase
    blocks: tuple[Block, ...]

    def cluster_table(self) -> list[PrefixCode]:
        seen: dict[str, PrefixCode] = {}
        for b in self.blocks:
            if b.cluster is not None:
                seen.setdefault(b.cluster, b.cluster_code)
        return list(seen.values())

    def edge_tables(self) -> dict[str | None, list[PrefixCode]]:
        tables: dict[str | None, list[PrefixCode]] = {}
        for b in self.blocks:
            tables.setdefault(b.cluster, []).append(b.edge_code)
        return tables

    def block(self, cluster: str | None, edge: int) -> Block:
        for b in self.blocks:
            if b.cluster == cluster and b.edge == edge:
                return b
        where = f"cluster {cluster!r} " if cluster is not None else ""
        raise UnknownPoint(f"no edge {edge} in {where}{self.kind}")

    def verify(self) -> list[str]:
        """Problems with the code tables or tail allocation; empty when sound."""
        problems = []
        tables = {"J": [c.bits for c in self.cluster_table()]} if self.kind == "phase1" else {}
        for cluster, codes in self.edge_tables().items():
            tables["K" if self.kind == "phase1" else "L", cluster] = [c.bits for c in codes]
        for label, codes in tables.items():
            if codes and not kraft_check(codes):
                problems.append(f"code table {label} is not a complete prefix code")
        tails = [b.tail for b in self.blocks]
        if len(set(tails)) != len(tails):
            problems.append("tail families are not pairwise distinct")
        for b in self.blocks:
            if any(b.tail.covers(c) for c in b.fixed):
                problems.append(f"tail family of edge {b.edge} overlaps its code coordinates")
        return problems

    def to_json(self) -> dict:
        tables = self.edge_tables()
        out = {"kind": self.kind}
        if self.kind == "phase1":
            out["J"] = {cid: code.to_json() for cid, code in zip(tables, self.cluster_table())}
            out["K"] = {cid: [c.to_json() for c in codes] for cid, codes in tables.items()}
        else:
            out["L"] = [c.to_json() for c in tables.get(None, [])]
        out["blocks"] = [b.to_json() for b in self.blocks]
        return out


def encode_phase_i(phase: PhaseI) -> Encoding:
    blocks = []
    j_table = assign_codes(len(phase.clusters), Family.LAMBDA)
    for i, (cluster, j_code) in enumerate(zip(phase.clusters, j_table), start=1):
        k_table = assign_codes(len(cluster.bonds), Family.MU, (i,))
        for l, (bond, k_code) in enumerate(zip(cluster.bonds, k_table), start=1):
            blocks.append(Block(l, bond, k_code, TailFamily(Family.NU, (i, l)), cluster.id, j_code))
    return Encoding("phase1", phase, tuple(blocks))


def encode_phase_ii(phase: PhaseII) -> Encoding:
    l_table = assign_codes(len(phase.bonds), Family.SIGMA)
    blocks = [
        Block(j, bond, code, TailFamily(Family.XI, (j,)))
        for j, (bond, code) in enumerate(zip(phase.bonds, l_table), start=1)
    ]
    return Encoding("phase2", phase, tuple(blocks))


def encode(phase: Phase) -> Encoding:
    return encode_phase_i(phase) if isinstance(phase, PhaseI) else encode_phase_ii(phase)


@dataclass(frozen=True)
class Node:
    atom: str

    def to_json(self) -> dict:
        return {"node": self.atom}


@dataclass(frozen=True)
class EdgePoint:
    """Interior point at parameter ``t`` of an edge; ``cluster`` is None in phase II."""

    cluster: str | None
    edge: int
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_rational(self.t))

    def to_json(self) -> dict:
        return {"cluster": self.cluster, "edge": self.edge, "t": format_rational(self.t)}


PointRef = Node | EdgePoint


def fiber(enc: Encoding, point: PointRef) -> Fiber:
    if isinstance(point, Node):
        parts = []
        for b in enc.blocks:
            if b.bond.u == point.atom:
                parts.append(b.part(ZEROS))
            if b.bond.v == point.atom:
                parts.append(b.part(ONES))
        if not parts:
            raise UnknownPoint(f"atom {point.atom!r} is not in this {enc.kind}")
        return Fiber(tuple(parts))
    if isinstance(point, EdgePoint):
        block = enc.block(point.cluster, point.edge)
        if point.t in (0, 1):
            end = block.bond.u if point.t == 0 else block.bond.v
            raise EndpointParameter(f"t={point.t} is an arc end; address it as node {end!r}")
        if not 0 < point.t < 1:
            raise UnknownPoint(f"t={point.t} is outside the arc")
        return Fiber(tuple(block.part(s) for s in expansions(point.t)))
    raise TypeError(f"not a point: {point!r}")


@dataclass(frozen=True)
class FactoredPart:
    edge_code: PrefixCode
    tail: TailFamily
    stream: BitStream

    def to_json(self) -> dict:
        return {"code": self.edge_code.to_json(), "tail": self.tail.to_json(), "stream": self.stream.to_json()}


@dataclass(frozen=True)
class Factored:
    """A fiber written as ``J × [part_1 ∪ ... ∪ part_p]``; ``J`` is None in phase II."""

    J: PrefixCode | None
    parts: tuple[FactoredPart, ...]

    def rebuild(self) -> Fiber:
        head = {} if self.J is None else self.J.coordinates()
        return Fiber(
            tuple(CylinderPart({**head, **p.edge_code.coordinates()}, Tail(p.tail, p.stream)) for p in self.parts)
        )

    def to_json(self) -> dict:
        return {"J": None if self.J is None else self.J.to_json(), "parts": [p.to_json() for p in self.parts]}


def factor(f: Fiber, enc: Encoding) -> Factored:
    by_key = {(tuple(sorted(b.fixed.items())), b.tail): b for b in enc.blocks}
    owners, parts = [], []
    for part in f.parts:
        block = by_key.get((part.fixed, part.tail.family if part.tail else None))
        if block is None:
            raise EncodingError("fiber part does not belong to a block of this encoding")
        owners.append(block)
        parts.append(FactoredPart(block.edge_code, block.tail, part.tail.stream))
    clusters = {b.cluster for b in owners}
    if len(clusters) > 1:
        raise MixedClusters(f"fiber spans clusters {sorted(map(str, clusters))}")
    return Factored(owners[0].cluster_code, tuple(parts))


@dataclass(frozen=True)
class DiffReport:
    """How one atom's fiber differs between the clustered and connected phases."""

    atom: str
    cluster: str
    J: PrefixCode
    p: int
    q: int
    phase1_parts: tuple[tuple[int, Bits, BitStream], ...]
    phase2_parts: tuple[tuple[int, Bits, BitStream], ...]

    @property
    def statement(self) -> str:
        j = "".join(map(str, self.J.bits)) or "(empty)"
        return (
            f"phase1 fiber of {self.atom} is J={j} (cluster {self.cluster}) times {self.p} edge parts; "
            f"phase2 fiber has {self.q} edge parts and leaves every lambda coordinate free"
        )

    def to_json(self) -> dict:
        def rows(parts):
            return [{"edge": e, "code": list(c), "stream": s.to_json()} for e, c, s in parts]

        return {
            "atom": self.atom,
            "cluster": self.cluster,
            "J": self.J.to_json(),
            "J_present_in": ["phase1"],
            "p": self.p,
            "q": self.q,
            "K": rows(self.phase1_parts),
            "L": rows(self.phase2_parts),
            "missing_lambda": "phase2 constrains no lambda coordinate",
            "orientation": "tails: all-zero at bond start u (t=0), all-one at bond end v (t=1)",
            "statement": self.statement,
        }


def diff(enc_i: Encoding, enc_ii: Encoding, atom: str) -> DiffReport:
    if enc_i.kind != "phase1" or enc_ii.kind != "phase2":
        raise KindMismatch(f"diff needs a phase1 and a phase2 encoding, got {enc_i.kind} and {enc_ii.kind}")
    for enc in (enc_i, enc_ii):
        if atom not in enc.phase.atoms:
            raise AtomMissingInPhase(f"atom {atom!r} is missing from {enc.kind}")
    if set(enc_i.phase.atoms) != set(enc_ii.phase.atoms):
        extra = sorted(set(enc_i.phase.atoms) ^ set(enc_ii.phase.atoms))
        raise AtomUniverseMismatch(f"phases have different atoms: {extra}")
    f1, f2 = factor(fiber(enc_i, Node(atom)), enc_i), factor(fiber(enc_ii, Node(atom)), enc_ii)
    edge_of = {b.tail: b.edge for enc in (enc_i, enc_ii) for b in enc.blocks}
    cluster = next(b.cluster for b in enc_i.blocks if atom in (b.bond.u, b.bond.v))
    return DiffReport(
        atom=atom,
        cluster=cluster,
        J=f1.J,
        p=len(f1.parts),
        q=len(f2.parts),
        phase1_parts=tuple((edge_of[p.tail], p.edge_code.bits, p.stream) for p in f1.parts),
        phase2_parts=tuple((edge_of[p.tail], p.edge_code.bits, p.stream) for p in f2.parts),
    )


@dataclass(frozen=True)
class SampleVerdict:
    ok: bool
    checked: int
    witnesses: tuple[tuple[int, int, tuple[CoordinateId, ...]], ...] = ()
    violation: tuple[int, int] | None = None
    reason: str = ""


def decomposition_sample(enc: Encoding, points: Sequence[PointRef]) -> SampleVerdict:
    """Check that the fibers of distinct points are pairwise disjoint."""
    points = list(points)
    for i, j in itertools.combinations(range(len(points)), 2):
        if points[i] == points[j]:
            return SampleVerdict(False, 0, violation=(i, j), reason="duplicate point")
    fibers = [fiber(enc, p) for p in points]
    witnesses = []
    for i, j in itertools.combinations(range(len(points)), 2):
        w = fibers_disjoint(fibers[i], fibers[j])
        if w is None:
            return SampleVerdict(False, len(witnesses), tuple(witnesses), (i, j), "fibers intersect")
        witnesses.append((i, j, w))
    return SampleVerdict(True, len(witnesses), tuple(witnesses))


@dataclass(frozen=True)
class CoverVerdict:
    ok: bool
    depth: int
    checked: int
    kraft: KraftVerdict
    gap: Bits | None = None
    overlap: Bits | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "depth": self.depth,
            "checked": self.checked,
            "kraft_sum": format_rational(self.kraft.kraft_sum),
            "gap": None if self.gap is None else list(self.gap),
            "overlap": None if self.overlap is None else list(self.overlap),
        }


def cover_codes(codes: Sequence[Sequence[int]], depth: int) -> CoverVerdict:
    """Every depth-bit word must lie under exactly one code."""
    codes = [as_bits(c) for c in codes]
    if not codes:
        raise ValueError("no block codes to check")
    longest = max(map(len, codes))
    if depth < longest:
        raise DepthTooSmall(f"depth {depth} is below the longest block code ({longest})")
    if depth > MAX_COVER_DEPTH:
        raise DepthTooLarge(f"depth {depth} exceeds the enumeration limit {MAX_COVER_DEPTH}")
    gap = overlap = None
    checked = 0
    for word in itertools.product((0, 1), repeat=depth):
        checked += 1
        hits = sum(word[: len(c)] == c for c in codes)
        if hits == 0 and gap is None:
            gap = word
        elif hits > 1 and overlap is None:
            overlap = word
    kraft = kraft_check(codes)
    ok = gap is None and overlap is None
    if ok != kraft.complete:
        raise AssertionError("enumeration and Kraft test disagree")
    return CoverVerdict(ok, depth, checked, kraft, gap, overlap)


def cover_check(enc: Encoding, depth: int) -> CoverVerdict:
    return cover_codes([b.code for b in enc.blocks], depth)
