"""Finite-graph models of the two network phases.

Phase I is a disjoint union of connected cluster graphs; phase II is one
connected graph over the same atoms.  Atoms are nodes and bonds are arcs,
so parallel bonds are allowed but a bond may not join an atom to itself.

Homeomorphism is decided through the reduced multigraph (all degree-2 nodes
suppressed), whose isomorphism class is a topological invariant.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

SCHEMA = "cantornet/1"
BRUTE_FORCE_LIMIT = 10


class PhaseError(ValueError):
    """A phase document failed validation; ``element`` names the culprit."""

    def __init__(self, message: str, element=None):
        super().__init__(message)
        self.element = element

    @property
    def name(self) -> str:
        return type(self).__name__


class SchemaError(PhaseError):
    pass


class DuplicateAtom(PhaseError):
    pass


class DuplicateCluster(PhaseError):
    pass


class SelfLoop(PhaseError):
    pass


class UnknownEndpoint(PhaseError):
    pass


class DisconnectedCluster(PhaseError):
    pass


class Disconnected(PhaseError):
    pass


class IsolatedAtom(PhaseError):
    pass


@dataclass(frozen=True)
class Bond:
    """An arc from ``u`` (parameter 0) to ``v`` (parameter 1)."""

    u: str
    v: str

    def __iter__(self):
        return iter((self.u, self.v))


def _pairs(bonds: Iterable) -> list[tuple[str, str]]:
    return [(b.u, b.v) if isinstance(b, Bond) else (b[0], b[1]) for b in bonds]


def _as_bonds(bonds) -> tuple[Bond, ...]:
    return tuple(b if isinstance(b, Bond) else Bond(*b) for b in bonds)


def _check_graph(atoms, bonds, disconnected_error, label):
    for a in atoms:
        if not isinstance(a, str) or not a:
            raise SchemaError(f"{label}: atom ids must be non-empty strings", a)
    seen = set()
    for a in atoms:
        if a in seen:
            raise DuplicateAtom(f"{label}: atom {a!r} listed twice", a)
        seen.add(a)
    for b in bonds:
        if b.u == b.v:
            raise SelfLoop(f"{label}: bond ({b.u}, {b.v}) joins an atom to itself", b.u)
        for end in (b.u, b.v):
            if end not in seen:
                raise UnknownEndpoint(f"{label}: bond endpoint {end!r} is not an atom", end)
    touched = {end for b in bonds for end in (b.u, b.v)}
    for a in atoms:
        if a not in touched:
            raise IsolatedAtom(f"{label}: atom {a!r} has no bonds", a)
    parts = components(atoms, bonds)
    if len(parts) > 1:
        raise disconnected_error(
            f"{label}: {len(parts)} components; {parts[1][0]!r} is unreachable from {parts[0][0]!r}",
            parts[1][0],
        )


@dataclass(frozen=True)
class ClusterGraph:
    id: str
    atoms: tuple[str, ...]
    bonds: tuple[Bond, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "bonds", _as_bonds(self.bonds))
        _check_graph(self.atoms, self.bonds, DisconnectedCluster, f"cluster {self.id!r}")


@dataclass(frozen=True)
class PhaseI:
    """Clustered phase: the disjoint union of its cluster graphs."""

    clusters: tuple[ClusterGraph, ...]
    kind = "phase1"

    def __post_init__(self):
        object.__setattr__(self, "clusters", tuple(self.clusters))
        if not self.clusters:
            raise SchemaError("phase1 needs at least one cluster")
        ids, owner = set(), {}
        for c in self.clusters:
            if c.id in ids:
                raise DuplicateCluster(f"cluster id {c.id!r} used twice", c.id)
            ids.add(c.id)
            for a in c.atoms:
                if a in owner:
                    raise DuplicateAtom(f"atom {a!r} appears in clusters {owner[a]!r} and {c.id!r}", a)
                owner[a] = c.id

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(a for c in self.clusters for a in c.atoms)

    @property
    def bonds(self) -> tuple[Bond, ...]:
        return tuple(b for c in self.clusters for b in c.bonds)

    def cluster(self, cluster_id: str) -> ClusterGraph:
        for c in self.clusters:
            if c.id == cluster_id:
                return c
        raise KeyError(cluster_id)


@dataclass(frozen=True)
class PhaseII:
    """Connected phase: one graph, no isolated atoms."""

    atoms: tuple[str, ...]
    bonds: tuple[Bond, ...]
    kind = "phase2"

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "bonds", _as_bonds(self.bonds))
        _check_graph(self.atoms, self.bonds, Disconnected, "phase2")


Phase = PhaseI | PhaseII


def degree(phase: Phase, atom: str) -> int:
    return sum((b.u == atom) + (b.v == atom) for b in phase.bonds)


def _parse_bonds(raw, label) -> list[Bond]:
    if not isinstance(raw, list):
        raise SchemaError(f"{label}: 'bonds' must be a list")
    bonds = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, str) for x in item)):
            raise SchemaError(f"{label}: bond {item!r} is not a pair of atom ids", item)
        bonds.append(Bond(item[0], item[1]))
    return bonds


def _parse_atoms(raw, label) -> list[str]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{label}: 'atoms' must be a non-empty list")
    return raw


def parse_phase(document: Mapping) -> Phase:
    """Validate a ``cantornet/1`` phase document and build the phase."""
    if not isinstance(document, Mapping):
        raise SchemaError("phase document must be a JSON object")
    if document.get("schema") != SCHEMA:
        raise SchemaError(f"schema tag must be {SCHEMA!r}, got {document.get('schema')!r}")
    kind = document.get("kind")
    if kind == "phase1":
        raw = document.get("clusters")
        if not isinstance(raw, list) or not raw:
            raise SchemaError("phase1: 'clusters' must be a non-empty list")
        clusters = []
        for c in raw:
            if not isinstance(c, Mapping) or not isinstance(c.get("id"), str) or not c.get("id"):
                raise SchemaError("phase1: every cluster needs a non-empty string 'id'", c)
            label = f"cluster {c['id']!r}"
            clusters.append(
                ClusterGraph(c["id"], _parse_atoms(c.get("atoms"), label), _parse_bonds(c.get("bonds"), label))
            )
        return PhaseI(tuple(clusters))
    if kind == "phase2":
        return PhaseII(_parse_atoms(document.get("atoms"), "phase2"), _parse_bonds(document.get("bonds"), "phase2"))
    raise SchemaError(f"kind must be 'phase1' or 'phase2', got {kind!r}", kind)


def phase_document(phase: Phase) -> dict:
    """Inverse of ``parse_phase``."""
    if isinstance(phase, PhaseI):
        return {
            "schema": SCHEMA,
            "kind": "phase1",
            "clusters": [
                {"id": c.id, "atoms": list(c.atoms), "bonds": [[b.u, b.v] for b in c.bonds]}
                for c in phase.clusters
            ],
        }
    return {
        "schema": SCHEMA,
        "kind": "phase2",
        "atoms": list(phase.atoms),
        "bonds": [[b.u, b.v] for b in phase.bonds],
    }


def components(atoms: Sequence[str], bonds: Iterable) -> list[list[str]]:
    """Connected components, each listed in discovery order, ordered by first atom."""
    adjacency = {a: [] for a in atoms}
    for u, v in _pairs(bonds):
        for end in (u, v):
            if end not in adjacency:
                raise UnknownEndpoint(f"bond endpoint {end!r} is not an atom", end)
        adjacency[u].append(v)
        adjacency[v].append(u)
    seen, out = set(), []
    for start in atoms:
        if start in seen:
            continue
        seen.add(start)
        comp, queue = [], deque([start])
        while queue:
            a = queue.popleft()
            comp.append(a)
            for b in adjacency[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        out.append(comp)
    return out


@dataclass(frozen=True)
class ReducedGraph:
    """Multigraph left after suppressing degree-2 nodes.

    ``edges`` are sorted ``(a, b)`` pairs with ``a <= b``; loops are ``(a, a)``.
    A component that was a bare cycle becomes one node carrying one loop.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def degrees(self) -> dict[str, int]:
        deg = {n: 0 for n in self.nodes}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    @property
    def loops(self) -> int:
        return sum(a == b for a, b in self.edges)

    @property
    def parallel(self) -> int:
        counts = Counter(e for e in self.edges if e[0] != e[1])
        return sum(k - 1 for k in counts.values())

    @property
    def circles(self) -> int:
        return sum(d == 2 for d in self.degrees().values())


def reduce(atoms: Sequence[str], bonds: Iterable) -> ReducedGraph:
    pairs = _pairs(bonds)
    incidence: dict[str, list[tuple[int, str]]] = {a: [] for a in atoms}
    for k, (u, v) in enumerate(pairs):
        incidence[u].append((k, v))
        incidence[v].append((k, u))
    nodes, edges = [], []
    for comp in components(atoms, pairs):
        if all(len(incidence[a]) == 2 for a in comp):
            nodes.append(comp[0])
            edges.append((comp[0], comp[0]))
            continue
        branch = [a for a in comp if len(incidence[a]) != 2]
        nodes.extend(branch)
        used: set[int] = set()
        for start in branch:
            for k, nxt in incidence[start]:
                if k in used:
                    continue
                used.add(k)
                prev, cur = k, nxt
                while len(incidence[cur]) == 2:
                    (k1, n1), (k2, n2) = incidence[cur]
                    prev, cur = (k2, n2) if k1 == prev else (k1, n1)
                    used.add(prev)
                edges.append(tuple(sorted((start, cur))))
    order = {a: i for i, a in enumerate(atoms)}
    nodes.sort(key=order.__getitem__)
    return ReducedGraph(tuple(nodes), tuple(sorted(edges)))


@dataclass(frozen=True)
class ReducedSummary:
    branch_degrees: tuple[int, ...]
    loops: int
    parallel: int
    circles: int

    def to_json(self) -> dict:
        return {
            "branch_degrees": list(self.branch_degrees),
            "loops": self.loops,
            "parallel": self.parallel,
            "circles": self.circles,
        }


def _summary(r: ReducedGraph) -> ReducedSummary:
    degs = sorted((d for d in r.degrees().values() if d != 2), reverse=True)
    return ReducedSummary(tuple(degs), r.loops, r.parallel, r.circles)


@dataclass(frozen=True)
class InvariantReport:
    components: int
    nodes: int
    edges: int
    degrees: tuple[int, ...]
    cycle_rank: int
    reduced: ReducedSummary

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "nodes": self.nodes,
            "edges": self.edges,
            "degrees": list(self.degrees),
            "cycle_rank": self.cycle_rank,
            "reduced": self.reduced.to_json(),
        }


def graph_invariants(atoms: Sequence[str], bonds: Sequence) -> InvariantReport:
    pairs = _pairs(bonds)
    deg = Counter()
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    c = len(components(atoms, pairs))
    return InvariantReport(
        components=c,
        nodes=len(atoms),
        edges=len(pairs),
        degrees=tuple(sorted((deg[a] for a in atoms), reverse=True)),
        cycle_rank=len(pairs) - len(atoms) + c,
        reduced=_summary(reduce(atoms, pairs)),
    )


def invariants(phase: Phase) -> InvariantReport:
    return graph_invariants(phase.atoms, phase.bonds)


@dataclass(frozen=True)
class Witness:
    invariant: str
    left: object
    right: object

    def __str__(self):
        return f"{self.invariant} {self.left} vs {self.right}"


@dataclass(frozen=True)
class Obstruction:
    """Verdict of ``obstruction``: "NotHomeomorphic", "Homeomorphic" or "Inconclusive"."""

    verdict: str
    witness: Witness | None = None
    mapping: dict[str, str] | None = field(default=None, hash=False, compare=False)
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None
            if self.witness is None
            else {"invariant": self.witness.invariant, "left": self.witness.left, "right": self.witness.right},
            "mapping": self.mapping,
            "detail": self.detail,
        }


def _component_signatures(atoms, pairs) -> list[tuple]:
    sigs = []
    for comp in components(atoms, pairs):
        members = set(comp)
        sub = [(u, v) for u, v in pairs if u in members]
        inv = graph_invariants(comp, sub)
        r = inv.reduced
        sigs.append((inv.cycle_rank, r.branch_degrees, r.loops, r.parallel, r.circles))
    return sorted(sigs)


def _isomorphism(a: ReducedGraph, b: ReducedGraph) -> dict[str, str] | None:
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return None
    mult_a, mult_b = Counter(a.edges), Counter(b.edges)
    deg_a, deg_b = a.degrees(), b.degrees()

    def m(counter, x, y):
        return counter[(x, y) if x <= y else (y, x)]

    order = sorted(a.nodes, key=lambda n: -deg_a[n])
    mapping: dict[str, str] = {}
    taken: set[str] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in b.nodes:
            if y in taken or deg_b[y] != deg_a[x] or m(mult_b, y, y) != m(mult_a, x, x):
                continue
            if any(m(mult_a, x, x2) != m(mult_b, y, y2) for x2, y2 in mapping.items()):
                continue
            mapping[x] = y
            taken.add(y)
            if extend(k + 1):
                return True
            del mapping[x]
            taken.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def obstruction(a: Phase, b: Phase, limit: int = BRUTE_FORCE_LIMIT) -> Obstruction:
    """Decide whether two phases are homeomorphic as topological graphs.

    Cheap invariants are compared first so that a mismatch comes with a
    readable witness; reduced graphs up to ``limit`` nodes are then matched
    by backtracking search.
    """
    pa, pb = _pairs(a.bonds), _pairs(b.bonds)
    ia, ib = graph_invariants(a.atoms, pa), graph_invariants(b.atoms, pb)
    if ia.components != ib.components:
        return Obstruction("NotHomeomorphic", Witness("components", ia.components, ib.components))
    if ia.cycle_rank != ib.cycle_rank:
        return Obstruction("NotHomeomorphic", Witness("cycle rank", ia.cycle_rank, ib.cycle_rank))
    if ia.reduced.branch_degrees != ib.reduced.branch_degrees:
        return Obstruction(
            "NotHomeomorphic",
            Witness("branch degrees", list(ia.reduced.branch_degrees), list(ib.reduced.branch_degrees)),
        )
    if ia.reduced.circles != ib.reduced.circles:
        return Obstruction("NotHomeomorphic", Witness("circles", ia.reduced.circles, ib.reduced.circles))
    sa, sb = _component_signatures(a.atoms, pa), _component_signatures(b.atoms, pb)
    if sa != sb:
        return Obstruction(
            "NotHomeomorphic",
            Witness("component signatures", [list(map(_jsonable, s)) for s in sa], [list(map(_jsonable, s)) for s in sb]),
        )
    ra, rb = reduce(a.atoms, pa), reduce(b.atoms, pb)
    size = max(len(ra.nodes), len(rb.nodes))
    if size > limit:
        return Obstruction("Inconclusive", detail=f"reduced graphs have {size} nodes, search limit is {limit}")
    mapping = _isomorphism(ra, rb)
    if mapping is None:
        return Obstruction("NotHomeomorphic", Witness("reduced isomorphism", "none", "exhausted"))
    return Obstruction("Homeomorphic", mapping=mapping, detail="reduced graphs are isomorphic")


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def subdivide(atoms: Sequence[str], bonds: Sequence, index: int, new_atom: str):
    """Insert ``new_atom`` in the middle of bond ``index``; returns new (atoms, bonds)."""
    pairs = _pairs(bonds)
    u, v = pairs[index]
    pairs[index : index + 1] = [(u, new_atom), (new_atom, v)]
    return list(atoms) + [new_atom], [Bond(x, y) for x, y in pairs]
