"""Exact machinery for the Cantor product space {0,1}^Λ.

Binary expansions of rationals are eventually periodic, so a point's
coordinates along one countable family of indices can be stored as a finite
``BitStream``.  A ``CylinderPart`` fixes finitely many coordinates and
optionally pins one such family to a stream; a ``Fiber`` is a finite union of
parts.  Nothing in this module touches floating point.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Bits = tuple[int, ...]


def as_bits(bits: Iterable[int]) -> Bits:
    out = []
    for b in bits:
        if isinstance(b, bool) or b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        out.append(int(b))
    return tuple(out)


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused so that no rounding can sneak in.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not a rational of the form p/q: {value!r}")
        return Fraction(text)
    raise TypeError(f"exact rational required, got {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _primitive_root(word: Bits) -> Bits:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class BitStream:
    """An eventually periodic bit sequence ``prefix + cycle + cycle + ...``.

    Construction canonicalises: the cycle is reduced to its primitive root and
    trailing prefix bits are rotated into the cycle, so two streams describing
    the same sequence compare equal.
    """

    prefix: Bits
    cycle: Bits

    def __post_init__(self):
        prefix, cycle = as_bits(self.prefix), as_bits(self.cycle)
        if not cycle:
            raise ValueError("cycle must be non-empty")
        cycle = _primitive_root(cycle)
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    def bit(self, position: int) -> int:
        """Bit at 1-based ``position``."""
        if position < 1:
            raise IndexError(position)
        if position <= len(self.prefix):
            return self.prefix[position - 1]
        return self.cycle[(position - len(self.prefix) - 1) % len(self.cycle)]

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}

    @classmethod
    def from_json(cls, data: Mapping) -> BitStream:
        return cls(tuple(data["prefix"]), tuple(data["cycle"]))

    def __str__(self):
        prefix = "".join(map(str, self.prefix))
        return f"0.{prefix}({''.join(map(str, self.cycle))})"


ZEROS = BitStream((), (0,))
ONES = BitStream((), (1,))


def value_of(stream: BitStream) -> Fraction:
    m, c = len(stream.prefix), len(stream.cycle)
    head = int("".join(map(str, stream.prefix)) or "0", 2)
    loop = int("".join(map(str, stream.cycle)), 2)
    return Fraction(head, 2**m) + Fraction(loop, (2**c - 1) * 2**m)


def expansions(y) -> list[BitStream]:
    """All binary expansions of ``y`` in [0, 1].

    Dyadic rationals strictly inside the interval have two: the terminating
    one (listed first) and the one ending in ones.
    """
    y = as_rational(y)
    if not 0 <= y <= 1:
        raise ValueError(f"{y} lies outside [0, 1]")
    if y == 1:
        return [ONES]
    q = y.denominator
    bits: list[int] = []
    seen: dict[int, int] = {}
    r = y.numerator
    while r and r not in seen:
        seen[r] = len(bits)
        r *= 2
        bits.append(r // q)
        r %= q
    if r:
        start = seen[r]
        return [BitStream(tuple(bits[:start]), tuple(bits[start:]))]
    terminating = BitStream(tuple(bits), (0,))
    if y == 0:
        return [terminating]
    # the last emitted bit of a terminating expansion is always 1
    return [terminating, BitStream(tuple(bits[:-1]) + (0,), (1,))]


def truncate(stream: BitStream, n: int) -> Bits:
    if n < 0:
        raise ValueError("n must be non-negative")
    return tuple(stream.bit(k) for k in range(1, n + 1))


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval ``[lo, lo + 2**-depth]``."""

    lo: Fraction
    depth: int

    def __post_init__(self):
        lo = as_rational(self.lo)
        object.__setattr__(self, "lo", lo)
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if (lo * 2**self.depth).denominator != 1:
            raise ValueError(f"{lo} is not a multiple of 2^-{self.depth}")
        if lo < 0 or self.hi > 1:
            raise ValueError("interval must lie inside [0, 1]")

    @property
    def width(self) -> Fraction:
        return Fraction(1, 2**self.depth)

    @property
    def hi(self) -> Fraction:
        return self.lo + self.width

    @property
    def midpoint(self) -> Fraction:
        return self.lo + self.width / 2

    def contains(self, x) -> bool:
        return self.lo <= as_rational(x) <= self.hi

    def issubset(self, other: DyadicInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


def interval_for_code(bits: Sequence[int]) -> DyadicInterval:
    bits = as_bits(bits)
    lo = sum((Fraction(b, 2**i) for i, b in enumerate(bits, start=1)), Fraction(0))
    return DyadicInterval(lo, len(bits))


class Family(enum.IntEnum):
    """Index families of Λ; the integer value fixes the serialisation order."""

    LAMBDA = 0
    MU = 1
    NU = 2
    SIGMA = 3
    XI = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> Family:
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown coordinate family {label!r}") from None


@dataclass(frozen=True, order=True)
class CoordinateId:
    """One element of Λ, named by family, integer scope and 1-based position.

    Distinct triples are distinct coordinates, which gives an unbounded
    supply of fresh indices.
    """

    family: Family
    scope: tuple[int, ...]
    position: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "scope", tuple(int(s) for s in self.scope))
        if self.position < 1:
            raise ValueError("coordinate positions start at 1")

    def to_json(self) -> dict:
        return {"family": self.family.label, "scope": list(self.scope), "pos": self.position}

    @classmethod
    def from_json(cls, data: Mapping) -> CoordinateId:
        return cls(Family.from_label(data["family"]), tuple(data["scope"]), int(data["pos"]))

    def __str__(self):
        scope = ",".join(map(str, self.scope))
        return f"{self.family.label}[{scope}]{self.position}" if scope else f"{self.family.label}{self.position}"


@dataclass(frozen=True, order=True)
class TailFamily:
    """The countable run of coordinates ``(family, scope, 1), (family, scope, 2), ...``."""

    family: Family
    scope: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "scope", tuple(int(s) for s in self.scope))

    def coord(self, position: int) -> CoordinateId:
        return CoordinateId(self.family, self.scope, position)

    def covers(self, coord: CoordinateId) -> bool:
        return coord.family == self.family and coord.scope == self.scope

    def to_json(self) -> dict:
        return {"family": self.family.label, "scope": list(self.scope)}

    @classmethod
    def from_json(cls, data: Mapping) -> TailFamily:
        return cls(Family.from_label(data["family"]), tuple(data["scope"]))


@dataclass(frozen=True)
class Tail:
    family: TailFamily
    stream: BitStream

    def to_json(self) -> dict:
        return {"family": self.family.to_json(), "stream": self.stream.to_json()}


@dataclass(frozen=True)
class CylinderPart:
    """Points of {0,1}^Λ matching ``fixed`` and, if present, the tail stream.

    ``fixed`` may be given as a mapping; it is stored as a tuple of
    ``(coordinate, bit)`` pairs sorted by coordinate.
    """

    fixed: tuple[tuple[CoordinateId, int], ...] = ()
    tail: Tail | None = None

    def __post_init__(self):
        items = self.fixed.items() if isinstance(self.fixed, Mapping) else self.fixed
        pairs = []
        for coord, bit in items:
            if not isinstance(coord, CoordinateId):
                raise TypeError(f"not a coordinate: {coord!r}")
            pairs.append((coord, as_bits([bit])[0]))
        pairs.sort()
        keys = [c for c, _ in pairs]
        if len(set(keys)) != len(keys):
            raise ValueError("coordinate fixed twice")
        if self.tail is not None:
            if not isinstance(self.tail, Tail):
                raise TypeError(f"not a tail: {self.tail!r}")
            clash = [c for c in keys if self.tail.family.covers(c)]
            if clash:
                raise ValueError(f"{clash[0]} is both fixed and part of the tail")
        object.__setattr__(self, "fixed", tuple(pairs))

    @property
    def fixed_map(self) -> dict[CoordinateId, int]:
        return dict(self.fixed)

    def bit_at(self, coord: CoordinateId) -> int | None:
        """The bit this part forces at ``coord``, or None if it is free."""
        for c, b in self.fixed:
            if c == coord:
                return b
        if self.tail is not None and self.tail.family.covers(coord):
            return self.tail.stream.bit(coord.position)
        return None

    def to_json(self) -> dict:
        return {
            "fixed": [{"coord": c.to_json(), "bit": b} for c, b in self.fixed],
            "tail": None if self.tail is None else self.tail.to_json(),
        }


@dataclass(frozen=True)
class Disjointness:
    disjoint: bool
    witness: CoordinateId | None = None

    def __bool__(self):
        return self.disjoint


def parts_disjoint(a: CylinderPart, b: CylinderPart) -> Disjointness:
    """Decide whether two cylinder parts are disjoint.

    They are disjoint exactly when some coordinate is forced to different
    bits by the two parts.  The smallest such coordinate is the witness.
    """
    for part in (a, b):
        if not isinstance(part, CylinderPart):
            raise TypeError(f"not a cylinder part: {part!r}")
    clashes = []
    # a's fixed bits against everything b forces (fixed or tail)
    for coord, bit in a.fixed:
        other = b.bit_at(coord)
        if other is not None and other != bit:
            clashes.append(coord)
    if a.tail is not None:
        for coord, bit in b.fixed:
            if a.tail.family.covers(coord) and a.tail.stream.bit(coord.position) != bit:
                clashes.append(coord)
    if a.tail is not None and b.tail is not None and a.tail.family == b.tail.family:
        s, t = a.tail.stream, b.tail.stream
        bound = max(len(s.prefix), len(t.prefix)) + math.lcm(len(s.cycle), len(t.cycle))
        for k in range(1, bound + 1):
            if s.bit(k) != t.bit(k):
                clashes.append(a.tail.family.coord(k))
                break
    if clashes:
        return Disjointness(True, min(clashes))
    return Disjointness(False)


@dataclass(frozen=True)
class Fiber:
    """A finite union of cylinder parts, e.g. the full preimage of one point."""

    parts: tuple[CylinderPart, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a fiber has at least one part")
        object.__setattr__(self, "parts", parts)

    def __len__(self):
        return len(self.parts)

    def overlapping_parts(self) -> tuple[int, int] | None:
        """First pair of indices of intersecting parts, or None."""
        for i in range(len(self.parts)):
            for j in range(i + 1, len(self.parts)):
                if not parts_disjoint(self.parts[i], self.parts[j]):
                    return i, j
        return None

    def to_json(self) -> dict:
        return {"parts": [p.to_json() for p in self.parts]}


def fibers_disjoint(f: Fiber, g: Fiber) -> tuple[CoordinateId, ...] | None:
    """Witness coordinates for every part pair if ``f`` and ``g`` are disjoint, else None."""
    witnesses = []
    for p in f.parts:
        for q in g.parts:
            verdict = parts_disjoint(p, q)
            if not verdict:
                return None
            witnesses.append(verdict.witness)
    return tuple(witnesses)


@dataclass(frozen=True)
class KraftVerdict:
    """Outcome of ``kraft_check``.

    On failure exactly one of ``prefix_pair`` (indices ``(i, j)`` with code i a
    prefix of code j) or ``gap`` (a word no code covers) is set.
    """

    complete: bool
    kraft_sum: Fraction
    prefix_pair: tuple[int, int] | None = None
    gap: Bits | None = None

    def __bool__(self):
        return self.complete


def kraft_check(codes: Sequence[Sequence[int]]) -> KraftVerdict:
    """Accept iff ``codes`` is prefix-free with Kraft sum exactly 1."""
    codes = [as_bits(c) for c in codes]
    if not codes:
        raise ValueError("kraft_check needs at least one code")
    total = sum((Fraction(1, 2 ** len(c)) for c in codes), Fraction(0))
    # a prefix sorts directly before some word it prefixes
    order = sorted(range(len(codes)), key=lambda k: (codes[k], k))
    for i, j in zip(order, order[1:]):
        if codes[j][: len(codes[i])] == codes[i]:
            return KraftVerdict(False, total, prefix_pair=(i, j))
    if total == 1:
        return KraftVerdict(True, total)
    code_set = set(codes)
    inner = {c[:k] for c in codes for k in range(len(c))}
    queue = deque([()])
    while queue:
        word = queue.popleft()
        if word in code_set:
            continue
        if word not in inner:
            return KraftVerdict(False, total, gap=word)
        queue.extend((word + (0,), word + (1,)))
    raise AssertionError("prefix-free code with Kraft sum < 1 must leave a gap")
