"""Independent reference implementations used to cross-check the library.

Nothing here imports the code under test except for plain data types.
"""

import itertools
import random
from fractions import Fraction


def covers_exactly_once(codes, depth=8):
    """Brute force: every depth-bit word has exactly one code as a prefix."""
    codes = [tuple(c) for c in codes]
    for word in itertools.product((0, 1), repeat=depth):
        if sum(word[: len(c)] == c for c in codes) != 1:
            return False
    return True


def union_find_components(atoms, pairs):
    parent = {a: a for a in atoms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for a in atoms:
        groups.setdefault(find(a), set()).add(a)
    return sorted(map(frozenset, groups.values()), key=sorted)


def bfs_count(atoms, pairs):
    adj = {a: set() for a in atoms}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    seen, count = set(), 0
    for a in atoms:
        if a in seen:
            continue
        count += 1
        frontier = [a]
        seen.add(a)
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x] - seen:
                    seen.add(y)
                    nxt.append(y)
            frontier = nxt
    return count


def periodic_value(prefix, cycle):
    """Closed form 0.P(C) = (int(PC) - int(P)) / (2^m (2^c - 1))."""
    m, c = len(prefix), len(cycle)
    pc = int("".join(map(str, prefix + cycle)), 2)
    p = int("".join(map(str, prefix)) or "0", 2)
    return Fraction(pc - p, 2**m * (2**c - 1))


def long_division_bits(y, n):
    """First n binary digits of y in [0, 1) by repeated doubling."""
    bits = []
    for _ in range(n):
        y *= 2
        bits.append(int(y >= 1))
        y -= bits[-1]
    return bits


def is_dyadic(y):
    d = Fraction(y).denominator
    return d & (d - 1) == 0


def random_connected(rng, atoms, extra):
    """Random spanning tree plus ``extra`` random non-loop bonds (parallels allowed)."""
    bonds = []
    for k in range(1, len(atoms)):
        bonds.append((atoms[rng.randrange(k)], atoms[k]) if rng.random() < 0.5 else (atoms[k], atoms[rng.randrange(k)]))
    for _ in range(extra):
        u, v = rng.sample(atoms, 2)
        bonds.append((u, v))
    rng.shuffle(bonds)
    return bonds


def random_phase_documents(seed, max_clusters=4, max_cluster_size=5):
    """A phase1 and a phase2 document over the same atom set."""
    rng = random.Random(seed)
    clusters, atoms = [], []
    for i in range(rng.randint(1, max_clusters)):
        names = [f"x{i}_{k}" for k in range(rng.randint(2, max_cluster_size))]
        atoms += names
        bonds = random_connected(rng, names, rng.randint(0, 3))
        clusters.append({"id": f"c{i + 1}", "atoms": names, "bonds": [list(b) for b in bonds]})
    phase1 = {"schema": "cantornet/1", "kind": "phase1", "clusters": clusters}
    order = atoms[:]
    rng.shuffle(order)
    phase2 = {
        "schema": "cantornet/1",
        "kind": "phase2",
        "atoms": atoms,
        "bonds": [list(b) for b in random_connected(rng, order, rng.randint(0, 4))],
    }
    return phase1, phase2


def random_graph(rng, max_nodes=20):
    n = rng.randint(1, max_nodes)
    atoms = [f"n{k}" for k in range(n)]
    pairs = []
    if n > 1:
        for _ in range(rng.randint(0, 2 * n)):
            u, v = rng.sample(atoms, 2)
            pairs.append((u, v))
    return atoms, pairs
