"""Check the fiber laws on many random clustered/connected phase pairs.

For each pair: node fibers have one part per incident bond, phase I parts
share their J prefix, block codes cover the space, and sampled distinct
points have disjoint fibers.
"""

import argparse
import random
import time
from fractions import Fraction

from cantornet.encoder import EdgePoint, Node, cover_check, decomposition_sample, encode, fiber
from cantornet.graph import PhaseI, degree, obstruction, parse_phase


def connected_bonds(rng, atoms, extra):
    bonds = [[atoms[rng.randrange(k)], atoms[k]] for k in range(1, len(atoms))]
    bonds += [rng.sample(atoms, 2) for _ in range(extra)]
    rng.shuffle(bonds)
    return bonds


def random_pair(rng, clusters, size):
    docs, atoms = [], []
    for i in range(rng.randint(1, clusters)):
        names = [f"c{i}a{k}" for k in range(rng.randint(2, size))]
        atoms += names
        docs.append({"id": f"c{i}", "atoms": names, "bonds": connected_bonds(rng, names, rng.randint(0, 2))})
    one = {"schema": "cantornet/1", "kind": "phase1", "clusters": docs}
    order = rng.sample(atoms, len(atoms))
    two = {"schema": "cantornet/1", "kind": "phase2", "atoms": atoms, "bonds": connected_bonds(rng, order, rng.randint(0, 3))}
    return parse_phase(one), parse_phase(two)


def random_point(rng, phase):
    if rng.random() < 0.3:
        return Node(rng.choice(phase.atoms))
    t = Fraction(rng.randrange(1, 2**5), 2**5) if rng.random() < 0.5 else Fraction(rng.randrange(1, 97), 97)
    if isinstance(phase, PhaseI):
        c = rng.choice(phase.clusters)
        return EdgePoint(c.id, rng.randint(1, len(c.bonds)), t)
    return EdgePoint(None, rng.randint(1, len(phase.bonds)), t)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--clusters", type=int, default=4)
    parser.add_argument("--size", type=int, default=5)
    parser.add_argument("--points", type=int, default=12)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    start = time.perf_counter()
    verdicts = {}
    for _ in range(args.count):
        p1, p2 = random_pair(rng, args.clusters, args.size)
        v = obstruction(p1, p2).verdict
        verdicts[v] = verdicts.get(v, 0) + 1
        for phase in (p1, p2):
            enc = encode(phase)
            for atom in phase.atoms:
                f = fiber(enc, Node(atom))
                assert len(f) == degree(phase, atom)
                if isinstance(phase, PhaseI):
                    heads = {tuple(x for x in part.fixed if x[0].family.label == "lambda") for part in f.parts}
                    assert len(heads) == 1
            longest = max(len(b.code) for b in enc.blocks)
            if longest <= 14:
                assert cover_check(enc, longest).ok
            points = list(dict.fromkeys(random_point(rng, phase) for _ in range(args.points)))
            assert decomposition_sample(enc, points).ok
    elapsed = time.perf_counter() - start
    print(f"{args.count} phase pairs checked in {elapsed:.2f}s")
    for verdict, n in sorted(verdicts.items()):
        print(f"  {verdict}: {n}")


if __name__ == "__main__":
    main()
