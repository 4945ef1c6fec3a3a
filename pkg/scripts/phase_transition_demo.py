"""Walk through the fixture pair: encodings, node fibers, and the per-atom J diff."""

from cantornet.encoder import Node, diff, encode, factor, fiber
from cantornet.fixtures import PHASE_A, PHASE_B
from cantornet.graph import obstruction, parse_phase


def bits(code):
    return "".join(map(str, code)) or "()"


def main():
    phase_a, phase_b = parse_phase(PHASE_A), parse_phase(PHASE_B)
    enc_a, enc_b = encode(phase_a), encode(phase_b)

    print("compare:", obstruction(phase_a, phase_b).witness)
    for enc in (enc_a, enc_b):
        print(f"\n{enc.kind} blocks")
        for b in enc.blocks:
            print(f"  {b.cluster or '-':>3} edge {b.edge} {b.bond.u}->{b.bond.v}  block code {bits(b.code)}")

    print("\natom  J    p  q  phase1 parts                 phase2 parts")
    for atom in phase_a.atoms:
        r = diff(enc_a, enc_b, atom)
        k = ", ".join(f"{bits(c)}|{s}" for _, c, s in r.phase1_parts)
        l = ", ".join(f"{bits(c)}|{s}" for _, c, s in r.phase2_parts)
        print(f"{atom:<5} {bits(r.J.bits):<4} {r.p}  {r.q}  {k:<28} {l}")

    f = factor(fiber(enc_a, Node("a2")), enc_a)
    print("\na2 in phase1 factors as J =", bits(f.J.bits), "times", len(f.parts), "parts")


if __name__ == "__main__":
    main()
