"""DNA coding by hand: rules, encoding, and the XOR group.

Walks a single byte through all eight rules, shows the classic worked
example 200 -> TACA under rule R2, and prints the XOR table that makes
the diffusion stage invertible.  Run from the repository root:

    python demos/dna_coding.py
"""

import numpy as np

from cdnacrypt.dna import (
    BASES,
    DnaRule,
    RULES,
    decode_bases,
    dna_xor,
    encode_byte,
    encode_plane,
    plane_to_letters,
)


def main() -> None:
    print("The eight rules (code -> base):")
    print("  code  " + "  ".join(f"R{r.id}" for r in RULES))
    for code in range(4):
        row = "   ".join(r.base_for(code) for r in RULES)
        print(f"   {code:02b}    {row}")
    print()

    b = 200
    print(f"Encoding byte {b} = {b:08b}:")
    for rule in RULES:
        bases = encode_byte(b, rule)
        back = decode_bases(bases, rule)
        print(f"  R{rule.id}: {bases}  (decodes back to {back})")
    print()

    r1 = DnaRule(1)
    print("XOR table under R1 (XOR of the underlying 2-bit codes):")
    print("     " + "  ".join(BASES))
    for x in BASES:
        print(f"  {x}  " + "  ".join(dna_xor(x, y, r1) for y in BASES))
    print()
    print("Every row is a permutation and x^x is always the 00-base, so the")
    print("same operation applied twice undoes itself -- that is the whole")
    print("decryption story for the DNA stage.")
    print()

    img = np.array([[200, 0], [255, 66]], dtype=np.uint8)
    rules = [2, 1, 1, 7]
    plane = encode_plane(img, rules)
    letters = plane_to_letters(plane)
    print("A 2x2 image encoded with per-pixel rules", rules)
    for i in range(2):
        print("  " + "   ".join("".join(letters[i, j]) for j in range(2)))


if __name__ == "__main__":
    main()
