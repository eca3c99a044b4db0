"""Independent straight-line reference of the whole cipher.

Implements the documented algorithm (key expansion, four maps with 1000
burn-in iterations, row/column permutation, byte-matrix XOR, keyed S-box
substitution, DNA encode / XOR / decode) using only the standard library:
plain Python floats, loops, dicts and strings.  No imports from cdnacrypt.
Used to freeze the pipeline golden vector and to cross-check whole
ciphertexts on small images.
"""

import hashlib
import math
import struct

EPS = 1e-6
BURN_IN = 1000


# --- key expansion -------------------------------------------------------

def expand_key(digest, p, q):
    n = max(p, q)
    u = [w / 2.0 ** 64 for w in struct.unpack(">QQQQ", digest)]
    v = [w / 2.0 ** 64 for w in struct.unpack(
        ">QQQQ", hashlib.sha256(digest + b"\x01").digest())]
    span = 1.0 - 2.0 * EPS
    return {
        "mu": EPS + u[0] * span,
        "x0": -1.0 + EPS + u[1] * (2.0 - 2.0 * EPS),
        "c0": EPS + u[2] * span,
        "a0": (u[3] * n) % n,
        "X0": EPS + v[0] * span,
        "Y0": EPS + v[1] * span,
        "Z0": EPS + v[2] * span,
        "b0": (v[3] * n) % n,
        "alpha": 1.2345, "m": 5,
        "lam": 3.99, "a1": 34.1, "a2": 38.1, "a3": 36.1,
        "eta": 7.77, "n": n,
        "chi": 1.2, "xi": 20.0,
    }


# --- chaotic value sequences (burned in, one list per map) ----------------

def td_ercs_values(mu, x0, alpha, m, count):
    y0 = mu * math.sqrt(1.0 - x0 * x0)
    kp = -(x0 / y0) * mu * mu
    t = math.tan(alpha)
    k = -(t + kp) / (1.0 - kp * t)
    x, y = x0, y0
    hist = [(x, y)]
    out = []
    for step in range(1, BURN_IN + count + 1):
        mu2 = mu * mu
        x1 = -(2.0 * k * y + x * (mu2 - k * k)) / (mu2 + k * k)
        y1 = k * (x1 - x) + y
        if step < m:
            xr, yr = x, y
        else:
            xr, yr = hist[m - 1]
        kp = -(xr / yr) * mu2
        k = (2.0 * kp - k + k * kp * kp) / (1.0 + 2.0 * k * kp - kp * kp)
        x, y = x1, y1
        hist = [(x, y)] + hist[: m - 1]
        if step > BURN_IN:
            out.append(x)
    return out


def intertwining_values(lam, a1, a2, a3, x0, y0, z0, count):
    x, y, z = x0, y0, z0
    out = []
    steps = BURN_IN + (count + 2) // 3
    for step in range(steps):
        x1 = (lam * a1 * y * (1.0 - x) + z) % 1.0
        y1 = ((lam * a2 * y + z) / (1.0 + x1 * x1)) % 1.0
        z1 = (lam * (x1 + y1 + a3) * math.sin(z)) % 1.0
        x, y, z = x1, y1, z1
        if step >= BURN_IN:
            out.extend((x, y, z))
    return out[:count]


def chirikov_values(eta, n, a0, b0, count):
    a, b = a0, b0
    out = []
    steps = BURN_IN + (count + 1) // 2
    for step in range(steps):
        a1 = (a + b) % n
        b1 = (a + eta * math.sin(2.0 * math.pi * a / n)) % n
        a, b = a1, b1
        if step >= BURN_IN:
            out.extend((a, b))
    return out[:count]


def nca_values(c0, chi, xi, count):
    coeff = (1.0 - xi ** -4.0) * (1.0 / math.tan(chi / (1.0 + xi))) \
        * (1.0 + 1.0 / xi) ** xi
    c = c0
    out = []
    for step in range(BURN_IN + count):
        c = coeff * math.tan(chi * c) * (1.0 - c) ** xi
        if step >= BURN_IN:
            out.append(c)
    return out


def to_bytes(values):
    return [math.floor(abs(v) * 1e14) % 256 for v in values]


def to_indices(values, modulus):
    return [math.floor(abs(v) * 1e14) % modulus for v in values]


def argsort_stable(seq):
    return sorted(range(len(seq)), key=lambda i: (seq[i], i))


# --- DNA tables -----------------------------------------------------------

RULES = {i + 1: letters for i, letters in enumerate(
    ["ACGT", "AGCT", "CATG", "CTAG", "GATC", "GTAC", "TCGA", "TGCA"])}


def dna_encode(byte, rule_id):
    letters = RULES[rule_id]
    bits = format(byte, "08b")
    return "".join(letters[int(bits[i:i + 2], 2)] for i in (0, 2, 4, 6))


def dna_decode(bases, rule_id):
    letters = RULES[rule_id]
    out = 0
    for base in bases:
        out = (out << 2) | letters.index(base)
    return out


def dna_xor(xb, yb, rule_id):
    letters = RULES[rule_id]
    return letters[letters.index(xb) ^ letters.index(yb)]


# --- S-boxes --------------------------------------------------------------

def sboxes():
    out = []
    for k in range(3):
        vals = nca_values(0.31 + 0.07 * k, 1.1, 17.0, 256)
        out.append(argsort_stable(vals))
    return out


# --- full cipher ----------------------------------------------------------

def encrypt(pixels, digest):
    """pixels: list of rows of ints; digest: 32-byte key. Returns rows."""
    p, q = len(pixels), len(pixels[0])
    npix = p * q
    key = expand_key(digest, p, q)

    td = td_ercs_values(key["mu"], key["x0"], key["alpha"], key["m"], p + q)
    row_perm = argsort_stable(td[:p])
    col_perm = argsort_stable(td[p:])
    work = [[pixels[row_perm[i]][col_perm[j]] for j in range(q)] for i in range(p)]

    r_t1 = to_bytes(intertwining_values(
        key["lam"], key["a1"], key["a2"], key["a3"],
        key["X0"], key["Y0"], key["Z0"], npix))
    work = [[work[i][j] ^ r_t1[i * q + j] for j in range(q)] for i in range(p)]

    sel = to_indices(nca_values(key["c0"], key["chi"], key["xi"], npix), 3)
    boxes = sboxes()
    work = [[boxes[sel[i * q + j]][work[i][j]] for j in range(q)] for i in range(p)]

    chir = chirikov_values(key["eta"], key["n"], key["a0"], key["b0"], 4 * npix)
    rules_img = [r + 1 for r in to_indices(chir[:npix], 8)]
    r_t2 = to_bytes(chir[npix:2 * npix])
    rules_rt2 = [r + 1 for r in to_indices(chir[2 * npix:3 * npix], 8)]
    rules_out = [r + 1 for r in to_indices(chir[3 * npix:], 8)]

    cipher = []
    for i in range(p):
        row = []
        for j in range(q):
            k = i * q + j
            enc = dna_encode(work[i][j], rules_img[k])
            rnd = dna_encode(r_t2[k], rules_rt2[k])
            mixed = "".join(dna_xor(a, b, rules_img[k]) for a, b in zip(enc, rnd))
            row.append(dna_decode(mixed, rules_out[k]))
        cipher.append(row)
    return cipher
