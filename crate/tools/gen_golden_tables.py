"""Generate crates/core/data/golden_green.json.

Each table is the Green function of a named channel, expanded from its
closed form with a small standalone Grassmann algebra (no dependency on
the Rust crate). Generators are ordered z, z*, x, x* (bits 0..3); a
monomial is the bitmask of the generators it contains, written in that
order.
"""

import json
import math
import pathlib

SYMBOLS = ["ζ", "ζ*", "ξ", "ξ*"]
Z, ZS, X, XS = 0, 1, 2, 3


def sign(a, b):
    if a & b:
        return 0
    swaps = 0
    for k in range(4):
        if b >> k & 1:
            swaps += bin(a >> (k + 1)).count("1")
    return -1 if swaps % 2 else 1


def mul(p, q):
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            s = sign(ma, mb)
            if s:
                out[ma | mb] = out.get(ma | mb, 0) + s * ca * cb
    return out


def add(*ps):
    out = {}
    for p in ps:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return out


def gen(g, c=1.0):
    return {1 << g: complex(c)}


def one(c=1.0):
    return {0: complex(c)}


def conj(p):
    """Conjugate a linear element: swap each generator with its partner."""
    swap = {1 << Z: 1 << ZS, 1 << ZS: 1 << Z, 1 << X: 1 << XS, 1 << XS: 1 << X}
    return {swap[m]: c.conjugate() for m, c in p.items()}


def delta(arg):
    return mul(arg, conj(arg))


def xx(c):
    return mul(gen(X, c), gen(XS))


def exp_xsx(k):
    """exp[k ξ*ξ] = 1 + k ξ*ξ."""
    return add(one(), mul(gen(XS, k), gen(X)))


def shift(a, b):
    """ζ − aξ − bξ*."""
    return add(gen(Z), gen(X, -a), gen(XS, -b))


def bit_flip(s):
    return delta(shift(s, s - 1))


def phase_flip(s):
    return add(delta(shift(2 * s - 1, 0)), xx(4 * s * (1 - s)))


def bit_phase_flip(s):
    return delta(shift(s, 1 - s))


def depolarizing(s):
    return add(delta(shift(1 - s, 0)), xx(s * (1 - s)))


def amplitude_damping(n):
    return mul(delta(shift(math.sqrt(n), 0)), exp_xsx(-(1 - n) / 2))


def generalized_amplitude_damping(n, s):
    return mul(delta(shift(math.sqrt(n), 0)), exp_xsx(-(2 * s - 1) * (1 - n) / 2))


def label(m):
    return "".join(SYMBOLS[k] for k in range(4) if m >> k & 1) or "1"


def table(p):
    return [[p.get(m, 0).real, p.get(m, 0).imag] for m in range(16)]


def main():
    samples = 20
    grid = [round((k + 0.5) / samples, 6) for k in range(samples)]
    second = [round((0.37 + 0.61 * k) % 1.0, 6) for k in range(samples)]
    channels = {}
    for name, f in [
        ("bit_flip", bit_flip),
        ("phase_flip", phase_flip),
        ("bit_phase_flip", bit_phase_flip),
        ("depolarizing", depolarizing),
    ]:
        channels[name] = [{"params": {"s": s}, "coefficients": table(f(s))} for s in grid]
    channels["amplitude_damping"] = [
        {"params": {"n": n}, "coefficients": table(amplitude_damping(n))} for n in grid
    ]
    channels["generalized_amplitude_damping"] = [
        {"params": {"n": n, "s": s}, "coefficients": table(generalized_amplitude_damping(n, s))}
        for n, s in zip(grid, second)
    ]
    doc = {
        "schema_version": 1,
        "monomials": [label(m) for m in range(16)],
        "channels": channels,
    }
    out = pathlib.Path(__file__).resolve().parents[1] / "crates/core/data/golden_green.json"
    lines = ["{", '  "schema_version": 1,']
    lines.append('  "monomials": ' + json.dumps(doc["monomials"], ensure_ascii=False) + ",")
    lines.append('  "channels": {')
    for i, (name, rows) in enumerate(channels.items()):
        lines.append(f'    "{name}": [')
        body = [f"      {json.dumps(r)}" for r in rows]
        lines.append(",\n".join(body))
        lines.append("    ]" + ("," if i + 1 < len(channels) else ""))
    lines.append("  }")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    assert json.loads(text) == json.loads(json.dumps(doc))
    out.write_text(text)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
