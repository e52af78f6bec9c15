#!/usr/bin/env python3
"""Writes the generated part of crates/nsatz/tests/fixtures.

Every system has Q in the ideal generated by the P's, so containment holds
and `certify` succeeds on each of them.
"""
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates/nsatz/tests/fixtures"
rng = random.Random(20261015)

FIELDS = [
    ("GF(2)", 2, None), ("GF(3)", 3, None), ("GF(5)", 5, None), ("GF(7)", 7, None),
    ("GF(2^2)", 2, 2), ("GF(3^2)", 3, 2), ("GF(2^3) mod t^3+t+1", 2, 3), ("QQ", 0, None),
]
VARS = [["x"], ["x", "y"], ["x1", "x2", "x3"]]


def coeff(p, k):
    if p == 0:
        num = rng.randint(-5, 5) or 1
        den = rng.choice([1, 1, 2, 3])
        return f"{num}/{den}" if den > 1 else str(num)
    if k:
        parts = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(rng.randrange(p) for _ in range(k)) if c]
        return "(" + ("+".join(parts) or "1") + ")"
    return str(rng.randrange(1, p))


def poly(p, k, vs, deg):
    terms = []
    for _ in range(rng.randint(1, 3)):
        mono = "*".join(f"{v}^{rng.randint(1, deg)}" for v in vs if rng.random() < 0.6)
        c = coeff(p, k)
        terms.append(f"{c}*{mono}" if mono else c)
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def elements(p, k):
    if p == 0:
        return [str(v) for v in range(-3, 4)]
    if not k:
        return [str(v) for v in range(p)]
    out = []
    for code in range(p ** k):
        digits = [(code // p ** i) % p for i in range(k)]
        parts = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(digits) if c]
        out.append("(" + "+".join(parts) + ")" if parts else "0")
    return out


def points(p, k, n, count):
    vals = elements(p, k)
    seen = []
    while len(seen) < count:
        pt = tuple(rng.choice(vals) for _ in range(n))
        if pt not in seen:
            seen.append(pt)
    return ", ".join("(" + ", ".join(str(c) for c in pt) + ")" for pt in seen)


for i in range(44):
    name, p, k = FIELDS[i % len(FIELDS)]
    vs = VARS[(i // len(FIELDS)) % len(VARS)]
    if p and (p ** (k or 1)) ** len(vs) > 512:
        vs = vs[:2]
    m = rng.randint(1, 3)
    gens = [poly(p, k, vs, 2) for _ in range(m)]
    q = " + ".join(f"({coeff(p, k)})*({g})" for g in gens[: rng.randint(1, m)])
    lines = [f"# generated fixture {i}", f"field {name}", "vars " + " ".join(vs)]
    lines += [f"P: {g}" for g in gens]
    lines.append(f"Q: {q}")
    size = (p ** (k or 1)) ** len(vs) if p else None
    explicit = p == 0 or rng.random() < 0.4
    if explicit:
        count = rng.randint(1, 6 if size is None else min(6, size - 1))
        lines.append(f"X: {points(p, k, len(vs), count)}")
    elif rng.random() < 0.5:
        lines.append("X: all")
    (OUT / f"gen_{i:02}.sys").write_text("\n".join(lines) + "\n")
