"""Write high-precision Faddeeva values, w(z) = exp(-z^2) erfc(-iz), with mpmath.

Run from the repository root:  python3 tools/faddeeva_reference.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

POINTS = [
    (0.0, 0.0),
    (1.0, 0.0),
    (0.0, 1.0),
    (1.0, 1.0),
    (0.5, 0.1),
    (3.0, 0.5),
    (-2.0, 0.3),
    (0.2, -0.4),
    (-1.5, -0.7),
    (6.0, 0.01),
    (12.0, 3.0),
    (0.01, 25.0),
    (100.0, 1.0),
    (1e-6, 1e-6),
]


def faddeeva(z):
    return mp.exp(-(z**2)) * mp.erfc(-1j * z)


def main() -> None:
    rows = []
    for x, y in POINTS:
        w = faddeeva(mp.mpc(x, y))
        rows.append({"x": x, "y": y, "re": float(w.real), "im": float(w.imag)})
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "faddeeva_reference.json"
    out.write_text(json.dumps({"source": "mpmath", "dps": mp.mp.dps, "values": rows}, indent=2) + "\n")
    print(f"wrote {len(rows)} values to {out}")


if __name__ == "__main__":
    main()
