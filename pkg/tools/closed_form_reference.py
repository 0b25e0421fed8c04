"""Reference entropies by direct adaptive quadrature of the spatial integrand.

Evaluates pi * int_{x1>w} (x1 - w) (h^2 + m^2 k^2 + |grad k|^2) dx with mpmath,
using the analytic gradient of each Gaussian term; it shares no code with the package.

Run from the repository root:  python3 tools/closed_form_reference.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 20


def gauss_sum(terms):
    def f(*x):
        total = mp.mpf(0)
        for c, center, s in terms:
            r2 = sum((xi - ai) ** 2 for xi, ai in zip(x, center))
            total += c * mp.exp(-r2 / s**2)
        return total

    return f


def gauss_grad(terms, d):
    def g(*x):
        grad = [mp.mpf(0)] * d
        for c, center, s in terms:
            r2 = sum((xi - ai) ** 2 for xi, ai in zip(x, center))
            e = c * mp.exp(-r2 / s**2)
            for j in range(d):
                grad[j] += -2 * (x[j] - center[j]) / s**2 * e
        return grad

    return g


def entropy(h_terms, k_terms, m, d, offset=0.0):
    h = gauss_sum(h_terms)
    k = gauss_sum(k_terms)
    grad_k = gauss_grad(k_terms, d)

    def density(*x):
        value = h(*x) ** 2 + m**2 * k(*x) ** 2 + sum(gj**2 for gj in grad_k(*x))
        return (x[0] - offset) * value

    lo, hi = mp.mpf(offset), mp.inf
    if d == 1:
        return mp.pi * mp.quad(density, [lo, hi])
    return mp.pi * mp.quad(density, [lo, hi], [-mp.inf, mp.inf])


CASES = [
    ("interior_h_d1", [(1.0, (2.0,), 1.0)], [], 1.0, 1, 0.0),
    ("boundary_k_d1", [], [(1.0, (0.0,), 1.0)], 1.0, 1, 0.0),
    ("interior_k_d1", [], [(1.0, (3.0,), 0.8)], 0.5, 1, 0.0),
    ("offset_k_d1", [], [(0.7, (0.5,), 1.2)], 1.0, 1, 0.3),
    ("mixed_d1", [(0.8, (1.0,), 0.9), (-0.4, (2.5,), 0.6)], [(1.1, (0.4,), 1.0)], 1.0, 1, 0.0),
    ("mixed_d2", [(1.0, (2.0, 0.3), 1.0)], [(0.6, (0.2, -0.5), 0.9)], 0.5, 2, 0.0),
]


def main() -> None:
    rows = []
    for name, h, k, m, d, offset in CASES:
        value = entropy(h, k, m, d, offset)
        rows.append(
            {
                "name": name,
                "dimension": d,
                "mass": m,
                "offset": offset,
                "field": [{"amplitude": c, "center": list(a), "width": s} for c, a, s in h],
                "momentum": [{"amplitude": c, "center": list(a), "width": s} for c, a, s in k],
                "total": float(value),
            }
        )
        print(f"{name:16s} {mp.nstr(value, 17)}")
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "closed_form_reference.json"
    out.write_text(json.dumps({"source": "mpmath.quad", "cases": rows}, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
