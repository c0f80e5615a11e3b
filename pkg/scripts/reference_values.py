#!/usr/bin/env python3
"""Independent 50-digit reference values used (frozen) by the test suite.

Nothing here imports tempwit: the formulas are re-typed from the model
definitions and evaluated with mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp


@dataclass
class Defaults:
    omega0: str = "1"
    temperature: str = "1"
    gamma1: str = "0.9"
    gamma_phi: str = "0.75"


def main() -> int:
    mp.mp.dps = 50
    d = Defaults()
    w0, T, g1 = mp.mpf(d.omega0), mp.mpf(d.temperature), mp.mpf(d.gamma1)
    g2 = g1 / 2 + mp.mpf(d.gamma_phi)
    th = mp.tanh(w0 / (2 * T))

    def terms(t):
        decay = mp.e ** (-g2 * t)
        c, s = decay * mp.cos(w0 * t), decay * mp.sin(w0 * t)
        f = th**2 + (1 - th**2) * mp.e ** (-g1 * t)
        return c, s, f, (1 + 2 * c + f) / 4

    def s_max(t):
        c, s, f, N = terms(t)
        return 2 / N * mp.sqrt(c * c - s * s + f * f)

    def negativity(t):
        c, s, _, N = terms(t)
        return sum(-v for v in ((c + s) / (4 * N), (c - s) / (4 * N)) if v < 0)

    print("z_eq            ", -th)
    print("C_eq            ", (w0**2 / (4 * T**2)) * mp.sech(w0 / (2 * T)) ** 2)
    print("t* (S_max = 2)  ", mp.findroot(lambda t: s_max(t) - 2, 2.4))
    print("S_max(1), (2)   ", s_max(1), s_max(2))
    print("extinction 1e-4 ", mp.findroot(lambda t: negativity(t) - mp.mpf("1e-4"), (5.3, 5.5), solver="anderson"))
    for t in (mp.mpf("0.5"), 1, 2, 5):
        print(f"t={float(t):<4}", *(mp.nstr(v, 20) for v in terms(t)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
