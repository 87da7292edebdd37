#!/usr/bin/env python3
"""Generate the approximate sample data tables shipped in data/.

These are NOT the high-accuracy tables used in the literature. They are
smooth stand-ins built from simple physical models so the engine can be
exercised end to end without external data:

  au_nk_lorentz_drude.dat   complex refractive index of Au from the
                            Lorentz-Drude parameters of Rakic et al.,
                            Appl. Opt. 37, 5271 (1998).
  he_star_sos.dat           He(2 3S) polarizability from a sum over the
                            2 3S -> n 3P lines plus two effective continuum
                            oscillators, normalized to 467.727e-31 m^3
  na_sos.dat                Na(3s) polarizability from the 3p and 4p lines
                            plus a core oscillator, normalized to 241.067e-31 m^3

Polarizability tables are written in atomic units (xi in E_h/hbar, alpha
in a0^3), i.e. for use with --atom-units au.
"""

import argparse
import cmath
import math
import os

# Rakic 1998 Lorentz-Drude parameters for gold (eV).
AU_OMEGA_P = 9.03
AU_DRUDE = (0.760, 0.053)
AU_LORENTZ = [
    (0.024, 0.241, 0.415),
    (0.010, 0.345, 0.830),
    (0.071, 0.870, 2.969),
    (0.601, 2.494, 4.304),
    (4.384, 2.214, 13.32),
]

# (oscillator strength, transition energy in hartree)
HE_STAR_LINES = [
    (0.53907, 0.042069),   # 2 3P
    (0.06446, 0.117151),   # 3 3P
    (0.02577, 0.143320),   # 4 3P
    (0.01289, 0.155530),   # 5 3P
    (1.00000, 2.000000),   # 1s core, effective
]
BOHR3 = 5.29177210903e-11 ** 3
HE_STAR_STATIC = 467.727e-31 / BOHR3  # 315.638 a.u.
HE_STAR_CONTINUUM_F = 0.35

NA_LINES = [
    (0.01340, 0.137900),   # 4p
    (8.00000, 2.900000),   # 2p6 core, effective
]
NA_RESONANCE_E = 0.077257  # 3p
NA_STATIC = 241.067e-31 / BOHR3  # 162.680 a.u.


def au_permittivity(energy_ev):
    w = energy_ev
    f0, g0 = AU_DRUDE
    eps = 1.0 - f0 * AU_OMEGA_P**2 / (w * (w + 1j * g0))
    for f, g, w0 in AU_LORENTZ:
        eps += f * AU_OMEGA_P**2 / (w0**2 - w**2 - 1j * w * g)
    return eps


def sos_alpha(lines, xi):
    return sum(f / (e * e + xi * xi) for f, e in lines)


def he_star_lines():
    partial = sum(f / (e * e) for f, e in HE_STAR_LINES)
    rest = HE_STAR_STATIC - partial
    e_cont = math.sqrt(HE_STAR_CONTINUUM_F / rest)
    return HE_STAR_LINES + [(HE_STAR_CONTINUUM_F, e_cont)]


def na_lines():
    partial = sum(f / (e * e) for f, e in NA_LINES)
    f_res = (NA_STATIC - partial) * NA_RESONANCE_E**2
    return [(f_res, NA_RESONANCE_E)] + NA_LINES


def geometric(lo, hi, n):
    r = (hi / lo) ** (1.0 / (n - 1))
    return [lo * r**i for i in range(n)]


def write_optical(path):
    with open(path, "w") as out:
        out.write("# Approximate Au optical constants (Lorentz-Drude fit, Rakic 1998)\n")
        out.write("# NOT measured data; stand-in for tabulated handbook values.\n")
        out.write("# columns: photon_energy_eV n k\n")
        for e in geometric(0.1, 1000.0, 241):
            n = cmath.sqrt(au_permittivity(e))
            if n.imag < 0:
                n = -n
            out.write(f"{e:.6e} {n.real:.6e} {n.imag:.6e}\n")


def write_polarizability(path, title, lines):
    with open(path, "w") as out:
        out.write(f"# Approximate dynamic polarizability of {title}\n")
        out.write("# Sum-over-states oscillator model; NOT a high-accuracy table.\n")
        out.write("# columns: xi [E_h/hbar]  alpha [a0^3]\n")
        out.write(f"0 {sos_alpha(lines, 0.0):.10e}\n")
        for xi in geometric(1e-5, 1e3, 161):
            out.write(f"{xi:.6e} {sos_alpha(lines, xi):.10e}\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    write_optical(os.path.join(args.out, "au_nk_lorentz_drude.dat"))
    write_polarizability(os.path.join(args.out, "he_star_sos.dat"), "He(2 3S)", he_star_lines())
    write_polarizability(os.path.join(args.out, "na_sos.dat"), "Na(3s)", na_lines())


if __name__ == "__main__":
    main()
