"""Walk the full residual chain on free plane waves.

The extracted 4-velocity of a plane wave is constant, so every residual in
the chain has to vanish identically: mass shell, the force law, the curl of
the canonical momentum, the divergence, and both wave-operator residuals.
Run with closed-form derivatives and again with central stencils to see the
truncation floor of the numeric path.
"""
import numpy as np

from fourvel import (ANALYTIC, Event, NATURAL_UNITS, central, contract,
                     curl_k, divergence_mu, extract_u, kg_residual,
                     mass_shell_residual, newton_residual,
                     nonlinear_wave_residual, plane_wave, zero_potential)

MOMENTA = [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.3, -0.2, 0.1)]


def sweep(method, tag):
    consts = NATURAL_UNITS
    a0 = zero_potential()
    rng = np.random.default_rng(20240817)
    print(f"--- {tag} ---")
    for p in MOMENTA:
        wave = plane_wave(p, consts)
        worst = dict.fromkeys(
            ("mass_shell", "newton", "curl_k", "divergence", "kg",
             "nonlinear"), 0.0)
        for _ in range(40):
            e = Event(*rng.uniform(-2, 2, 4))
            worst["mass_shell"] = max(worst["mass_shell"], abs(
                mass_shell_residual(wave, a0, e, method, constants=consts)))
            worst["newton"] = max(worst["newton"], float(np.max(np.abs(
                newton_residual(wave, a0, e, method, constants=consts)))))
            worst["curl_k"] = max(worst["curl_k"], float(np.max(np.abs(
                curl_k(wave, a0, e, method, constants=consts)))))
            worst["divergence"] = max(worst["divergence"], abs(
                divergence_mu(wave, a0, e, method, constants=consts).value))
            worst["kg"] = max(worst["kg"], abs(
                kg_residual(wave, a0, e, method, constants=consts)))
            worst["nonlinear"] = max(worst["nonlinear"], abs(
                nonlinear_wave_residual(wave, a0, e, method,
                                        constants=consts)))
        print(f"p = {p}: E = {wave.energy:.6f}")
        for name, value in worst.items():
            print(f"    {name:12s} {value:.3e}")


def show_extraction():
    consts = NATURAL_UNITS
    wave = plane_wave((1.0, 0.0, 0.0), consts)
    u = extract_u(wave, zero_potential(), Event(0.3, 0.1, -0.2, 0.7),
                  ANALYTIC, constants=consts)
    print("extracted u for p = (1,0,0):", np.round(u, 12))
    print("contract(u, u) + c^2 =",
          f"{abs(contract(u, u) + consts.c ** 2):.3e}")
    print()


if __name__ == "__main__":
    show_extraction()
    sweep(ANALYTIC, "analytic derivatives")
    print()
    sweep(central(1e-3), "central differences, h = 1e-3")
