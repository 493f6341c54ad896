"""Phase transport along paths.

Integrating the canonical momentum along a path and exponentiating the
result reproduces the wavefunction at the far end. Shown on a free plane
wave (straight and time-directed chords, and a closed loop where the
accumulated phase must cancel) and on the Coulomb bound state, where two
different routes between the same endpoints agree.
"""
import cmath

import numpy as np

from fourvel import (ANALYTIC, action_integral, coulomb_potential, Event,
                     kg_coulomb_1s, plane_wave, zero_potential)


def straight_chord():
    psi = plane_wave([1.0, 0.0, 0.0])
    a = zero_potential()
    path = [Event(-0.3, 0.2, 0.0, 0.0), Event(0.7, 0.2, 0.0, 0.0)]
    res = action_integral(psi, a, path, ANALYTIC)
    print("plane wave, spatial chord of length 1 along x1:")
    print(f"  phi = {res.phi:.12f}   (momentum p1 = 1)")
    print(f"  reconstruction error = {res.reconstruction_error:.3e}")
    print(f"  accepted panels = {res.n_segments}")


def timelike_chord():
    psi = plane_wave([1.0, 0.0, 0.0])
    a = zero_potential()
    path = [Event(0.1, 0.0, 0.0, 0.0), Event(0.1, 0.0, 0.0, 0.8)]
    res = action_integral(psi, a, path, ANALYTIC)
    ev = cmath.sqrt(1.0 + 1.0)  # E = sqrt(p^2 + m^2) in these units
    print("\nplane wave, pure time displacement dt = 0.8:")
    print(f"  phi = {res.phi:.12f}   (expect -E dt = {-ev.real * 0.8:.12f})")
    print(f"  reconstruction error = {res.reconstruction_error:.3e}")


def closed_loop():
    psi = plane_wave([0.3, -0.2, 0.1])
    a = zero_potential()
    corners = [Event(0.0, 0.0, 0.0, 0.0), Event(1.0, 0.0, 0.0, 0.2),
               Event(0.6, 0.8, -0.4, 0.5), Event(-0.2, 0.3, 0.1, 0.1),
               Event(0.0, 0.0, 0.0, 0.0)]
    res = action_integral(psi, a, corners, ANALYTIC)
    print("\nplane wave, 4-leg closed loop:")
    print(f"  |phi| = {abs(res.phi):.3e}  (single-valued phase)")


def bound_state_two_paths():
    za = 0.4
    psi = kg_coulomb_1s(za)
    a = coulomb_potential(za)
    start = Event(1.5, 0.0, 0.0, 0.0)
    end = Event(0.0, 2.0, 0.5, 0.3)
    direct = [start, end]
    detour = [start, Event(1.0, 1.8, -0.6, 0.1), Event(0.3, 2.5, 0.2, 0.2),
              end]
    r1 = action_integral(psi, a, direct, ANALYTIC)
    r2 = action_integral(psi, a, detour, ANALYTIC)
    print("\nCoulomb bound state, two routes between the same endpoints:")
    print(f"  direct  phi = {r1.phi:.12f}  ({r1.n_segments} panels)")
    print(f"  detour  phi = {r2.phi:.12f}  ({r2.n_segments} panels)")
    print(f"  |difference| = {abs(r1.phi - r2.phi):.3e}")
    print(f"  reconstruction errors = {r1.reconstruction_error:.3e}, "
          f"{r2.reconstruction_error:.3e}")


def main():
    straight_chord()
    timelike_chord()
    closed_loop()
    bound_state_two_paths()


if __name__ == "__main__":
    main()
