"""Everything physical survives a gauge transformation.

Transforms a plane wave with random polynomial gauge functions and
compares the extracted velocity field, the first-order residual, and the
field strength before and after. The canonical momentum shifts by d chi;
that is shown too, since it is the one quantity allowed to move.
"""
import numpy as np

from fourvel import (ANALYTIC, Event, NATURAL_UNITS, canonical_momentum,
                     coulomb_potential, dirac_plane_wave, dirac_residual,
                     extract_u, field_strength, gauge_transform, plane_wave,
                     polynomial_gauge)

MONOMIALS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 0, 1), (0, 2, 0, 0),
             (0, 0, 2, 0), (0, 0, 1, 1), (0, 0, 0, 2)]


def random_gauge(rng):
    return polynomial_gauge({m: rng.normal() for m in MONOMIALS})


def main():
    rng = np.random.default_rng(20240817)
    psi = plane_wave([1.0, 0.0, 0.0])
    a0 = coulomb_potential(0.3)
    events = [Event(*rng.normal(size=3), rng.normal() * 0.3)
              for _ in range(12)]
    events = [e for e in events
              if np.hypot(np.hypot(e.x1, e.x2), e.x3) > 0.3]

    worst_u = worst_f = worst_shift = 0.0
    for trial in range(8):
        chi = random_gauge(rng)
        a1, psi1 = gauge_transform(a0, psi, chi)
        for e in events:
            u0 = extract_u(psi, a0, e, ANALYTIC)
            u1 = extract_u(psi1, a1, e, ANALYTIC)
            worst_u = max(worst_u, float(np.max(np.abs(u1 - u0))))
            f0 = field_strength(a0, e, ANALYTIC)
            f1 = field_strength(a1, e, ANALYTIC)
            worst_f = max(worst_f, float(np.max(np.abs(f1 - f0))))
            # canonical momentum is gauge covariant, not invariant
            shift = canonical_momentum(psi1, a1, e, ANALYTIC) \
                - canonical_momentum(psi, a0, e, ANALYTIC) \
                - NATURAL_UNITS.q * chi.grad4(e)
            worst_shift = max(worst_shift, float(np.max(np.abs(shift))))
    print("scalar sector, 8 random degree-2 gauges x 12 events:")
    print(f"  velocity field change        {worst_u:.3e}")
    print(f"  field strength change        {worst_f:.3e}")
    print(f"  P shift minus q grad(chi)    {worst_shift:.3e}")

    spinor = dirac_plane_wave([0.3, -0.2, 0.1])
    worst_r = 0.0
    for trial in range(4):
        chi = random_gauge(rng)
        a1, sp1 = gauge_transform(a0, spinor, chi)
        for e in events[:6]:
            r0 = np.max(np.abs(dirac_residual(spinor, a0, e, ANALYTIC)))
            r1 = np.max(np.abs(dirac_residual(sp1, a1, e, ANALYTIC)))
            worst_r = max(worst_r, abs(r1 - r0))
    print("spinor sector, 4 gauges x 6 events:")
    print(f"  residual magnitude change    {worst_r:.3e}")


if __name__ == "__main__":
    main()
