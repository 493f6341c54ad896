"""Electromagnetic 4-potentials and gauge transformations.

Potentials follow the folded-i convention of core4: the fourth component
A_4 = i*phi/c is purely imaginary for a physical scalar potential phi, and
the stored gradient G[mu, nu] = d_mu A_nu applies d_4 = (1/(i*c)) d_t.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core4 import Event, NATURAL_UNITS, PhysicalConstants
from .errors import ParameterError, SingularPointError

_SINGULAR_R = 1e-12


class PotentialField:
    """4-potential with value and analytic-gradient evaluators.

    a(e) returns the 4-vector A_mu(e); grad(e) the matrix d_mu A_nu.
    Build instances through the factory functions below; sums of potentials
    compose with +.
    """

    def __init__(self, kind: str, a: Callable, grad: Callable, params=None):
        self.kind = kind
        self._a = a
        self._grad = grad
        self.params = dict(params or {})

    def a(self, e: Event) -> np.ndarray:
        return np.asarray(self._a(e), dtype=complex)

    def grad(self, e: Event) -> np.ndarray:
        return np.asarray(self._grad(e), dtype=complex)

    def __add__(self, other: "PotentialField") -> "PotentialField":
        if not isinstance(other, PotentialField):
            return NotImplemented
        return PotentialField(
            "sum",
            lambda e: self.a(e) + other.a(e),
            lambda e: self.grad(e) + other.grad(e),
            {"terms": (self.kind, other.kind)},
        )

    def __repr__(self):
        return f"PotentialField(kind={self.kind!r}, params={self.params!r})"


def zero_potential() -> PotentialField:
    z4 = np.zeros(4, dtype=complex)
    z44 = np.zeros((4, 4), dtype=complex)
    return PotentialField("zero", lambda e: z4, lambda e: z44)


def constant_potential(components) -> PotentialField:
    a = np.asarray(components, dtype=complex)
    if a.shape != (4,):
        raise ParameterError("constant potential needs 4 components")
    z44 = np.zeros((4, 4), dtype=complex)
    return PotentialField("constant", lambda e: a.copy(), lambda e: z44,
                          {"components": tuple(a)})


def coulomb_potential(z_alpha: float,
                      constants: PhysicalConstants = NATURAL_UNITS) -> PotentialField:
    """Attractive point-charge potential with coupling strength z_alpha.

    Chosen so that q*A_4 = -i*z_alpha*hbar/r regardless of the sign of q,
    i.e. the interaction energy is -z_alpha*hbar*c/r. Spatial components
    vanish; the field is static, so the Lorenz condition holds exactly.
    """
    if not (0.0 < z_alpha <= 0.5):
        raise ParameterError(
            f"z_alpha = {z_alpha} outside (0, 0.5]; the scalar bound-state "
            "fixture exponent is real only in that range"
        )
    k = -1j * z_alpha * constants.hbar / constants.q  # A_4 = k / r

    def a(e: Event) -> np.ndarray:
        r = e.r
        if r <= _SINGULAR_R:
            raise SingularPointError(f"Coulomb potential evaluated at r = {r}")
        out = np.zeros(4, dtype=complex)
        out[3] = k / r
        return out

    def grad(e: Event) -> np.ndarray:
        r = e.r
        if r <= _SINGULAR_R:
            raise SingularPointError(f"Coulomb potential evaluated at r = {r}")
        g = np.zeros((4, 4), dtype=complex)
        # d_i (k/r) = -k x_i / r^3; static, so row 4 stays zero
        for i, xi in enumerate((e.x1, e.x2, e.x3)):
            g[i, 3] = -k * xi / r ** 3
        return g

    return PotentialField("coulomb", a, grad,
                          {"z_alpha": z_alpha, "q": constants.q})


# ---------------------------------------------------------------------------
# gauge functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeFunction:
    """Real scalar gauge generator chi with folded-i derivative evaluators."""

    chi: Callable[[Event], float]
    grad4: Callable[[Event], np.ndarray]
    hess4: Callable[[Event], np.ndarray]
    degree: int = 0

    def laplace4(self, e: Event) -> complex:
        return complex(np.trace(self.hess4(e)))


def polynomial_gauge(terms: dict, c: float = 1.0) -> GaugeFunction:
    """Gauge generator from monomial terms {(n1, n2, n3, nt): coeff}.

    Exponents refer to (x1, x2, x3, t); coefficients must be real. All
    derivatives are exact, with each t-derivative picking up 1/(i*c).
    """
    clean = {}
    degree = 0
    for expo, coeff in terms.items():
        expo = tuple(int(n) for n in expo)
        if len(expo) != 4 or any(n < 0 for n in expo):
            raise ParameterError(f"bad monomial exponents {expo}")
        if abs(complex(coeff).imag) > 0:
            raise ParameterError("gauge function must be real")
        clean[expo] = float(coeff)
        degree = max(degree, sum(expo))

    def _mono(e: Event, expo):
        v = 1.0
        for base, n in zip((e.x1, e.x2, e.x3, e.t), expo):
            v *= base ** n
        return v

    def _diff(expo, axis):
        # differentiate one monomial: returns (factor, new exponents) or None
        if expo[axis] == 0:
            return None
        new = list(expo)
        new[axis] -= 1
        return float(expo[axis]), tuple(new)

    def chi(e: Event) -> float:
        return sum(co * _mono(e, ex) for ex, co in clean.items())

    def grad4(e: Event) -> np.ndarray:
        out = np.zeros(4, dtype=complex)
        for ax in range(4):
            acc = 0.0
            for ex, co in clean.items():
                d = _diff(ex, ax)
                if d is not None:
                    acc += co * d[0] * _mono(e, d[1])
            out[ax] = acc / (1j * c) if ax == 3 else acc
        return out

    def hess4(e: Event) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for ax1 in range(4):
            for ax2 in range(ax1, 4):
                acc = 0.0
                for ex, co in clean.items():
                    d1 = _diff(ex, ax1)
                    if d1 is None:
                        continue
                    d2 = _diff(d1[1], ax2)
                    if d2 is None:
                        continue
                    acc += co * d1[0] * d2[0] * _mono(e, d2[1])
                val = complex(acc)
                if ax1 == 3:
                    val /= 1j * c
                if ax2 == 3:
                    val /= 1j * c
                out[ax1, ax2] = val
                out[ax2, ax1] = val
        return out

    return GaugeFunction(chi, grad4, hess4, degree)


def pure_gauge_potential(chi: GaugeFunction) -> PotentialField:
    """A_mu = d_mu chi. Its field strength vanishes identically."""
    return PotentialField("pure-gauge",
                          lambda e: chi.grad4(e),
                          lambda e: chi.hess4(e),
                          {"degree": chi.degree})


def lorenz_gauge_residual(a_field: PotentialField, e: Event, method=None,
                          *, c: float = 1.0) -> complex:
    """d_mu A_mu at e; zero for a Lorenz-gauge potential."""
    from .core4 import ANALYTIC, _richardson, _stencil_first

    method = method or ANALYTIC
    if method.mode == "analytic":
        return complex(np.trace(a_field.grad(e)))
    total = 0.0 + 0.0j
    for mu in range(4):
        comp = lambda ev, mu=mu: a_field.a(ev)[mu]
        d = _stencil_first(comp, e, mu, method.h)
        if method.richardson:
            d = _richardson(d, _stencil_first(comp, e, mu, method.h / 2))
        if mu == 3:
            d /= 1j * c
        total += d
    return total


def gauge_transform(a_field: PotentialField, psi, chi: GaugeFunction,
                    constants: PhysicalConstants = NATURAL_UNITS):
    """Return (A', psi') = (A + d chi, psi * exp(i q chi / hbar)).

    The transformed wave keeps analytic evaluators, composed exactly from
    the originals, so both derivative modes remain available. Works on
    scalar waves and componentwise on spinor waves.
    """
    from .wavefunctions import ScalarWave, SpinorWave

    a_prime = a_field + pure_gauge_potential(chi)

    iq_h = 1j * constants.q / constants.hbar

    def transform_scalar(wave: ScalarWave) -> ScalarWave:
        def psi_p(e):
            return wave.psi(e) * np.exp(iq_h * chi.chi(e))

        def grad_p(e):
            g = np.exp(iq_h * chi.chi(e))
            return g * (wave.grad4(e) + wave.psi(e) * iq_h * chi.grad4(e))

        def lap_p(e):
            g = np.exp(iq_h * chi.chi(e))
            dchi = chi.grad4(e)
            dpsi = wave.grad4(e)
            return g * (
                wave.laplace4(e)
                + 2 * iq_h * np.sum(dpsi * dchi)
                + wave.psi(e) * (iq_h * chi.laplace4(e)
                                 + iq_h ** 2 * np.sum(dchi * dchi))
            )

        hess_p = None
        if wave.hess4 is not None:
            def hess_p(e):
                g = np.exp(iq_h * chi.chi(e))
                dchi = chi.grad4(e)
                dpsi = wave.grad4(e)
                return g * (
                    wave.hess4(e)
                    + iq_h * (np.outer(dpsi, dchi) + np.outer(dchi, dpsi))
                    + wave.psi(e) * (iq_h * chi.hess4(e)
                                     + iq_h ** 2 * np.outer(dchi, dchi))
                )

        return ScalarWave(
            label=wave.label + "+gauge",
            psi=psi_p,
            grad4=grad_p,
            laplace4=lap_p,
            hess4=hess_p,
            energy=wave.energy,
            params=dict(wave.params),
        )

    if isinstance(psi, SpinorWave):
        comps = tuple(transform_scalar(comp) for comp in psi.components)
        psi_prime = SpinorWave(label=psi.label + "+gauge", components=comps,
                               energy=psi.energy, params=dict(psi.params))
    elif isinstance(psi, ScalarWave):
        psi_prime = transform_scalar(psi)
    else:
        raise ParameterError(f"cannot gauge-transform {type(psi).__name__}")
    return a_prime, psi_prime
