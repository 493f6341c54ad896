"""Analytic wavefunction fixtures with closed-form derivatives.

Every fixture supplies psi, grad4, and laplace4 evaluators (scalar fixtures
also the full second-derivative matrix hess4) so the extraction and residual
operators can run without finite differencing. laplace4 is written from an
independently derived closed form, not as the trace of hess4; agreement of
the two is itself a consistency check exercised by the tests.

Fixtures are deliberately unnormalized: every residual downstream is scale
free (divided by psi or a component magnitude).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core4 import Event, NATURAL_UNITS, PhysicalConstants
from .errors import ParameterError, SingularPointError

_SINGULAR_R = 1e-12


@dataclass(frozen=True)
class ScalarWave:
    """Scalar field with analytic evaluators. Callable: wave(e) -> psi(e)."""

    label: str
    psi: Callable[[Event], complex]
    grad4: Callable[[Event], np.ndarray]
    laplace4: Callable[[Event], complex]
    hess4: Optional[Callable[[Event], np.ndarray]] = None
    energy: Optional[float] = None
    params: dict = field(default_factory=dict)

    def __call__(self, e: Event) -> complex:
        return complex(self.psi(e))


@dataclass(frozen=True)
class SpinorWave:
    """4-component wave; each component is a ScalarWave sharing the phase
    conventions of the whole spinor."""

    label: str
    components: tuple
    energy: Optional[float] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.components) != 4:
            raise ParameterError("spinor needs exactly 4 components")

    def values(self, e: Event) -> np.ndarray:
        return np.array([c(e) for c in self.components], dtype=complex)

    def grads(self, e: Event) -> np.ndarray:
        """Matrix [k, mu] of d_mu psi_k from the component evaluators."""
        return np.array([c.grad4(e) for c in self.components], dtype=complex)


# ---------------------------------------------------------------------------
# free plane wave
# ---------------------------------------------------------------------------

def plane_wave(p, constants: PhysicalConstants = NATURAL_UNITS) -> ScalarWave:
    """exp(i(p.x - E t)/hbar) on the positive-energy branch E = +sqrt(...)."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise ParameterError("momentum must be a finite 3-vector")
    hbar, c, m = constants.hbar, constants.c, constants.m
    E = math.sqrt(float(p @ p) * c ** 2 + (m * c ** 2) ** 2)

    # d_mu psi = g_mu psi; slot 3 already folds the 1/(i c) factor
    g = np.array([1j * p[0] / hbar, 1j * p[1] / hbar, 1j * p[2] / hbar,
                  -E / (hbar * c)], dtype=complex)
    lap_coeff = (m * c / hbar) ** 2  # from the dispersion relation

    def psi(e: Event) -> complex:
        phase = (p @ e.spatial - E * e.t) / hbar
        return complex(np.exp(1j * phase))

    return ScalarWave(
        label=f"plane-wave p=({p[0]:g},{p[1]:g},{p[2]:g})",
        psi=psi,
        grad4=lambda e: g * psi(e),
        laplace4=lambda e: lap_coeff * psi(e),
        hess4=lambda e: np.outer(g, g) * psi(e),
        energy=E,
        params={"p": tuple(p), "energy": E},
    )


# ---------------------------------------------------------------------------
# scalar (Klein-Gordon) Coulomb ground state
# ---------------------------------------------------------------------------

def kg_coulomb_1s(z_alpha: float,
                  constants: PhysicalConstants = NATURAL_UNITS,
                  energy_scale: float = 1.0) -> ScalarWave:
    """Ground state of the scalar wave equation in the Coulomb potential.

    psi = r^(gamma-1) exp(-lambda r) exp(-i E t / hbar) with
    gamma = (1 + sqrt(1 - 4 z_alpha^2)) / 2, lambda = E z_alpha/(gamma hbar c),
    E = m c^2 / sqrt(1 + z_alpha^2 / gamma^2). The exponent gamma is real
    only for z_alpha < 1/2 (strict).

    energy_scale != 1 multiplies E and re-derives lambda from it. That keeps
    the 1/r^2 and 1/r structure of the radial equation satisfied while
    breaking the constant term, so a detuned fixture fails the wave-equation
    residual cleanly; used as a negative control.
    """
    if not (0.0 < z_alpha < 0.5):
        raise ParameterError(
            f"z_alpha = {z_alpha} outside (0, 0.5): bound-state exponent "
            "becomes complex"
        )
    if not (math.isfinite(energy_scale) and energy_scale > 0):
        raise ParameterError("energy_scale must be positive")
    hbar, c, m = constants.hbar, constants.c, constants.m
    gamma = 0.5 * (1.0 + math.sqrt(1.0 - 4.0 * z_alpha ** 2))
    E0 = m * c ** 2 / math.sqrt(1.0 + (z_alpha / gamma) ** 2)
    E = energy_scale * E0
    lam = E * z_alpha / (gamma * hbar * c)
    g4 = -E / (hbar * c)  # dlog slot 3

    def _radial(e: Event):
        r = e.r
        if r <= _SINGULAR_R:
            raise SingularPointError(f"bound-state fixture evaluated at r = {r}")
        return r

    def psi(e: Event) -> complex:
        r = _radial(e)
        return r ** (gamma - 1.0) * math.exp(-lam * r) * np.exp(
            -1j * E * e.t / hbar)

    def grad4(e: Event) -> np.ndarray:
        r = _radial(e)
        value = psi(e)
        lr = (gamma - 1.0) / r - lam  # radial log-derivative
        out = np.empty(4, dtype=complex)
        out[:3] = lr * e.spatial / r * value
        out[3] = g4 * value
        return out

    def laplace4(e: Event) -> complex:
        r = _radial(e)
        radial = (gamma * (gamma - 1.0) / r ** 2
                  - 2.0 * lam * gamma / r + lam ** 2)
        return (radial + (E / (hbar * c)) ** 2) * psi(e)

    def hess4(e: Event) -> np.ndarray:
        r = _radial(e)
        value = psi(e)
        n = e.spatial / r
        lr = (gamma - 1.0) / r - lam
        rpp = lr ** 2 - (gamma - 1.0) / r ** 2  # R''/R
        out = np.empty((4, 4), dtype=complex)
        out[:3, :3] = (rpp * np.outer(n, n)
                       + lr * (np.eye(3) - np.outer(n, n)) / r) * value
        out[:3, 3] = lr * n * g4 * value
        out[3, :3] = out[:3, 3]
        out[3, 3] = g4 ** 2 * value
        return out

    return ScalarWave(
        label=f"kg-coulomb-1s za={z_alpha:g}",
        psi=psi,
        grad4=grad4,
        laplace4=laplace4,
        hess4=hess4,
        energy=E,
        params={"z_alpha": z_alpha, "gamma": gamma, "lambda": lam,
                "energy": E, "energy_scale": energy_scale},
    )


# ---------------------------------------------------------------------------
# Dirac plane wave
# ---------------------------------------------------------------------------

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def dirac_plane_wave(p, spin: str = "up",
                     constants: PhysicalConstants = NATURAL_UNITS) -> SpinorWave:
    """Positive-energy free spinor: upper 2-spinor chi, lower
    c (sigma.p) chi / (E + m c^2), common phase exp(i(p.x - E t)/hbar)."""
    if spin not in ("up", "down"):
        raise ParameterError(f"spin must be 'up' or 'down', got {spin!r}")
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise ParameterError("momentum must be a finite 3-vector")
    hbar, c, m = constants.hbar, constants.c, constants.m
    E = math.sqrt(float(p @ p) * c ** 2 + (m * c ** 2) ** 2)
    chi = np.array([1, 0], dtype=complex) if spin == "up" else \
        np.array([0, 1], dtype=complex)
    sigma_p = sum(p[n] * _SIGMA[n] for n in range(3))
    lower = c * (sigma_p @ chi) / (E + m * c ** 2)
    w = np.concatenate([chi, lower])

    g = np.array([1j * p[0] / hbar, 1j * p[1] / hbar, 1j * p[2] / hbar,
                  -E / (hbar * c)], dtype=complex)
    lap_coeff = (m * c / hbar) ** 2

    def phase(e: Event) -> complex:
        return complex(np.exp(1j * (p @ e.spatial - E * e.t) / hbar))

    def make_component(k: int) -> ScalarWave:
        wk = w[k]
        return ScalarWave(
            label=f"dirac-plane-wave[{k}]",
            psi=lambda e: wk * phase(e),
            grad4=lambda e: g * (wk * phase(e)),
            laplace4=lambda e: lap_coeff * (wk * phase(e)),
            hess4=lambda e: np.outer(g, g) * (wk * phase(e)),
            energy=E,
        )

    return SpinorWave(
        label=f"dirac-plane-wave p=({p[0]:g},{p[1]:g},{p[2]:g}) {spin}",
        components=tuple(make_component(k) for k in range(4)),
        energy=E,
        params={"p": tuple(p), "spin": spin, "energy": E},
    )


# ---------------------------------------------------------------------------
# Dirac-Coulomb ground state
# ---------------------------------------------------------------------------

def dirac_coulomb_1s(z_alpha: float,
                     constants: PhysicalConstants = NATURAL_UNITS,
                     energy: Optional[float] = None) -> SpinorWave:
    """Spin-up ground state of the Dirac equation in the Coulomb potential.

    Radial profile r^(s-1) exp(-lambda r) with s = sqrt(1 - z_alpha^2).
    At the bound-state energy E = m c^2 sqrt(1 - z_alpha^2) the decay
    constant is lambda = z_alpha m c / hbar and the small components carry
    the constant ratio lambda hbar c / (E + m c^2) = (1 - s)/z_alpha
    relative to the large one.

    Passing energy= builds the same ansatz around a trial energy (lambda
    and the component ratio re-derived from it); the residual then vanishes
    only at the true eigenvalue, which is what the energy-scan oracle
    exploits.
    """
    if not (0.0 < z_alpha < 1.0):
        raise ParameterError(f"z_alpha = {z_alpha} outside (0, 1)")
    hbar, c, m = constants.hbar, constants.c, constants.m
    s = math.sqrt(1.0 - z_alpha ** 2)
    E = s * m * c ** 2 if energy is None else float(energy)
    if not (0.0 < E < m * c ** 2):
        raise ParameterError(f"trial energy {E} outside (0, m c^2)")
    lam = math.sqrt((m * c ** 2) ** 2 - E ** 2) / (hbar * c)
    ratio = lam * hbar * c / (E + m * c ** 2)
    g4 = -E / (hbar * c)

    def _r(e: Event) -> float:
        r = e.r
        if r <= _SINGULAR_R:
            raise SingularPointError(f"bound-state fixture evaluated at r = {r}")
        return r

    def tfac(e: Event) -> complex:
        return complex(np.exp(-1j * E * e.t / hbar))

    # large component: G(r) = r^(s-1) exp(-lam r), pure radial
    def psi_large(e: Event) -> complex:
        r = _r(e)
        return r ** (s - 1.0) * math.exp(-lam * r) * tfac(e)

    def grad_large(e: Event) -> np.ndarray:
        r = _r(e)
        value = psi_large(e)
        lg = (s - 1.0) / r - lam
        out = np.empty(4, dtype=complex)
        out[:3] = lg * e.spatial / r * value
        out[3] = g4 * value
        return out

    def lap_large(e: Event) -> complex:
        r = _r(e)
        radial = s * (s - 1.0) / r ** 2 - 2.0 * lam * s / r + lam ** 2
        return (radial + g4 ** 2) * psi_large(e)

    zero = ScalarWave("dirac-coulomb-1s[1]",
                      psi=lambda e: 0j,
                      grad4=lambda e: np.zeros(4, dtype=complex),
                      laplace4=lambda e: 0j,
                      energy=E)

    # small components: i * ratio * H(r) * Y(x) with H(r) = r^(s-2) e^(-lam r)
    # and Y a degree-1 solid harmonic (x3, or x1 + i x2). For those Y:
    # lap3(H Y) = Y H ((s-2)(s+1)/r^2 - 2 lam s / r + lam^2).
    def make_small(label: str, harm, harm_grad) -> ScalarWave:
        def hfac(e: Event, r: float) -> complex:
            return 1j * ratio * r ** (s - 2.0) * math.exp(-lam * r) * tfac(e)

        def psi_s(e: Event) -> complex:
            r = _r(e)
            return hfac(e, r) * harm(e)

        def grad_s(e: Event) -> np.ndarray:
            r = _r(e)
            h = hfac(e, r)
            lh = (s - 2.0) / r - lam  # H'/H
            out = np.empty(4, dtype=complex)
            out[:3] = h * (harm_grad(e) + harm(e) * lh * e.spatial / r)
            out[3] = g4 * h * harm(e)
            return out

        def lap_s(e: Event) -> complex:
            r = _r(e)
            radial = ((s - 2.0) * (s + 1.0) / r ** 2
                      - 2.0 * lam * s / r + lam ** 2)
            return (radial + g4 ** 2) * hfac(e, r) * harm(e)

        return ScalarWave(label, psi=psi_s, grad4=grad_s, laplace4=lap_s,
                          energy=E)

    comp3 = make_small(
        "dirac-coulomb-1s[2]",
        harm=lambda e: complex(e.x3),
        harm_grad=lambda e: np.array([0, 0, 1], dtype=complex),
    )
    comp4 = make_small(
        "dirac-coulomb-1s[3]",
        harm=lambda e: complex(e.x1 + 1j * e.x2),
        harm_grad=lambda e: np.array([1, 1j, 0], dtype=complex),
    )

    large = ScalarWave("dirac-coulomb-1s[0]", psi=psi_large, grad4=grad_large,
                       laplace4=lap_large, energy=E)

    return SpinorWave(
        label=f"dirac-coulomb-1s za={z_alpha:g}",
        components=(large, zero, comp3, comp4),
        energy=E,
        params={"z_alpha": z_alpha, "s": s, "lambda": lam, "ratio": ratio,
                "energy": E},
    )


# ---------------------------------------------------------------------------
# smooth non-solution fields for operator-identity checks
# ---------------------------------------------------------------------------

def gaussian_polynomial_wave(linear, center, widths,
                             constants: PhysicalConstants = NATURAL_UNITS,
                             label: str = "gaussian-poly") -> ScalarWave:
    """(c0 + c.x) * exp(-sum a_i (x_i - b_i)^2) over all four coordinates.

    Not a solution of anything; a smooth field with exact derivatives for
    exercising operator identities off shell.
    """
    lin = np.asarray(linear, dtype=complex)
    b = np.asarray(center, dtype=float)
    a = np.asarray(widths, dtype=float)
    if lin.shape != (5,) or b.shape != (4,) or a.shape != (4,):
        raise ParameterError("need 5 linear coeffs, 4 centers, 4 widths")
    if np.any(a <= 0):
        raise ParameterError("widths must be positive")
    c = constants.c
    fold = np.array([1, 1, 1, 1 / (1j * c)], dtype=complex)

    def parts(e: Event):
        x = e.as_array()
        d = x - b
        poly = lin[0] + np.sum(lin[1:] * x)
        gauss = math.exp(float(-np.sum(a * d * d)))
        return x, d, poly, gauss

    def psi(e: Event) -> complex:
        _, _, poly, gauss = parts(e)
        return complex(poly * gauss)

    def grad4(e: Event) -> np.ndarray:
        _, d, poly, gauss = parts(e)
        raw = (lin[1:] - 2.0 * a * d * poly) * gauss  # plain d/dx_i
        return raw * fold

    def laplace4(e: Event) -> complex:
        _, d, poly, gauss = parts(e)
        raw = (-2.0 * a * d * lin[1:] * 2.0
               + poly * (4.0 * a ** 2 * d * d - 2.0 * a)) * gauss
        # slot 3 is a plain t-derivative; fold^2 = -1/c^2 for that slot
        return complex(np.sum(raw[:3]) - raw[3] / c ** 2)

    def hess4(e: Event) -> np.ndarray:
        _, d, poly, gauss = parts(e)
        ad = a * d
        raw = (-2.0 * np.diag(a) * poly
               - 2.0 * np.outer(ad, lin[1:]) - 2.0 * np.outer(lin[1:], ad)
               + 4.0 * np.outer(ad, ad) * poly) * gauss
        return raw * np.outer(fold, fold)

    return ScalarWave(label=label, psi=psi, grad4=grad4, laplace4=laplace4,
                      hess4=hess4,
                      params={"center": tuple(b), "widths": tuple(a)})


def random_smooth_spinor(rng: np.random.Generator,
                         constants: PhysicalConstants = NATURAL_UNITS) -> SpinorWave:
    """Seeded non-solution spinor: four independent gaussian-polynomial
    components with O(1) constant terms so the field has no zero near the
    sampling ball."""
    comps = []
    for k in range(4):
        lin = np.empty(5, dtype=complex)
        mag = rng.uniform(0.5, 1.5)
        lin[0] = mag * np.exp(1j * rng.uniform(0, 2 * math.pi))
        lin[1:] = (rng.uniform(-0.3, 0.3, 4)
                   + 1j * rng.uniform(-0.3, 0.3, 4))
        center = rng.uniform(-0.5, 0.5, 4)
        widths = rng.uniform(0.1, 0.4, 4)
        comps.append(gaussian_polynomial_wave(
            lin, center, widths, constants, label=f"random-spinor[{k}]"))
    return SpinorWave(label="random-smooth-spinor", components=tuple(comps))
