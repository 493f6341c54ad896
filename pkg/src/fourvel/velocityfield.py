"""Velocity-field extraction and the residual chain built on it.

The local 4-velocity of a charged particle is read off a wavefunction
through m u_mu + q A_mu = -i hbar (d_mu psi)/psi. Everything else here is
a diagnostic of that field: the mass-shell contraction, the force-law
residual, the curl of the canonical momentum, the divergence (source term)
with an independent cross-evaluation, the linear and nonlinear wave-equation
residuals, and the action integral whose gradient reproduces the momentum.

Derivatives of the extracted field are taken either from the fixture's
analytic second derivatives (mode "analytic") or by nesting central
stencils over the extraction evaluator (mode "central"); the two paths
share no code beyond the extraction formula itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core4 import (ANALYTIC, DEFAULT_EPS_PSI, DerivativeMethod, Event,
                    NATURAL_UNITS, PhysicalConstants, _richardson,
                    _stencil_first, contract, differentiate, field_strength,
                    four_displacement)
from .errors import (NearZeroWavefunctionError, ParameterError,
                     QuadratureError, SingularPointError)

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _dlog(psi, e, method, constants, eps_psi):
    return differentiate(psi, e, "dlog", method, c=constants.c,
                         eps_psi=eps_psi)


def canonical_momentum(psi, a_field, e: Event,
                       method: DerivativeMethod = ANALYTIC, *,
                       constants: PhysicalConstants = NATURAL_UNITS,
                       eps_psi: float = DEFAULT_EPS_PSI) -> np.ndarray:
    """P_mu = m u_mu + q A_mu = -i hbar dlog(psi)_mu."""
    return -1j * constants.hbar * _dlog(psi, e, method, constants, eps_psi)


def extract_u(psi, a_field, e: Event, method: DerivativeMethod = ANALYTIC, *,
              constants: PhysicalConstants = NATURAL_UNITS,
              eps_psi: float = DEFAULT_EPS_PSI) -> np.ndarray:
    """4-velocity u_mu = (-i hbar dlog(psi)_mu - q A_mu) / m."""
    p = canonical_momentum(psi, a_field, e, method, constants=constants,
                           eps_psi=eps_psi)
    return (p - constants.q * a_field.a(e)) / constants.m


def mass_shell_residual(psi, a_field, e: Event,
                        method: DerivativeMethod = ANALYTIC, *,
                        constants: PhysicalConstants = NATURAL_UNITS,
                        eps_psi: float = DEFAULT_EPS_PSI) -> complex:
    """contract(u, u) + c^2; zero exactly on shell."""
    u = extract_u(psi, a_field, e, method, constants=constants,
                  eps_psi=eps_psi)
    return contract(u, u) + constants.c ** 2


def _grad_a(a_field, e: Event, method: DerivativeMethod, c: float) -> np.ndarray:
    """G[mu, nu] = d_mu A_nu through the requested derivative path."""
    if method.mode == "analytic":
        return a_field.grad(e)
    grad = np.zeros((4, 4), dtype=complex)
    for nu in range(4):
        comp = lambda ev, nu=nu: a_field.a(ev)[nu]
        for mu in range(4):
            d = _stencil_first(comp, e, mu, method.h)
            if method.richardson:
                d = _richardson(d, _stencil_first(comp, e, mu, method.h / 2))
            grad[mu, nu] = d / (1j * c) if mu == 3 else d
    return grad


def momentum_gradient(psi, a_field, e: Event,
                      method: DerivativeMethod = ANALYTIC, *,
                      constants: PhysicalConstants = NATURAL_UNITS,
                      eps_psi: float = DEFAULT_EPS_PSI) -> np.ndarray:
    """G[mu, nu] = d_mu P_nu for the canonical momentum P = m u + q A.

    Analytic mode needs the fixture's full second-derivative matrix:
    d_mu P_nu = -i hbar (hess_{mu nu}/psi - dlog_mu dlog_nu). Central mode
    nests first-derivative stencils over the extraction evaluator instead,
    so the two paths are independent.
    """
    hbar, c = constants.hbar, constants.c
    if method.mode == "analytic":
        if psi.hess4 is None:
            raise ParameterError(
                f"{psi.label}: no analytic second derivatives; use central mode")
        value = complex(psi(e))
        if abs(value) <= eps_psi:
            raise NearZeroWavefunctionError(e, abs(value), eps_psi)
        dl = psi.grad4(e) / value
        return -1j * hbar * (psi.hess4(e) / value - np.outer(dl, dl))

    def p_of(ev: Event) -> np.ndarray:
        return canonical_momentum(psi, a_field, ev, method,
                                  constants=constants, eps_psi=eps_psi)

    grad = np.zeros((4, 4), dtype=complex)
    h = method.h
    for mu in range(4):
        d = (-p_of(e.shifted(mu, 2 * h)) + 8 * p_of(e.shifted(mu, h))
             - 8 * p_of(e.shifted(mu, -h)) + p_of(e.shifted(mu, -2 * h))) / (12 * h)
        if method.richardson:
            h2 = h / 2
            fine = (-p_of(e.shifted(mu, 2 * h2)) + 8 * p_of(e.shifted(mu, h2))
                    - 8 * p_of(e.shifted(mu, -h2))
                    + p_of(e.shifted(mu, -2 * h2))) / (12 * h2)
            d = _richardson(d, fine)
        grad[mu, :] = d / (1j * c) if mu == 3 else d
    return grad


def curl_k(psi, a_field, e: Event, method: DerivativeMethod = ANALYTIC, *,
           constants: PhysicalConstants = NATURAL_UNITS,
           eps_psi: float = DEFAULT_EPS_PSI) -> np.ndarray:
    """K[mu, nu] = d_mu P_nu - d_nu P_mu; vanishes for any single-valued
    phase, which is what makes the action integral path independent."""
    g = momentum_gradient(psi, a_field, e, method, constants=constants,
                          eps_psi=eps_psi)
    return g - g.T


def newton_residual(psi, a_field, e: Event,
                    method: DerivativeMethod = ANALYTIC, *,
                    constants: PhysicalConstants = NATURAL_UNITS,
                    eps_psi: float = DEFAULT_EPS_PSI,
                    normalize: bool = True) -> np.ndarray:
    """Force-law residual u_nu d_nu u_mu - (q/m) F_mu_nu u_nu.

    Normalized by |u| unless normalize=False (useful when comparing against
    an independently computed right-hand side).
    """
    m, q = constants.m, constants.q
    u = extract_u(psi, a_field, e, method, constants=constants,
                  eps_psi=eps_psi)
    gp = momentum_gradient(psi, a_field, e, method, constants=constants,
                           eps_psi=eps_psi)
    ga = _grad_a(a_field, e, method, constants.c)
    du = (gp - q * ga) / m  # du[mu, nu] = d_mu u_nu
    convective = u @ du  # sum_nu u_nu d_nu u_mu
    f = field_strength(a_field, e, method, c=constants.c)
    res = convective - (q / m) * (f @ u)
    if normalize:
        scale = np.linalg.norm(u)
        if scale > 0:
            res = res / scale
    return res


@dataclass(frozen=True)
class DivergenceResult:
    """Two independent evaluations of d_mu (m u_mu) plus the gauge check."""

    value: complex              # trace of the momentum gradient, A removed
    independent: complex        # -i hbar (laplace4 psi/psi - dlog.dlog)
    lorenz_residual: complex    # d_mu A_mu at the same event
    lorenz_ok: bool             # independent form assumes this is ~0

    @property
    def mismatch(self) -> float:
        return abs(self.value - self.independent)


def divergence_mu(psi, a_field, e: Event,
                  method: DerivativeMethod = ANALYTIC, *,
                  constants: PhysicalConstants = NATURAL_UNITS,
                  eps_psi: float = DEFAULT_EPS_PSI,
                  lorenz_tol: float = 1e-10) -> DivergenceResult:
    """Source term d_mu (m u_mu), evaluated two independent ways.

    The identity behind the cross-check requires the Lorenz condition;
    lorenz_ok records whether the supplied potential satisfies it here.
    """
    hbar = constants.hbar
    gp = momentum_gradient(psi, a_field, e, method, constants=constants,
                           eps_psi=eps_psi)
    ga = _grad_a(a_field, e, method, constants.c)
    lorenz = complex(np.trace(ga))
    value = complex(np.trace(gp)) - constants.q * lorenz

    dl = _dlog(psi, e, method, constants, eps_psi)
    lap = differentiate(psi, e, "laplace4", method, c=constants.c)
    value_psi = complex(psi(e))
    independent = -1j * hbar * (lap / value_psi - complex(np.sum(dl * dl)))

    return DivergenceResult(value, independent, lorenz,
                            abs(lorenz) < lorenz_tol)


def kg_residual(psi, a_field, e: Event, method: DerivativeMethod = ANALYTIC, *,
                constants: PhysicalConstants = NATURAL_UNITS,
                eps_psi: float = DEFAULT_EPS_PSI,
                normalized: bool = True) -> complex:
    """Linear wave-equation residual [(-i hbar d - q A)^2 + m^2 c^2] psi / psi.

    The squared operator is expanded once (product rule) so only laplace4,
    grad4, the potential values, and its divergence are needed. With
    normalized=False the bare numerator is returned; callers that sit on a
    node of psi can still report something finite that way.
    """
    hbar, c, m, q = constants.hbar, constants.c, constants.m, constants.q
    value = complex(psi(e))
    grad = differentiate(psi, e, "grad4", method, c=c)
    lap = differentiate(psi, e, "laplace4", method, c=c)
    a = a_field.a(e)
    div_a = complex(np.trace(_grad_a(a_field, e, method, c)))
    raw = (-hbar ** 2 * lap
           + 1j * hbar * q * div_a * value
           + 2j * hbar * q * complex(np.sum(a * grad))
           + q ** 2 * complex(np.sum(a * a)) * value
           + (m * c) ** 2 * value)
    if not normalized:
        return raw
    if abs(value) <= eps_psi:
        raise NearZeroWavefunctionError(e, abs(value), eps_psi)
    return raw / value


def nonlinear_wave_residual(psi, a_field, e: Event,
                            method: DerivativeMethod = ANALYTIC, *,
                            constants: PhysicalConstants = NATURAL_UNITS,
                            eps_psi: float = DEFAULT_EPS_PSI) -> complex:
    """Residual of the wave equation with the hbar^2 d_mu d_mu ln psi
    correction restored; equals m^2 * mass_shell_residual identically in
    Lorenz gauge, on shell or off."""
    hbar = constants.hbar
    kg = kg_residual(psi, a_field, e, method, constants=constants,
                     eps_psi=eps_psi)
    dl = _dlog(psi, e, method, constants, eps_psi)
    lap = differentiate(psi, e, "laplace4", method, c=constants.c)
    value = complex(psi(e))
    ddlog = lap / value - complex(np.sum(dl * dl))  # d_mu d_mu ln psi
    return kg + hbar ** 2 * ddlog


# ---------------------------------------------------------------------------
# action integral
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionResult:
    phi: complex                 # integral of (m u + q A) . dx along the path
    theta: complex               # offset matching the wave at the start point
    reconstruction_error: float  # |exp(i(phi+theta)/hbar) - psi(end)| / |psi(end)|
    n_segments: int              # accepted quadrature panels over all legs


def _gl(f, a: float, b: float) -> complex:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * sum(w * f(mid + half * x)
                      for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def _adaptive(f, a: float, b: float, whole: complex, tol: float,
              depth: int, panels: list) -> complex:
    mid = 0.5 * (a + b)
    left = _gl(f, a, mid)
    right = _gl(f, mid, b)
    if abs(left + right - whole) < tol:
        panels[0] += 1
        return left + right
    if depth <= 0:
        raise QuadratureError(
            f"segment quadrature not converged on [{a}, {b}]")
    return (_adaptive(f, a, mid, left, tol / 2, depth - 1, panels)
            + _adaptive(f, mid, b, right, tol / 2, depth - 1, panels))


def action_integral(psi, a_field, path, method: DerivativeMethod = ANALYTIC, *,
                    constants: PhysicalConstants = NATURAL_UNITS,
                    eps_psi: float = DEFAULT_EPS_PSI,
                    seg_tol: float = 1e-10, max_depth: int = 20) -> ActionResult:
    """Line integral of (m u_mu + q A_mu) dx_mu along a polyline of events.

    dx_4 = i c dt, consistent with the folded-i convention. Each straight
    segment is integrated by 10-point Gauss-Legendre panels, bisected
    adaptively until the segment estimate moves by less than seg_tol.
    The returned theta makes exp(i (phi + theta)/hbar) a prediction of
    psi at the path end; the relative error of that prediction is reported.
    """
    path = list(path)
    if len(path) < 2:
        raise ParameterError("path needs at least two events")
    m, q, hbar, c = constants.m, constants.q, constants.hbar, constants.c

    def b_vec(e: Event) -> np.ndarray:
        u = extract_u(psi, a_field, e, method, constants=constants,
                      eps_psi=eps_psi)
        return m * u + q * a_field.a(e)

    phi = 0.0 + 0.0j
    panels = [0]
    for e0, e1 in zip(path[:-1], path[1:]):
        delta = four_displacement(e0, e1, c)
        base = e0.as_array()
        step = e1.as_array() - base

        def integrand(s: float) -> complex:
            ev = Event(*(base + s * step))
            return complex(np.sum(b_vec(ev) * delta))

        whole = _gl(integrand, 0.0, 1.0)
        phi += _adaptive(integrand, 0.0, 1.0, whole, seg_tol, max_depth,
                         panels)

    start_val = complex(psi(path[0]))
    if abs(start_val) <= eps_psi:
        raise NearZeroWavefunctionError(path[0], abs(start_val), eps_psi)
    theta = -1j * hbar * np.log(start_val)
    end_val = complex(psi(path[-1]))
    if abs(end_val) <= eps_psi:
        raise NearZeroWavefunctionError(path[-1], abs(end_val), eps_psi)
    predicted = np.exp(1j * (phi + theta) / hbar)
    err = abs(predicted - end_val) / abs(end_val)
    return ActionResult(phi, complex(theta), float(err), panels[0])


# ---------------------------------------------------------------------------
# one-stop diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidualSample:
    """All residuals at one event; entries are None when their evaluation
    failed, with the reason recorded in flags."""

    event: Event
    psi_magnitude: float
    mass_shell: Optional[complex] = None
    newton: Optional[np.ndarray] = None
    curl_k: Optional[np.ndarray] = None
    divergence: Optional[complex] = None
    continuity: Optional[complex] = None  # independent divergence evaluation
    kg: Optional[complex] = None
    nonlinear: Optional[complex] = None
    flags: dict = field(default_factory=dict)


def diagnose_point(psi, a_field, e: Event,
                   method: DerivativeMethod = ANALYTIC, *,
                   constants: PhysicalConstants = NATURAL_UNITS,
                   eps_psi: float = DEFAULT_EPS_PSI) -> ResidualSample:
    """Evaluate the full residual chain at one event; never raises.

    Individual failures (near-zero psi, singular potential) are recorded as
    flags; the kg entry falls back to the unnormalized numerator when psi
    is too small to divide by.
    """
    flags: dict = {}
    values: dict = {}
    try:
        psi_mag = abs(complex(psi(e)))
    except SingularPointError as exc:
        return ResidualSample(event=e, psi_magnitude=float("nan"),
                              flags={"psi": f"singular: {exc}"})

    def attempt(name, fn):
        try:
            values[name] = fn()
        except NearZeroWavefunctionError:
            flags[name] = "near-zero-wavefunction"
        except SingularPointError:
            flags[name] = "singular-potential"
        except ParameterError as exc:
            flags[name] = f"unsupported: {exc}"

    kw = {"constants": constants, "eps_psi": eps_psi}
    attempt("mass_shell",
            lambda: mass_shell_residual(psi, a_field, e, method, **kw))
    attempt("newton", lambda: newton_residual(psi, a_field, e, method, **kw))
    attempt("curl_k", lambda: curl_k(psi, a_field, e, method, **kw))

    def _div():
        res = divergence_mu(psi, a_field, e, method, **kw)
        values["continuity"] = res.independent
        if not res.lorenz_ok:
            flags["divergence"] = "gauge-violation"
        return res.value

    attempt("divergence", _div)

    def _kg():
        try:
            return kg_residual(psi, a_field, e, method, **kw)
        except NearZeroWavefunctionError:
            flags["kg"] = "near-zero-wavefunction; unnormalized value"
            return kg_residual(psi, a_field, e, method, normalized=False, **kw)

    attempt("kg", _kg)
    attempt("nonlinear",
            lambda: nonlinear_wave_residual(psi, a_field, e, method, **kw))

    return ResidualSample(event=e, psi_magnitude=psi_mag, flags=flags,
                          **{k: values.get(k) for k in
                             ("mass_shell", "newton", "curl_k", "divergence",
                              "continuity", "kg", "nonlinear")})
