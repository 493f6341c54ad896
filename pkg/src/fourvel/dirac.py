"""Clifford algebra construction and spinor-equation residuals.

The 4x4 matrix set is the standard representation: alpha_n off-diagonal
Pauli blocks, beta = diag(1, 1, -1, -1), gamma_n = -i beta alpha_n,
gamma_4 = beta. All entries are exactly 0, +-1, or +-i, so the
anticommutator check is exact integer arithmetic in floating point.

The first-order equation comes in two equivalent layouts: the compact
"gamma" form gamma_mu (-i hbar d_mu - q A_mu) Psi - i m c Psi, and the
Hamiltonian-style "alphabeta" form
i c (-i hbar d_4 - q A_4) Psi + c alpha_n (-i hbar d_n - q A_n) Psi
+ beta m c^2 Psi. Left-multiplying the gamma form by i c beta gives the
alphabeta form, so residual_gamma = M residual_alphabeta with the constant
invertible matrix M = -(i/c) beta exposed as form_relation_matrix().
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core4 import (ANALYTIC, DEFAULT_EPS_PSI, DerivativeMethod, Event,
                    NATURAL_UNITS, PhysicalConstants, _richardson,
                    _stencil_first)
from .errors import (InsufficientComponentsError, NearZeroWavefunctionError,
                     ParameterError, UnsupportedConfigurationError)
from .velocityfield import extract_u
from .wavefunctions import _SIGMA, SpinorWave

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)


@dataclass(frozen=True)
class GammaSet:
    representation: str
    alphas: tuple       # three 4x4 matrices
    beta: np.ndarray
    gammas: tuple       # four 4x4 matrices, gammas[3] = beta


def gamma_matrices(representation: str = "dirac-standard") -> GammaSet:
    if representation != "dirac-standard":
        raise ParameterError(f"unknown representation {representation!r}")
    alphas = tuple(
        np.block([[_Z2, s], [s, _Z2]]) for s in _SIGMA
    )
    beta = np.diag([1, 1, -1, -1]).astype(complex)
    gammas = tuple(-1j * beta @ a for a in alphas) + (beta,)
    return GammaSet(representation, alphas, beta, gammas)


def clifford_residual(g: GammaSet) -> float:
    """Largest entry of gamma_mu gamma_nu + gamma_nu gamma_mu - 2 delta I
    over all index pairs; exactly zero for a true representation."""
    worst = 0.0
    eye = np.eye(4, dtype=complex)
    for mu in range(4):
        for nu in range(4):
            anti = g.gammas[mu] @ g.gammas[nu] + g.gammas[nu] @ g.gammas[mu]
            target = 2.0 * eye if mu == nu else 0.0 * eye
            worst = max(worst, float(np.max(np.abs(anti - target))))
    return worst


def gamma_dot(g: GammaSet, p) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    if p.shape != (4,):
        raise ParameterError("gamma contraction needs a 4-vector")
    return sum(p[mu] * g.gammas[mu] for mu in range(4))


def factorization_residual(g: GammaSet, p,
                           constants: PhysicalConstants = NATURAL_UNITS) -> float:
    """Entrywise deviation of (gamma.P + i m c)(gamma.P - i m c) from
    (P.P + m^2 c^2) I; zero whenever the anticommutators close."""
    mc = constants.m * constants.c
    gp = gamma_dot(g, p)
    eye = np.eye(4, dtype=complex)
    product = (gp + 1j * mc * eye) @ (gp - 1j * mc * eye)
    p = np.asarray(p, dtype=complex)
    scalar = complex(np.sum(p * p)) + mc ** 2
    return float(np.max(np.abs(product - scalar * eye)))


def form_relation_matrix(constants: PhysicalConstants = NATURAL_UNITS,
                         g: GammaSet | None = None) -> np.ndarray:
    """M with residual_gamma = M @ residual_alphabeta; M = -(i/c) beta."""
    g = g or gamma_matrices()
    return -(1j / constants.c) * g.beta


def _operator_values(spinor: SpinorWave, a_field, e: Event,
                     method: DerivativeMethod, constants, use_analytic: bool):
    """psi_k(e) and (-i hbar d_mu - q A_mu) psi_k(e) for all k, mu."""
    hbar, c, q = constants.hbar, constants.c, constants.q
    values = spinor.values(e)
    if use_analytic:
        grads = spinor.grads(e)
    else:
        grads = np.empty((4, 4), dtype=complex)
        for k, comp in enumerate(spinor.components):
            for mu in range(3):
                d = _stencil_first(comp, e, mu, method.h)
                if method.richardson:
                    d = _richardson(
                        d, _stencil_first(comp, e, mu, method.h / 2))
                grads[k, mu] = d
            dt = _stencil_first(comp, e, 3, method.h)
            if method.richardson:
                dt = _richardson(dt, _stencil_first(comp, e, 3, method.h / 2))
            grads[k, 3] = dt / (1j * c)
    a = a_field.a(e)
    # pop[mu, k] = (-i hbar d_mu - q A_mu) psi_k
    pop = (-1j * hbar * grads - q * np.outer(values, a)).T
    return values, pop


def dirac_residual(spinor: SpinorWave, a_field, e: Event,
                   method: DerivativeMethod = ANALYTIC, form: str = "gamma", *,
                   constants: PhysicalConstants = NATURAL_UNITS,
                   eps_psi: float = DEFAULT_EPS_PSI,
                   g: GammaSet | None = None) -> np.ndarray:
    """First-order equation residual at e, normalized by the largest
    component magnitude. form selects the matrix layout; see module notes
    for the fixed linear map between the two."""
    if form not in ("gamma", "alphabeta"):
        raise ParameterError(f"unknown form {form!r}")
    g = g or gamma_matrices()
    m, c = constants.m, constants.c
    values, pop = _operator_values(spinor, a_field, e, method, constants,
                                   method.mode == "analytic")
    scale = float(np.max(np.abs(values)))
    if scale <= eps_psi:
        raise NearZeroWavefunctionError(e, scale, eps_psi)
    if form == "gamma":
        res = sum(g.gammas[mu] @ pop[mu] for mu in range(4)) \
            - 1j * m * c * values
    else:
        res = (1j * c * pop[3]
               + c * sum(g.alphas[n] @ pop[n] for n in range(3))
               + m * c ** 2 * (g.beta @ values))
    return res / scale


def spinor_velocity_consistency(spinor: SpinorWave, a_field, e: Event,
                                method: DerivativeMethod = ANALYTIC, *,
                                constants: PhysicalConstants = NATURAL_UNITS,
                                eps_psi: float = DEFAULT_EPS_PSI):
    """Extract u independently from every component with |psi_k| above
    threshold and report the worst pairwise componentwise deviation.

    Needs at least two admissible components. For exact plane waves all
    components share one phase and the deviation is at rounding level; for
    bound states the small components carry angular structure and the
    deviation is a real, finite number worth recording.
    """
    per_component = []
    for k, comp in enumerate(spinor.components):
        try:
            if abs(comp(e)) <= eps_psi:
                continue
            u = extract_u(comp, a_field, e, method, constants=constants,
                          eps_psi=eps_psi)
        except NearZeroWavefunctionError:
            continue
        per_component.append((k, u))
    if len(per_component) < 2:
        raise InsufficientComponentsError(
            f"only {len(per_component)} component(s) above threshold at {e}")
    deviation = 0.0
    for i in range(len(per_component)):
        for j in range(i + 1, len(per_component)):
            diff = per_component[i][1] - per_component[j][1]
            deviation = max(deviation, float(np.max(np.abs(diff))))
    return per_component, deviation


def kg_operator_on_spinor(spinor: SpinorWave, e: Event, *,
                          constants: PhysicalConstants = NATURAL_UNITS,
                          eps_psi: float = DEFAULT_EPS_PSI) -> np.ndarray:
    """Free second-order operator (-hbar^2 d.d + m^2 c^2) applied
    componentwise from analytic laplacians, normalized like dirac_residual."""
    hbar, m, c = constants.hbar, constants.m, constants.c
    values = spinor.values(e)
    scale = float(np.max(np.abs(values)))
    if scale <= eps_psi:
        raise NearZeroWavefunctionError(e, scale, eps_psi)
    lap = np.array([comp.laplace4(e) for comp in spinor.components],
                   dtype=complex)
    return (-hbar ** 2 * lap + (m * c) ** 2 * values) / scale


def dirac_to_kg_check(spinor: SpinorWave, a_field, e: Event,
                      method: DerivativeMethod = ANALYTIC, *,
                      constants: PhysicalConstants = NATURAL_UNITS,
                      eps_psi: float = DEFAULT_EPS_PSI,
                      g: GammaSet | None = None) -> np.ndarray:
    """Apply (gamma.(-i hbar d) + i m c) to (gamma.(-i hbar d) - i m c) Psi.

    Free fields only (the squared operator with a potential picks up field
    terms this toolkit does not model). The inner first-order operator uses
    the component gradients directly; the outer derivative is taken by
    central stencils over that intermediate field, so the result can be
    compared against kg_operator_on_spinor as an independent evaluation.
    Output normalized by the largest component magnitude at e.
    """
    if a_field is not None and a_field.kind != "zero":
        raise UnsupportedConfigurationError(
            "squared-operator check supports only A = 0")
    g = g or gamma_matrices()
    hbar, m, c = constants.hbar, constants.m, constants.c
    use_analytic = method.mode == "analytic"

    zero_a = np.zeros(4, dtype=complex)

    class _NullField:
        kind = "zero"

        @staticmethod
        def a(_e):
            return zero_a

    null = _NullField()

    def first_order(ev: Event) -> np.ndarray:
        values, pop = _operator_values(spinor, null, ev, method, constants,
                                       use_analytic)
        return sum(g.gammas[mu] @ pop[mu] for mu in range(4)) \
            - 1j * m * c * values

    # outer pass: gamma.(-i hbar d) + i m c on the intermediate field
    h = method.h
    inter = first_order(e)
    out = 1j * m * c * inter.astype(complex)
    for mu in range(4):
        d = (-first_order(e.shifted(mu, 2 * h))
             + 8 * first_order(e.shifted(mu, h))
             - 8 * first_order(e.shifted(mu, -h))
             + first_order(e.shifted(mu, -2 * h))) / (12 * h)
        if mu == 3:
            d = d / (1j * c)
        out = out + g.gammas[mu] @ (-1j * hbar * d)

    values = spinor.values(e)
    scale = float(np.max(np.abs(values)))
    if scale <= eps_psi:
        raise NearZeroWavefunctionError(e, scale, eps_psi)
    return out / scale
