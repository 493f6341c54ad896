"""4-vector kinematics and differentiation in the imaginary-time convention.

Events store the real coordinates (x1, x2, x3, t). The imaginary fourth
coordinate x4 = i*c*t is never stored: the factor i is folded analytically
into the derivative operator, d_4 = (1/(i*c)) d_t, and into the fourth
component of displacement 4-vectors, dx_4 = i*c*dt. With that bookkeeping
the scalar product of two 4-vectors is a plain subscript sum with no metric
tensor, and timelike vectors contract to negative values.

Derivatives are evaluated either from a field's analytic evaluators or by
4th-order central differences; dlog means (d_mu f)/f and is always formed
from the gradient, never through a complex logarithm (branch cuts).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBoostError, NearZeroWavefunctionError, ParameterError

# |psi| threshold below which dlog-style divisions refuse to proceed.
# Fixtures are O(1) on their standard domains; sweep drivers rescale this
# by the max |psi| seen over the active sample cloud.
DEFAULT_EPS_PSI = 1e-12

# A 4-vector is a complex ndarray of shape (4,), a Matrix4 of shape (4, 4).
# Index order is (1, 2, 3, 4) -> array slots (0, 1, 2, 3); slot 3 carries
# the folded-i fourth component.


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system for a run. Defaults are natural units with q = -1."""

    hbar: float = 1.0
    c: float = 1.0
    m: float = 1.0
    q: float = -1.0

    def __post_init__(self):
        for name in ("hbar", "c", "m", "q"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.hbar <= 0 or self.c <= 0 or self.m <= 0:
            raise ParameterError("hbar, c, m must be positive")


NATURAL_UNITS = PhysicalConstants()


@dataclass(frozen=True)
class Event:
    """Spacetime sample point with real coordinates."""

    x1: float
    x2: float
    x3: float
    t: float

    def __post_init__(self):
        for v in (self.x1, self.x2, self.x3, self.t):
            if not math.isfinite(v):
                raise ParameterError(f"non-finite event coordinate in {self!r}")

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    @property
    def r(self) -> float:
        return math.sqrt(self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.t])

    def shifted(self, axis: int, delta: float) -> "Event":
        """New event displaced by delta along coordinate axis 0..3 (3 = t)."""
        coords = [self.x1, self.x2, self.x3, self.t]
        coords[axis] += delta
        return Event(*coords)


def four_vector(a1, a2, a3, a4) -> np.ndarray:
    return np.array([a1, a2, a3, a4], dtype=complex)


def contract(a, b) -> complex:
    """Plain subscript sum a_mu b_mu. No metric, no conjugation."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (4,) or b.shape != (4,):
        raise ParameterError("contract expects two 4-vectors")
    return complex(np.sum(a * b))


def four_displacement(e_from: Event, e_to: Event, c: float = 1.0) -> np.ndarray:
    """Displacement 4-vector between events, fourth slot i*c*dt."""
    return four_vector(
        e_to.x1 - e_from.x1,
        e_to.x2 - e_from.x2,
        e_to.x3 - e_from.x3,
        1j * c * (e_to.t - e_from.t),
    )


def boost_x1(e: Event, v: float, c: float = 1.0) -> Event:
    """Standard boost along x1 with speed v; |v| >= c rejected."""
    if not math.isfinite(v) or abs(v) >= c:
        raise InvalidBoostError(f"boost speed {v} not below c = {c}")
    gamma = 1.0 / math.sqrt(1.0 - (v / c) ** 2)
    return Event(
        gamma * (e.x1 - v * e.t),
        e.x2,
        e.x3,
        gamma * (e.t - v * e.x1 / c ** 2),
    )


# ---------------------------------------------------------------------------
# derivative engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivativeMethod:
    """How derivatives are taken: fixture closed forms or central stencils.

    mode "analytic" uses the field's own grad4/laplace4 evaluators; mode
    "central" uses 4th-order central differences with step h (same step on
    the t axis, appropriate for fixtures with characteristic scale ~1).
    richardson combines the h and h/2 stencils for two extra orders.
    """

    mode: str = "analytic"
    h: float = 1e-3
    richardson: bool = False

    def __post_init__(self):
        if self.mode not in ("analytic", "central"):
            raise ParameterError(f"unknown derivative mode {self.mode!r}")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ParameterError("step h must be positive and finite")


ANALYTIC = DerivativeMethod("analytic")


def central(h: float = 1e-3, richardson: bool = False) -> DerivativeMethod:
    return DerivativeMethod("central", h, richardson)


def _stencil_first(f, e: Event, axis: int, h: float) -> complex:
    # (-f(+2h) + 8 f(+h) - 8 f(-h) + f(-2h)) / (12 h), error O(h^4)
    return (
        -f(e.shifted(axis, 2 * h))
        + 8 * f(e.shifted(axis, h))
        - 8 * f(e.shifted(axis, -h))
        + f(e.shifted(axis, -2 * h))
    ) / (12 * h)


def _stencil_second(f, e: Event, axis: int, h: float) -> complex:
    # (-f(+2h) + 16 f(+h) - 30 f(0) + 16 f(-h) - f(-2h)) / (12 h^2), O(h^4)
    return (
        -f(e.shifted(axis, 2 * h))
        + 16 * f(e.shifted(axis, h))
        - 30 * f(e)
        + 16 * f(e.shifted(axis, -h))
        - f(e.shifted(axis, -2 * h))
    ) / (12 * h * h)


def _richardson(coarse: complex, fine: complex) -> complex:
    # both stencils are O(h^4); 16/15 combination cancels the leading term
    return (16 * fine - coarse) / 15


def grad4_numeric(f, e: Event, h: float, c: float = 1.0,
                  richardson: bool = False) -> np.ndarray:
    """Central-difference gradient; slot 3 is (1/(i*c)) d_t."""
    out = np.zeros(4, dtype=complex)
    for axis in range(3):
        d = _stencil_first(f, e, axis, h)
        if richardson:
            d = _richardson(d, _stencil_first(f, e, axis, h / 2))
        out[axis] = d
    dt = _stencil_first(f, e, 3, h)
    if richardson:
        dt = _richardson(dt, _stencil_first(f, e, 3, h / 2))
    out[3] = dt / (1j * c)
    return out


def laplace4_numeric(f, e: Event, h: float, c: float = 1.0,
                     richardson: bool = False) -> complex:
    """Central-difference 4-Laplacian: sum d_mu d_mu = lap3 - (1/c^2) d_t^2."""
    total = 0.0 + 0.0j
    for axis in range(3):
        d2 = _stencil_second(f, e, axis, h)
        if richardson:
            d2 = _richardson(d2, _stencil_second(f, e, axis, h / 2))
        total += d2
    d2t = _stencil_second(f, e, 3, h)
    if richardson:
        d2t = _richardson(d2t, _stencil_second(f, e, 3, h / 2))
    return total - d2t / c ** 2


def differentiate(f, e: Event, order: str, method: DerivativeMethod = ANALYTIC,
                  *, c: float = 1.0, eps_psi: float = DEFAULT_EPS_PSI):
    """Evaluate grad4, laplace4, or dlog of a scalar field f at event e.

    f is a callable Event -> complex; for analytic mode it must also carry
    grad4/laplace4 evaluator attributes (fixtures do). dlog returns
    grad4(f)/f(e) and raises NearZeroWavefunctionError below eps_psi.
    """
    if order not in ("grad4", "laplace4", "dlog"):
        raise ParameterError(f"unknown derivative order {order!r}")

    if order == "dlog":
        value = complex(f(e))
        if abs(value) <= eps_psi:
            raise NearZeroWavefunctionError(e, abs(value), eps_psi)
        return differentiate(f, e, "grad4", method, c=c) / value

    if method.mode == "analytic":
        evaluator = getattr(f, order, None)
        if evaluator is None:
            raise ParameterError(
                f"field {f!r} has no analytic {order} evaluator; "
                "use a central-difference method"
            )
        if order == "grad4":
            return np.asarray(evaluator(e), dtype=complex)
        return complex(evaluator(e))

    if order == "grad4":
        return grad4_numeric(f, e, method.h, c, method.richardson)
    return laplace4_numeric(f, e, method.h, c, method.richardson)


def field_strength(a_field, e: Event, method: DerivativeMethod = ANALYTIC,
                   *, c: float = 1.0) -> np.ndarray:
    """Antisymmetric tensor F[mu, nu] = d_mu A_nu - d_nu A_mu at e.

    Antisymmetrized after evaluation, so F + F^T vanishes identically even
    on the numeric path.
    """
    if method.mode == "analytic":
        grad = np.asarray(a_field.grad(e), dtype=complex)
    else:
        grad = np.zeros((4, 4), dtype=complex)
        for nu in range(4):
            comp = lambda ev, nu=nu: a_field.a(ev)[nu]
            for mu in range(3):
                d = _stencil_first(comp, e, mu, method.h)
                if method.richardson:
                    d = _richardson(d, _stencil_first(comp, e, mu, method.h / 2))
                grad[mu, nu] = d
            dt = _stencil_first(comp, e, 3, method.h)
            if method.richardson:
                dt = _richardson(dt, _stencil_first(comp, e, 3, method.h / 2))
            grad[3, nu] = dt / (1j * c)
    return grad - grad.T
