"""Named verification scenarios and machine-readable reports.

Each scenario builds its fixtures, sweeps a sample cloud, and scores a
fixed set of named checks against mode-dependent tolerances. Reports are
deterministic for a given configuration and seed: sample order is fixed,
all randomness flows through one seeded generator, and JSON keys are
sorted. The timestamp and wall-clock duration are the only nondeterministic
fields and can be suppressed together for byte-identical comparisons.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import __version__
from .core4 import (DEFAULT_EPS_PSI, DerivativeMethod, Event, PhysicalConstants,
                    contract, field_strength)
from .dirac import (clifford_residual, dirac_residual, dirac_to_kg_check,
                    factorization_residual, form_relation_matrix, gamma_dot,
                    gamma_matrices, kg_operator_on_spinor,
                    spinor_velocity_consistency, GammaSet)
from .errors import ConfigError, InsufficientComponentsError, ParameterError
from .fields import (coulomb_potential, gauge_transform, lorenz_gauge_residual,
                     polynomial_gauge, zero_potential)
from .velocityfield import (action_integral, curl_k, divergence_mu, extract_u,
                            kg_residual, mass_shell_residual, newton_residual,
                            nonlinear_wave_residual)
from .wavefunctions import (dirac_coulomb_1s, dirac_plane_wave, kg_coulomb_1s,
                            plane_wave, random_smooth_spinor)
from .worldline import (boost_worldline, classify_speed, make_worldline,
                        pierce_points)

DEFAULT_SEED = 20240817

# (analytic tolerance, central tolerance); None = informational, never fails
_TOLERANCES = {
    "plane-wave": {
        "kg": (1e-12, 1e-6), "mass_shell": (1e-12, 1e-6),
        "newton": (1e-12, 1e-6), "curl_k": (1e-12, 1e-6),
        "divergence": (1e-12, 1e-6), "nonlinear": (1e-12, 1e-6),
    },
    "kg-coulomb-1s": {
        "kg": (1e-8, 1e-5), "divergence_identity": (1e-8, 1e-5),
        "nonlinear_vs_mass_shell": (1e-8, 1e-5), "curl_k": (1e-8, 1e-5),
        "u_contract_k": (1e-10, 1e-6), "lorenz_gauge": (1e-12, 1e-8),
        "mass_shell": (None, None), "newton": (None, None),
    },
    "dirac-plane-wave": {
        "residual_gamma": (1e-12, 1e-6), "residual_alphabeta": (1e-12, 1e-6),
        "form_equivalence": (1e-12, 1e-12),
        "velocity_consistency": (1e-12, 1e-8), "dirac_to_kg": (1e-8, 1e-8),
    },
    "dirac-coulomb-1s": {
        "residual_gamma": (1e-10, 1e-6), "energy_scan": (1e-6, 1e-6),
        "velocity_deviation": (None, None),
    },
    "gauge-orbit": {
        "u_invariance": (1e-9, 1e-6), "dirac_invariance": (1e-10, 1e-6),
        "field_strength_invariance": (1e-10, 1e-10),
        "roundtrip": (1e-12, 1e-11),
    },
    "clifford": {
        "clifford": (0.0, 0.0), "fixed_entries": (0.0, 0.0),
        "gamma_square": (1e-12, 1e-12), "factorization": (1e-12, 1e-12),
    },
    "action-path": {
        "plane_phi": (1e-12, 1e-12), "plane_reconstruction": (1e-12, 1e-12),
        "closed_loop": (1e-8, 1e-8), "two_path_delta": (1e-8, 1e-8),
    },
    "worldline-pierce": {
        "circle_count": (0.0, 0.0), "circle_position": (1e-9, 1e-9),
        "line_boost_count": (0.0, 0.0), "timelike_onshell": (1e-10, 1e-10),
        "tangent_flag": (0.0, 0.0), "classification": (0.0, 0.0),
    },
}

_FIXTURE_DEFAULTS = {
    "plane-wave": {
        "momenta": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, -0.2, 0.1]],
    },
    "kg-coulomb-1s": {"z_alpha": 0.4, "energy_scale": 1.0},
    "dirac-plane-wave": {
        "momenta": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.3, -0.2, 0.1]],
        "spin": "up", "n_random_spinors": 20,
    },
    "dirac-coulomb-1s": {
        "z_alpha": 0.4, "scan_lo": 0.85, "scan_hi": 0.95, "scan_points": 25,
    },
    "gauge-orbit": {"p": [1.0, 0.0, 0.0], "n_gauges": 10, "degree": 2},
    "clifford": {"n_random_p": 100, "gamma_scale": 1.0},
    "action-path": {"p": [1.0, 0.0, 0.0], "z_alpha": 0.4},
    "worldline-pierce": {
        "radius": 1.0, "ct0": 0.5, "line_v": [0.3, 0.1, -0.2],
        "n_boosts": 20, "max_boost": 0.99,
    },
}

_CLOUD_KEYS = {
    # kind -> (required keys, optional keys)
    "ray": (("r_min", "r_max", "count"), ("t",)),
    "random-ball": (("radius", "count"), ("center",)),
    "events": (("events",), ()),
}

_CLOUD_DEFAULTS = {
    "plane-wave": {"kind": "random-ball", "center": [0, 0, 0, 0],
                   "radius": 2.0, "count": 100},
    "kg-coulomb-1s": {"kind": "ray", "r_min": 0.5, "r_max": 5.0,
                      "count": 50, "t": 0.0},
    "dirac-plane-wave": {"kind": "random-ball", "center": [0, 0, 0, 0],
                         "radius": 2.0, "count": 100},
    "dirac-coulomb-1s": {"kind": "ray", "r_min": 0.5, "r_max": 5.0,
                         "count": 50, "t": 0.0},
    "gauge-orbit": {"kind": "random-ball", "center": [0, 0, 0, 0],
                    "radius": 1.5, "count": 100},
}

# scenarios whose default derivative mode is central rather than analytic
_DEFAULT_CENTRAL = {"dirac-coulomb-1s"}


def list_scenarios() -> list:
    return sorted(_TOLERANCES)


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    constants: PhysicalConstants = PhysicalConstants()
    method: DerivativeMethod = DerivativeMethod("analytic")
    fixture: dict = dc_field(default_factory=dict)
    cloud: Optional[dict] = None
    tolerances: dict = dc_field(default_factory=dict)
    seed: int = DEFAULT_SEED
    no_timestamp: bool = False
    out: Optional[str] = None
    fmt: str = "json"


def default_config(scenario: str) -> ScenarioConfig:
    if scenario not in _TOLERANCES:
        raise ConfigError(
            f"unknown scenario {scenario!r}; choices: {', '.join(list_scenarios())}")
    mode = "central" if scenario in _DEFAULT_CENTRAL else "analytic"
    return ScenarioConfig(
        scenario=scenario,
        method=DerivativeMethod(mode),
        fixture=dict(_FIXTURE_DEFAULTS[scenario]),
        cloud=dict(_CLOUD_DEFAULTS[scenario]) if scenario in _CLOUD_DEFAULTS
        else None,
    )


def _require(cond: bool, message: str):
    if not cond:
        raise ConfigError(message)


def config_from_dict(doc: dict, scenario: Optional[str] = None) -> ScenarioConfig:
    """Validate a JSON config document against a scenario's schema."""
    _require(isinstance(doc, dict), "config document must be a JSON object")
    known = {"scenario", "constants", "method", "fixture", "cloud",
             "tolerances", "seed", "no_timestamp", "out", "format"}
    for key in doc:
        _require(key in known, f"unknown config key {key!r}")

    name = doc.get("scenario", scenario)
    _require(name is not None, "no scenario named")
    if scenario is not None and "scenario" in doc:
        _require(doc["scenario"] == scenario,
                 f"config is for scenario {doc['scenario']!r}, "
                 f"requested {scenario!r}")
    base = default_config(name)

    const_kwargs = {}
    for key, value in doc.get("constants", {}).items():
        _require(key in ("hbar", "c", "m", "q"),
                 f"unknown constant {key!r}")
        _require(isinstance(value, (int, float)) and math.isfinite(value),
                 f"constant {key} must be a finite number")
        const_kwargs[key] = float(value)
    try:
        constants = PhysicalConstants(**{**vars(base.constants), **const_kwargs})
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc

    mdoc = doc.get("method", {})
    _require(isinstance(mdoc, dict), "method must be an object")
    for key in mdoc:
        _require(key in ("mode", "h", "richardson"),
                 f"unknown method key {key!r}")
    try:
        method = DerivativeMethod(
            mdoc.get("mode", base.method.mode),
            float(mdoc.get("h", base.method.h)),
            bool(mdoc.get("richardson", base.method.richardson)),
        )
    except (ParameterError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad method: {exc}") from exc

    fixture = dict(base.fixture)
    fdoc = doc.get("fixture", {})
    _require(isinstance(fdoc, dict), "fixture must be an object")
    for key, value in fdoc.items():
        _require(key in fixture or (name == "dirac-coulomb-1s" and key == "energy"),
                 f"unknown fixture key {key!r} for scenario {name}")
        fixture[key] = value

    cloud = base.cloud
    if "cloud" in doc:
        cdoc = doc["cloud"]
        _require(isinstance(cdoc, dict) and "kind" in cdoc,
                 "cloud must be an object with a 'kind'")
        kind = cdoc["kind"]
        _require(kind in _CLOUD_KEYS, f"unknown cloud kind {kind!r}")
        required, optional = _CLOUD_KEYS[kind]
        for key in cdoc:
            _require(key == "kind" or key in required or key in optional,
                     f"unknown cloud key {key!r} for kind {kind!r}")
        for key in required:
            _require(key in cdoc, f"cloud kind {kind!r} needs {key!r}")
        cloud = dict(cdoc)

    tolerances = {}
    for key, value in doc.get("tolerances", {}).items():
        _require(key in _TOLERANCES[name],
                 f"unknown check {key!r} for scenario {name}")
        _require(isinstance(value, (int, float)) and value >= 0,
                 f"tolerance {key} must be a nonnegative number")
        tolerances[key] = float(value)

    seed = doc.get("seed", base.seed)
    _require(isinstance(seed, int) and 0 <= seed < 2 ** 64,
             "seed must be an unsigned 64-bit integer")

    fmt = doc.get("format", base.fmt)
    _require(fmt in ("json", "csv"), f"unknown format {fmt!r}")

    return ScenarioConfig(
        scenario=name, constants=constants, method=method, fixture=fixture,
        cloud=cloud, tolerances=tolerances, seed=seed,
        no_timestamp=bool(doc.get("no_timestamp", False)),
        out=doc.get("out"), fmt=fmt,
    )


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    linf: float
    l2: float
    tolerance: Optional[float]
    passed: bool
    count: int


@dataclass(frozen=True)
class ResidualReport:
    scenario: str
    config: dict
    checks: tuple
    rows: tuple
    passed: bool
    version: str
    timestamp: Optional[str]
    duration_s: Optional[float]


class _Collector:
    def __init__(self, scenario: str, mode: str, overrides: dict):
        self.scenario = scenario
        self.mode_index = 1 if mode == "central" else 0
        self.overrides = overrides
        self.rows = []
        self._order = []
        self._mags = {}

    def tolerance(self, check: str) -> Optional[float]:
        if check in self.overrides:
            return self.overrides[check]
        return _TOLERANCES[self.scenario][check][self.mode_index]

    def add(self, check: str, case: str, index: int, event: Event,
            magnitude: float):
        if check not in self._mags:
            self._mags[check] = []
            self._order.append(check)
        self._mags[check].append(float(magnitude))
        self.rows.append({
            "case": case, "check": check, "index": index,
            "x1": float(event.x1), "x2": float(event.x2),
            "x3": float(event.x3), "t": float(event.t),
            "magnitude": float(magnitude),
        })

    def finalize(self) -> tuple:
        checks = []
        for name in self._order:
            mags = self._mags[name]
            tol = self.tolerance(name)
            linf = max(mags) if mags else 0.0
            l2 = math.sqrt(sum(m * m for m in mags))
            passed = True if tol is None else linf <= tol
            checks.append(CheckResult(name, linf, l2, tol, passed, len(mags)))
        return tuple(checks)


_ORIGIN = Event(0.0, 0.0, 0.0, 0.0)


def _build_cloud(spec: dict, rng: np.random.Generator,
                 min_r: float = 0.0) -> list:
    kind = spec["kind"]
    if kind == "ray":
        rs = np.linspace(float(spec["r_min"]), float(spec["r_max"]),
                         int(spec["count"]))
        t = float(spec.get("t", 0.0))
        return [Event(float(r), 0.0, 0.0, t) for r in rs]
    if kind == "random-ball":
        center = np.asarray(spec.get("center", (0, 0, 0, 0)), dtype=float)
        radius = float(spec["radius"])
        count = int(spec["count"])
        events = []
        while len(events) < count:
            d = rng.normal(size=4)
            d /= np.linalg.norm(d)
            p = center + radius * rng.uniform() ** 0.25 * d
            ev = Event(*p)
            if min_r and ev.r < min_r:
                continue
            events.append(ev)
        return events
    if kind == "events":
        return [Event(float(p["x1"]), float(p["x2"]), float(p["x3"]),
                      float(p["t"])) for p in spec["events"]]
    raise ConfigError(f"unknown cloud kind {kind!r}")


def _eps_for(waves, events) -> float:
    """Near-zero threshold scaled to the largest |psi| over the cloud."""
    peak = 0.0
    for w in waves:
        for e in events:
            peak = max(peak, abs(complex(w(e))))
    return 1e-12 * peak if peak > 0 else DEFAULT_EPS_PSI


# ---------------------------------------------------------------------------
# scenario builders
# ---------------------------------------------------------------------------

def _scn_plane_wave(cfg: ScenarioConfig, rng, col: _Collector):
    a0 = zero_potential()
    kw = {"constants": cfg.constants}
    events = _build_cloud(cfg.cloud, rng)
    momenta = cfg.fixture["momenta"]
    waves = [plane_wave(p, cfg.constants) for p in momenta]
    eps = _eps_for(waves, events)
    for wave in waves:
        case = wave.label
        for i, e in enumerate(events):
            m = cfg.method
            col.add("kg", case, i, e,
                    abs(kg_residual(wave, a0, e, m, eps_psi=eps, **kw)))
            col.add("mass_shell", case, i, e,
                    abs(mass_shell_residual(wave, a0, e, m, eps_psi=eps, **kw)))
            col.add("newton", case, i, e, float(np.max(np.abs(
                newton_residual(wave, a0, e, m, eps_psi=eps, **kw)))))
            col.add("curl_k", case, i, e, float(np.max(np.abs(
                curl_k(wave, a0, e, m, eps_psi=eps, **kw)))))
            div = divergence_mu(wave, a0, e, m, eps_psi=eps, **kw)
            col.add("divergence", case, i, e, abs(div.value))
            col.add("nonlinear", case, i, e, abs(
                nonlinear_wave_residual(wave, a0, e, m, eps_psi=eps, **kw)))


def _scn_kg_coulomb(cfg: ScenarioConfig, rng, col: _Collector):
    za = float(cfg.fixture["z_alpha"])
    wave = kg_coulomb_1s(za, cfg.constants,
                         float(cfg.fixture["energy_scale"]))
    a = coulomb_potential(za, cfg.constants)
    events = _build_cloud(cfg.cloud, rng, min_r=0.25)
    eps = _eps_for([wave], events)
    m2 = cfg.constants.m ** 2
    case = wave.label
    meth = cfg.method
    kw = {"constants": cfg.constants, "eps_psi": eps}
    for i, e in enumerate(events):
        col.add("kg", case, i, e, abs(kg_residual(wave, a, e, meth, **kw)))
        div = divergence_mu(wave, a, e, meth, **kw)
        col.add("divergence_identity", case, i, e, div.mismatch)
        ms = mass_shell_residual(wave, a, e, meth, **kw)
        nl = nonlinear_wave_residual(wave, a, e, meth, **kw)
        col.add("nonlinear_vs_mass_shell", case, i, e, abs(nl - m2 * ms))
        k = curl_k(wave, a, e, meth, **kw)
        col.add("curl_k", case, i, e, float(np.max(np.abs(k))))
        u = extract_u(wave, a, e, meth, **kw)
        col.add("u_contract_k", case, i, e, float(np.max(np.abs(k @ u))))
        col.add("lorenz_gauge", case, i, e, abs(
            lorenz_gauge_residual(a, e, meth, c=cfg.constants.c)))
        col.add("mass_shell", case, i, e, abs(ms))
        col.add("newton", case, i, e, float(np.max(np.abs(
            newton_residual(wave, a, e, meth, **kw)))))


def _scn_dirac_plane_wave(cfg: ScenarioConfig, rng, col: _Collector):
    a0 = zero_potential()
    events = _build_cloud(cfg.cloud, rng)
    spin = cfg.fixture["spin"]
    meth = cfg.method
    kw = {"constants": cfg.constants}
    m_rel = form_relation_matrix(cfg.constants)
    for p in cfg.fixture["momenta"]:
        spinor = dirac_plane_wave(p, spin, cfg.constants)
        case = spinor.label
        nonzero = sum(1 for comp in spinor.components
                      if abs(comp(_ORIGIN)) > 1e-12)
        for i, e in enumerate(events):
            rg = dirac_residual(spinor, a0, e, meth, "gamma", **kw)
            ra = dirac_residual(spinor, a0, e, meth, "alphabeta", **kw)
            col.add("residual_gamma", case, i, e, float(np.max(np.abs(rg))))
            col.add("residual_alphabeta", case, i, e,
                    float(np.max(np.abs(ra))))
            col.add("form_equivalence", case, i, e,
                    float(np.max(np.abs(rg - m_rel @ ra))))
            if nonzero >= 2:
                _, dev = spinor_velocity_consistency(spinor, a0, e, meth, **kw)
                col.add("velocity_consistency", case, i, e, dev)
    for j in range(int(cfg.fixture["n_random_spinors"])):
        spinor = random_smooth_spinor(rng, cfg.constants)
        for i in range(3):
            e = Event(*rng.uniform(-0.5, 0.5, 4))
            sq = dirac_to_kg_check(spinor, a0, e, meth, **kw)
            direct = kg_operator_on_spinor(spinor, e, **kw)
            col.add("dirac_to_kg", f"random-spinor-{j}", i, e,
                    float(np.max(np.abs(sq - direct))))


def _scn_dirac_coulomb(cfg: ScenarioConfig, rng, col: _Collector):
    za = float(cfg.fixture["z_alpha"])
    consts = cfg.constants
    energy = cfg.fixture.get("energy")
    spinor = dirac_coulomb_1s(za, consts, energy)
    a = coulomb_potential(za, consts)
    events = _build_cloud(cfg.cloud, rng, min_r=0.25)
    meth = cfg.method
    case = spinor.label
    for i, e in enumerate(events):
        res = dirac_residual(spinor, a, e, meth, "gamma", constants=consts)
        col.add("residual_gamma", case, i, e, float(np.max(np.abs(res))))
        try:
            _, dev = spinor_velocity_consistency(spinor, a, e, meth,
                                                 constants=consts)
            col.add("velocity_deviation", case, i, e, dev)
        except InsufficientComponentsError:
            pass

    # independent oracle: residual norm over a coarse ray as a function of a
    # trial energy must bottom out at the bound-state eigenvalue
    mc2 = consts.m * consts.c ** 2
    scan_events = [Event(float(r), 0.0, 0.0, 0.0)
                   for r in np.linspace(0.5, 5.0, int(cfg.fixture["scan_points"]))]

    def scan_norm(e_trial: float) -> float:
        trial = dirac_coulomb_1s(za, consts, energy=e_trial)
        return max(float(np.max(np.abs(
            dirac_residual(trial, a, ev, constants=consts))))
            for ev in scan_events)

    lo = float(cfg.fixture["scan_lo"]) * mc2
    hi = float(cfg.fixture["scan_hi"]) * mc2
    found = minimize_scalar(scan_norm, bounds=(lo, hi), method="bounded",
                            options={"xatol": 1e-9})
    expected = math.sqrt(1.0 - za ** 2) * mc2
    col.add("energy_scan", case, 0, scan_events[0],
            abs(float(found.x) - expected) / mc2)


_DEG2_MONOMIALS = [
    (0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (1, 1, 0, 0),
    (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
]


def _scn_gauge_orbit(cfg: ScenarioConfig, rng, col: _Collector):
    consts = cfg.constants
    a0 = zero_potential()
    wave = plane_wave(cfg.fixture["p"], consts)
    spinor = dirac_plane_wave(cfg.fixture["p"], "up", consts)
    events = _build_cloud(cfg.cloud, rng)
    meth = cfg.method
    degree = int(cfg.fixture["degree"])
    _require(1 <= degree <= 2, "gauge orbit supports degree 1 or 2")
    monos = [m for m in _DEG2_MONOMIALS if sum(m) <= degree]
    for j in range(int(cfg.fixture["n_gauges"])):
        terms = {m: float(rng.uniform(-0.5, 0.5)) for m in monos}
        chi = polynomial_gauge(terms, consts.c)
        neg = polynomial_gauge({m: -v for m, v in terms.items()}, consts.c)
        a1, wave1 = gauge_transform(a0, wave, chi, consts)
        _, spinor1 = gauge_transform(a0, spinor, chi, consts)
        a2, wave2 = gauge_transform(a1, wave1, neg, consts)
        case = f"chi-{j}"
        for i, e in enumerate(events):
            u0 = extract_u(wave, a0, e, meth, constants=consts)
            u1 = extract_u(wave1, a1, e, meth, constants=consts)
            col.add("u_invariance", case, i, e,
                    float(np.max(np.abs(u1 - u0))))
            r0 = dirac_residual(spinor, a0, e, meth, constants=consts)
            r1 = dirac_residual(spinor1, a1, e, meth, constants=consts)
            col.add("dirac_invariance", case, i, e,
                    abs(float(np.max(np.abs(r1))) - float(np.max(np.abs(r0)))))
            f0 = field_strength(a0, e, meth, c=consts.c)
            f1 = field_strength(a1, e, meth, c=consts.c)
            col.add("field_strength_invariance", case, i, e,
                    float(np.max(np.abs(f1 - f0))))
            u2 = extract_u(wave2, a2, e, meth, constants=consts)
            col.add("roundtrip", case, i, e, float(np.max(np.abs(u2 - u0))))


def _scaled_gammas(scale: float) -> GammaSet:
    g = gamma_matrices()
    if scale == 1.0:
        return g
    gammas = (g.gammas[0] * scale,) + g.gammas[1:]
    return GammaSet(g.representation + "-perturbed", g.alphas, g.beta, gammas)


def _scn_clifford(cfg: ScenarioConfig, rng, col: _Collector):
    consts = cfg.constants
    g = _scaled_gammas(float(cfg.fixture["gamma_scale"]))
    col.add("clifford", "matrix-set", 0, _ORIGIN, clifford_residual(g))
    fixed = max(
        float(np.max(np.abs(g.gammas[3] - np.diag([1, 1, -1, -1])))),
        abs(g.gammas[0][0, 3] - (-1j)),
        abs(g.gammas[0][3, 0] - 1j),
    )
    col.add("fixed_entries", "matrix-set", 0, _ORIGIN, fixed)
    eye = np.eye(4, dtype=complex)
    for i in range(int(cfg.fixture["n_random_p"])):
        p = rng.normal(size=4) + 1j * rng.normal(size=4)
        gp = gamma_dot(g, p)
        square = float(np.max(np.abs(gp @ gp - complex(np.sum(p * p)) * eye)))
        col.add("gamma_square", "random-p", i, _ORIGIN, square)
        col.add("factorization", "random-p", i, _ORIGIN,
                factorization_residual(g, p, consts))


def _scn_action_path(cfg: ScenarioConfig, rng, col: _Collector):
    consts = cfg.constants
    meth = cfg.method
    a0 = zero_potential()
    wave = plane_wave(cfg.fixture["p"], consts)
    p = np.asarray(cfg.fixture["p"], dtype=float)

    start, end = _ORIGIN, Event(1.0, 0.0, 0.0, 0.0)
    res = action_integral(wave, a0, [start, end], meth, constants=consts)
    expected_phi = float(p[0])  # constant momentum dotted with the chord
    col.add("plane_phi", "straight", 0, end, abs(res.phi - expected_phi))
    col.add("plane_reconstruction", "straight", 0, end,
            res.reconstruction_error)

    loop = [Event(1, 0, 0, 0), Event(2, 1, 0, 0.2), Event(1, 2, 0, 0.4),
            Event(1, 0, 0, 0)]
    res_loop = action_integral(wave, a0, loop, meth, constants=consts)
    col.add("closed_loop", "loop", 0, loop[0], abs(res_loop.phi))

    za = float(cfg.fixture["z_alpha"])
    bound = kg_coulomb_1s(za, consts)
    ac = coulomb_potential(za, consts)
    path1 = [Event(1, 0, 0, 0), Event(3, 0, 0, 0)]
    path2 = [Event(1, 0, 0, 0), Event(1, 2, 0, 0), Event(3, 2, 0, 0),
             Event(3, 0, 0, 0)]
    r1 = action_integral(bound, ac, path1, meth, constants=consts)
    r2 = action_integral(bound, ac, path2, meth, constants=consts)
    col.add("two_path_delta", "bound-state", 0, path1[-1],
            abs(r1.phi - r2.phi))


def _scn_worldline(cfg: ScenarioConfig, rng, col: _Collector):
    consts = cfg.constants
    c = consts.c
    radius = float(cfg.fixture["radius"])
    ct0 = float(cfg.fixture["ct0"])
    circle = make_worldline("circle-x1x4", radius=radius, c=c)

    pts = pierce_points(circle, ct0 / c)
    col.add("circle_count", "circle", 0, circle.position(0.0),
            float(abs(len(pts) - 2)))
    expected_x1 = math.sqrt(max(radius ** 2 - ct0 ** 2, 0.0))
    for i, pt in enumerate(pts):
        col.add("circle_position", "circle", i, pt.event,
                abs(abs(pt.event.x1) - expected_x1))
        if pt.u is not None:
            col.add("timelike_onshell", "circle", i, pt.event,
                    abs(contract(pt.u, pt.u) + c ** 2))

    top = pierce_points(circle, radius / c)
    graze_ok = len(top) == 1 and top[0].tangent
    col.add("tangent_flag", "circle-graze", 0,
            top[0].event if top else circle.position(0.0),
            0.0 if graze_ok else 1.0)

    cls_ok = (classify_speed(circle, 0.0) == "timelike"
              and classify_speed(circle, math.pi / 2) == "spacelike")
    col.add("classification", "circle", 0, circle.position(0.0),
            0.0 if cls_ok else 1.0)

    line = make_worldline("line", v=cfg.fixture["line_v"], c=c)
    vmax = float(cfg.fixture["max_boost"]) * c
    speeds = np.linspace(-vmax, vmax, int(cfg.fixture["n_boosts"]))
    for i, v in enumerate(speeds):
        boosted = boost_worldline(line, float(v))
        bpts = pierce_points(boosted, 0.0)
        ev = bpts[0].event if bpts else boosted.position(0.0)
        col.add("line_boost_count", "boosted-line", i, ev,
                float(abs(len(bpts) - 1)))
        for pt in bpts:
            if pt.u is not None:
                col.add("timelike_onshell", "boosted-line", i, pt.event,
                        abs(contract(pt.u, pt.u) + c ** 2))


_SCENARIOS = {
    "plane-wave": _scn_plane_wave,
    "kg-coulomb-1s": _scn_kg_coulomb,
    "dirac-plane-wave": _scn_dirac_plane_wave,
    "dirac-coulomb-1s": _scn_dirac_coulomb,
    "gauge-orbit": _scn_gauge_orbit,
    "clifford": _scn_clifford,
    "action-path": _scn_action_path,
    "worldline-pierce": _scn_worldline,
}


def _config_echo(cfg: ScenarioConfig) -> dict:
    return {
        "scenario": cfg.scenario,
        "constants": {"hbar": cfg.constants.hbar, "c": cfg.constants.c,
                      "m": cfg.constants.m, "q": cfg.constants.q},
        "method": {"mode": cfg.method.mode, "h": cfg.method.h,
                   "richardson": cfg.method.richardson},
        "fixture": cfg.fixture,
        "cloud": cfg.cloud,
        "tolerances": cfg.tolerances,
        "seed": cfg.seed,
    }


def run_scenario(cfg: ScenarioConfig) -> ResidualReport:
    if cfg.scenario not in _SCENARIOS:
        raise ConfigError(f"unknown scenario {cfg.scenario!r}")
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    col = _Collector(cfg.scenario, cfg.method.mode, cfg.tolerances)
    _SCENARIOS[cfg.scenario](cfg, rng, col)
    checks = col.finalize()
    duration = time.perf_counter() - started
    return ResidualReport(
        scenario=cfg.scenario,
        config=_config_echo(cfg),
        checks=checks,
        rows=tuple(col.rows),
        passed=all(c.passed for c in checks),
        version=__version__,
        timestamp=None if cfg.no_timestamp else
        time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        duration_s=None if cfg.no_timestamp else duration,
    )


def report_to_json(report: ResidualReport) -> str:
    doc = {
        "schema": "fourvel-report/1",
        "scenario": report.scenario,
        "config": report.config,
        "checks": [
            {"name": c.name, "linf": c.linf, "l2": c.l2,
             "tolerance": c.tolerance, "passed": c.passed, "count": c.count}
            for c in report.checks
        ],
        "rows": list(report.rows),
        "passed": report.passed,
        "version": report.version,
    }
    if report.timestamp is not None:
        doc["timestamp"] = report.timestamp
        doc["duration_s"] = report.duration_s
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


_CSV_HEADER = ("case", "check", "index", "x1", "x2", "x3", "t", "magnitude")


def report_to_csv(report: ResidualReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_CSV_HEADER)
    for row in report.rows:
        writer.writerow([row["case"], row["check"], row["index"],
                         repr(row["x1"]), repr(row["x2"]), repr(row["x3"]),
                         repr(row["t"]), repr(row["magnitude"])])
    return buf.getvalue()


def export_report(report: ResidualReport, fmt: str = "json") -> str:
    if fmt == "json":
        return report_to_json(report)
    if fmt == "csv":
        return report_to_csv(report)
    raise ConfigError(f"unknown format {fmt!r}")
