"""Scenario configuration, figure presets, runs and CSV output.

User-facing units: times in tau = 1e-10 s, energies and frequencies in 1/tau
(hbar = 1), temperatures in kelvin.
"""

import dataclasses
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import yaml
from scipy import constants

from .bath import TOPOLOGIES, BathParams
from .measures import OptimizerSettings, quantum_discord
from .model import ModelParams
from .qcore import ket, project_to_physical, projector
from .redfield import IntegratorConfig, evolve

TAU = 1e-10
DELTA = math.pi / 2
OMEGA_C = 200.0
PICTURES = ("schrodinger", "interaction")
CSV_COLUMNS = ("t", "eof", "discord", "mutual_info", "classical_corr", "concurrence",
               "trace_error", "min_eigenvalue", "purity")

NAMED_STATES = {
    "up_down": projector(ket("ud")),
    "bell_psi_plus": projector((ket("ud") + ket("du")) / math.sqrt(2)),
}


class ConfigError(ValueError):
    pass


def kelvin_to_beta(temperature):
    """Inverse temperature hbar / (k_B T tau) in units of tau."""
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    return constants.hbar / (constants.k * temperature * TAU)


@dataclass(frozen=True)
class BathSpec:
    eta: float
    omega_c: float = OMEGA_C
    beta: Optional[float] = None
    temperature_kelvin: Optional[float] = None

    def __post_init__(self):
        if (self.beta is None) == (self.temperature_kelvin is None):
            raise ConfigError("give exactly one of bath.beta or bath.temperature_kelvin")
        try:
            self.params("common")
        except ValueError as exc:
            raise ConfigError(f"bath: {exc}") from None

    @property
    def resolved_beta(self):
        return self.beta if self.beta is not None else kelvin_to_beta(self.temperature_kelvin)

    def params(self, topology):
        return BathParams(self.eta, self.omega_c, self.resolved_beta, topology)


@dataclass(frozen=True)
class MeasuresConfig:
    picture: str = "schrodinger"
    grid_size: int = 64
    n_starts: int = 3
    xatol: float = 1e-6
    measured: str = "B"

    def __post_init__(self):
        if self.picture not in PICTURES:
            raise ConfigError(f"measures.picture must be one of {PICTURES}")
        if self.measured not in ("A", "B"):
            raise ConfigError("measures.measured must be 'A' or 'B'")

    def optimizer(self):
        return OptimizerSettings(grid_size=self.grid_size, n_starts=self.n_starts,
                                 xatol=self.xatol, measured=self.measured)


@dataclass(frozen=True)
class OutputConfig:
    path: Optional[str] = None
    stride: int = 4

    def __post_init__(self):
        if self.stride < 1:
            raise ConfigError("output.stride must be >= 1")


# initial_state is a named state or a 4x4 tuple of complex entries
InitialState = Union[str, tuple]


@dataclass(frozen=True)
class ScenarioConfig:
    model: ModelParams
    bath: BathSpec
    integrator: IntegratorConfig
    topology: str = "common"
    initial_state: InitialState = "up_down"
    measures: MeasuresConfig = field(default_factory=MeasuresConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    name: Optional[str] = None

    def __post_init__(self):
        if self.topology not in TOPOLOGIES:
            raise ConfigError(f"topology must be one of {TOPOLOGIES}")
        if isinstance(self.initial_state, str) and self.initial_state not in NAMED_STATES:
            raise ConfigError(f"unknown initial state {self.initial_state!r}; "
                              f"expected one of {list(NAMED_STATES)} or a 4x4 matrix")

    def bath_params(self):
        return self.bath.params(self.topology)

    def initial_matrix(self):
        if isinstance(self.initial_state, str):
            return NAMED_STATES[self.initial_state].copy()
        return np.array(self.initial_state, dtype=complex)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


_SECTIONS = {
    "model": ModelParams,
    "bath": BathSpec,
    "integrator": IntegratorConfig,
    "measures": MeasuresConfig,
    "output": OutputConfig,
}


def _build(cls, data, section):
    if not isinstance(data, dict):
        raise ConfigError(f"section {section!r} must be a mapping")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown keys in {section!r}: {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"section {section!r}: {exc}") from None


def _parse_matrix(value):
    try:
        rows = [[complex(*e) if isinstance(e, (list, tuple)) else complex(e) for e in row]
                for row in value]
    except (TypeError, ValueError):
        raise ConfigError("initial_state matrix entries must be numbers or [re, im] pairs")
    m = np.array(rows, dtype=complex)
    if m.shape != (4, 4):
        raise ConfigError(f"initial_state matrix must be 4x4, got {m.shape}")
    if np.abs(m - m.conj().T).max() > 1e-10 or abs(np.trace(m) - 1) > 1e-8:
        raise ConfigError("initial_state matrix must be Hermitian with unit trace")
    if np.linalg.eigvalsh(m)[0] < -1e-12:
        raise ConfigError("initial_state matrix must be positive semidefinite")
    return tuple(tuple(complex(x) for x in row) for row in m)


def config_from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping")
    allowed = set(_SECTIONS) | {"topology", "initial_state", "name"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    for required in ("model", "bath", "integrator"):
        if required not in data:
            raise ConfigError(f"missing section {required!r}")
    kwargs = {k: _build(cls, data[k], k) for k, cls in _SECTIONS.items() if k in data}
    if "topology" in data:
        kwargs["topology"] = data["topology"]
    if "name" in data:
        kwargs["name"] = data["name"]
    if "initial_state" in data:
        init = data["initial_state"]
        kwargs["initial_state"] = init if isinstance(init, str) else _parse_matrix(init)
    try:
        return ScenarioConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def config_to_dict(cfg):
    out = {}
    if cfg.name is not None:
        out["name"] = cfg.name
    for key in _SECTIONS:
        out[key] = dataclasses.asdict(getattr(cfg, key))
    out["topology"] = cfg.topology
    if isinstance(cfg.initial_state, str):
        out["initial_state"] = cfg.initial_state
    else:
        out["initial_state"] = [[[z.real, z.imag] for z in row] for row in cfg.initial_state]
    return out


def load_config(path):
    with open(path) as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
    return config_from_dict(data)


def dump_config(cfg):
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)


# --- presets ----------------------------------------------------------------

_J_SWEEP = {"a": DELTA / 8, "b": DELTA / 4, "c": DELTA / 2,
            "d": 4 * DELTA, "e": 8 * DELTA, "f": 16 * DELTA}
_TEMPS = {"a": 0.1, "b": 0.5, "c": 2.0}


def _preset(name, j, eta, temperature, topology="common", initial="up_down", t_final=20.0):
    return ScenarioConfig(
        name=name,
        model=ModelParams(DELTA, j),
        bath=BathSpec(eta=eta, omega_c=OMEGA_C, temperature_kelvin=temperature),
        integrator=IntegratorConfig(t_final=t_final),
        topology=topology,
        initial_state=initial,
    )


def _build_presets():
    presets = {}
    for letter, j in _J_SWEEP.items():
        presets[f"fig1{letter}"] = _preset(f"fig1{letter}", j, 0.0, 0.1)
    families = {"fig2": (4 * DELTA, 1 / 600), "fig3": (4 * DELTA, 1 / 200),
                "fig4": (DELTA / 4, 1 / 600), "fig5": (DELTA / 4, 1 / 200)}
    for fam, (j, eta) in families.items():
        for letter, temp in _TEMPS.items():
            presets[f"{fam}{letter}"] = _preset(f"{fam}{letter}", j, eta, temp)
    for topo in TOPOLOGIES:
        presets[f"fig6_{topo}"] = _preset(f"fig6_{topo}", 0.0, 1 / 600, 0.1, topo,
                                          "bell_psi_plus", 50.0)
    presets["fig7_loglinear"] = _preset("fig7_loglinear", 0.0, 1 / 600, 0.1, "common",
                                        "bell_psi_plus", 50.0)
    return presets


PRESETS = _build_presets()

PRESET_NOTES = {
    "fig1": "unitary dynamics (eta = 0), J = D/8, D/4, D/2, 4D, 8D, 16D",
    "fig2": "J = 4D, eta = 1/600, T = 0.1, 0.5, 2 K",
    "fig3": "J = 4D, eta = 1/200, T = 0.1, 0.5, 2 K",
    "fig4": "J = D/4, eta = 1/600, T = 0.1, 0.5, 2 K",
    "fig5": "J = D/4, eta = 1/200, T = 0.1, 0.5, 2 K",
    "fig6": "J = 0, Bell state, T = 0.1 K, eta = 1/600, common vs independent baths",
    "fig7": "J = 0, common bath, log-scale EoF and discord",
}


def figure_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; see list_presets()") from None


def list_presets():
    return list(PRESETS)


# --- running ----------------------------------------------------------------

@dataclass(frozen=True)
class OutputRow:
    t: float
    eof: float
    discord: float
    mutual_info: float
    classical_corr: float
    concurrence: float
    trace_error: float
    min_eigenvalue: float
    purity: float

    def values(self):
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


@dataclass(frozen=True)
class Summary:
    final_eof: float
    final_discord: float
    first_eof_max_time: Optional[float]
    discord_plateau: float


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    rows: list
    summary: Summary
    trajectory: object = None

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows])


def first_maximum_time(t, y):
    """Time of the first maximum of the envelope of an oscillating curve.

    Local maxima of ``y`` are collected; the first one that is not exceeded by
    its neighbouring maxima is returned. When the neighbouring maxima are evenly
    spaced (a fast oscillation riding on a slow envelope) the envelope peak is
    refined with a parabola through the three maxima.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    idx = np.flatnonzero((y[1:-1] >= y[:-2]) & (y[1:-1] > y[2:])) + 1
    if idx.size == 0:
        return None
    if idx.size > 2:
        # merge split maxima closer than half the typical spacing, keeping the highest
        gap = 0.5 * np.median(np.diff(t[idx]))
        clusters = np.split(idx, np.flatnonzero(np.diff(t[idx]) >= gap) + 1)
        idx = np.array([c[np.argmax(y[c])] for c in clusters])
    pk = y[idx]
    for i in range(len(idx)):
        left = i == 0 or pk[i] >= pk[i - 1]
        right = i == len(idx) - 1 or pk[i] >= pk[i + 1]
        if left and right:
            break
    if 0 < i < len(idx) - 1:
        t0, t1, t2 = t[idx[i - 1:i + 2]]
        h1, h2 = t1 - t0, t2 - t1
        if 0.7 < h2 / h1 < 1.4:
            y0, y1, y2 = pk[i - 1:i + 2]
            denom = y0 - 2 * y1 + y2
            if denom < 0:
                h = 0.5 * (h1 + h2)
                return float(t1 + 0.5 * h * (y0 - y2) / denom)
    return float(t[idx[i]])


def discord_plateau(values):
    values = np.asarray(values, dtype=float)
    n = max(1, int(math.ceil(0.1 * len(values))))
    return float(values[-n:].mean())


def iter_rows(cfg, trajectory):
    opt = cfg.measures.optimizer()
    states = trajectory.states(cfg.measures.picture)
    tol = cfg.integrator.positivity_tol
    for k in range(0, len(trajectory), cfg.output.stride):
        t = float(trajectory.t[k])
        rho = project_to_physical(states[k], tol, time=t)
        rep = quantum_discord(rho, opt)
        yield OutputRow(t=t, eof=rep.eof, discord=rep.discord, mutual_info=rep.mutual_info,
                        classical_corr=rep.classical_corr, concurrence=rep.concurrence,
                        trace_error=float(trajectory.trace_error[k]),
                        min_eigenvalue=float(trajectory.min_eigenvalue[k]),
                        purity=float(trajectory.purity[k]))


def run_scenario(cfg):
    trajectory = evolve(cfg.initial_matrix(), cfg.model, cfg.bath_params(), cfg.integrator)
    rows = list(iter_rows(cfg, trajectory))
    t = np.array([r.t for r in rows])
    eof = np.array([r.eof for r in rows])
    summary = Summary(
        final_eof=rows[-1].eof,
        final_discord=rows[-1].discord,
        first_eof_max_time=first_maximum_time(t, eof),
        discord_plateau=discord_plateau([r.discord for r in rows]),
    )
    return ScenarioResult(cfg, rows, summary, trajectory)


def run_many(configs, workers=1):
    """Run independent scenarios, optionally in worker processes."""
    if workers <= 1:
        return [run_scenario(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run_scenario, configs))
    for r in results:
        r.trajectory = None
    return results


def format_csv(result):
    buf = io.StringIO()
    write_csv(result, buf)
    return buf.getvalue()


def write_csv(result, dest):
    """CSV with the resolved configuration as leading '#' comment lines."""
    if isinstance(dest, str):
        with open(dest, "w", newline="") as fh:
            return write_csv(result, fh)
    cfg = result.config
    dest.write("# dqdcorr scenario\n")
    dest.write(f"# resolved_beta: {cfg.bath.resolved_beta!r}\n")
    for line in dump_config(cfg).splitlines():
        dest.write(f"# {line}\n")
    dest.write(",".join(CSV_COLUMNS) + "\n")
    for row in result.rows:
        dest.write(",".join(format(v, ".9g") for v in row.values()) + "\n")


def read_csv(path):
    """Parse a CSV written by :func:`write_csv` into a structured array."""
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return np.genfromtxt(lines, delimiter=",", names=True)
