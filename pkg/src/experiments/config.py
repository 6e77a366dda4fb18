"""
Experiment configuration: YAML file -> validated dataclasses.

Defaults follow the parameter ranges of the analysis (D = 50 um^2/s,
d, r_r in {2, 4} um, h in {1, 2} um, Q1 in 100..1000, pi1 = 0.5,
t_s in 0.05..1 s, sigma_n^2 = 100) at desk scale; `paper_scale` switches
to 5e5 bits x 20 replications per BER point and 500 channel replications.
See docs/config_schema.md.
"""
from dataclasses import dataclass, field, fields, asdict, replace
from pathlib import Path
import yaml
from ..channel.model import ChannelModelParams, REFERENCE_PAIR_PARAMS, REFERENCE_CROSS_PARAMS
from ..detection.bank import DETECTORS
from ..link.config import TxConfig, NoiseConfig
from ..particles.topology import Topology, SimConfig
from ..utils.errors import ConfigError, DomainError, OutputError
from ..utils.io import config_hash

PAPER_SCALE = {"n_bits": 500_000, "ber_replications": 20, "molecules": 5000, "channel_replications": 500}
DESK_DEFAULTS = {"sim": {"replications": 50}}


@dataclass
class ChannelSection:
    pair: tuple = REFERENCE_PAIR_PARAMS.as_tuple()
    cross: tuple = REFERENCE_CROSS_PARAMS.as_tuple()

    def params(self, topology: Topology) -> tuple[ChannelModelParams, ChannelModelParams]:
        return (ChannelModelParams(*self.pair, "pair", topology),
                ChannelModelParams(*self.cross, "cross", topology))


@dataclass
class LinkSection:
    q1_values: list = field(default_factory=lambda: [300, 500, 700, 900])
    ts_values: list = field(default_factory=lambda: [0.08])
    pi1: float = 0.5
    sigma_n: float = 10.0
    K: int = 4
    n_bits: int = 50_000
    replications: int = 5
    eta_f: float = 0.2
    genie_calibration_bits: int = 20_000

    def tx(self, Q1, t_s) -> TxConfig:
        return TxConfig(Q1=int(Q1), pi1=self.pi1, t_s=float(t_s), n_bits=self.n_bits)

    def noise(self) -> NoiseConfig:
        return NoiseConfig(self.sigma_n)


@dataclass
class SweepSection:
    d_values: list = field(default_factory=lambda: [2.0, 4.0])
    r_r_values: list = field(default_factory=lambda: [2.0, 4.0])
    h_values: list = field(default_factory=lambda: [1.0, 2.0])
    sir_ts_values: list = field(default_factory=lambda: [round(0.05 * k, 2) for k in range(1, 21)])
    K_values: list = field(default_factory=lambda: list(range(2, 9)))


@dataclass
class ProtocolSection:
    text: str = "YONSEI"
    detector: str = "zf_in"
    s_ili_probes: int = 10_000


@dataclass
class ExperimentConfig:
    topology: Topology = field(default_factory=Topology)
    sim: SimConfig = field(default_factory=lambda: SimConfig(replications=50))
    channel: ChannelSection = field(default_factory=ChannelSection)
    link: LinkSection = field(default_factory=LinkSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    protocol: ProtocolSection = field(default_factory=ProtocolSection)
    detectors: list = field(default_factory=lambda: list(DETECTORS))
    output_dir: str = "outputs"
    seed: int = 0
    jobs: int = 1
    paper_scale: bool = False

    def to_dict(self) -> dict:
        return _plain(asdict(self))

    def hash(self) -> str:
        return config_hash(self.to_dict())

    def header(self) -> dict:
        return {"config_sha256": self.hash(), "seed": self.seed}

    def scaled(self) -> "ExperimentConfig":
        """Apply paper-scale sizes when requested."""
        if not self.paper_scale:
            return self
        link = replace(self.link, n_bits=PAPER_SCALE["n_bits"], replications=PAPER_SCALE["ber_replications"])
        sim = replace(self.sim, molecules_per_emission=PAPER_SCALE["molecules"],
                      replications=PAPER_SCALE["channel_replications"])
        return replace(self, link=link, sim=sim)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


_SECTIONS = {"topology": Topology, "sim": SimConfig, "channel": ChannelSection, "link": LinkSection,
             "sweep": SweepSection, "protocol": ProtocolSection}


def _build(cls, raw, name, problems):
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        problems.append(f"{name}: expected a mapping")
        return cls()
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        problems.append(f"{name}: unknown keys {unknown}")
    kwargs = {**DESK_DEFAULTS.get(name, {}), **{k: v for k, v in raw.items() if k in known}}
    try:
        if cls is ChannelSection:
            kwargs = {k: tuple(float(b) for b in v) for k, v in kwargs.items()}
        return cls(**kwargs)
    except (DomainError, TypeError, ValueError) as exc:
        problems.append(f"{name}: {exc}")
        return cls()


def _check_link(link: LinkSection, problems):
    for q in link.q1_values:
        if not (isinstance(q, int) and q >= 1):
            problems.append(f"link.q1_values: {q!r} is not a positive integer")
    for t in link.ts_values:
        if not t > 0:
            problems.append(f"link.ts_values: {t!r} must be > 0")
    if not 0 <= link.pi1 <= 1: problems.append("link.pi1 must lie in [0, 1]")
    if not link.sigma_n >= 0: problems.append("link.sigma_n must be >= 0")
    if not (isinstance(link.K, int) and link.K >= 0): problems.append("link.K must be an integer >= 0")
    if link.n_bits < 1: problems.append("link.n_bits must be >= 1")
    if link.replications < 1: problems.append("link.replications must be >= 1")
    if not 0 < link.eta_f < 1: problems.append("link.eta_f must lie in (0, 1)")


def from_dict(raw: dict) -> ExperimentConfig:
    raw = dict(raw or {})
    problems = []
    top = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(raw) - top)
    if unknown:
        problems.append(f"unknown top-level keys {unknown}")
    sections = {name: _build(cls, raw.get(name), name, problems) for name, cls in _SECTIONS.items()}
    try:
        _check_link(sections["link"], problems)
    except TypeError as exc:
        problems.append(f"link: {exc}")
    for name, pair in (("channel.pair", sections["channel"].pair), ("channel.cross", sections["channel"].cross)):
        if len(pair) != 3 or not all(b > 0 for b in pair):
            problems.append(f"{name}: need three positive coefficients")
    detectors = list(raw.get("detectors", DETECTORS))
    bad = [d for d in detectors if d not in DETECTORS]
    if bad:
        problems.append(f"detectors: unknown {bad}; choose from {list(DETECTORS)}")
    if sections["protocol"].detector not in DETECTORS:
        problems.append(f"protocol.detector: unknown {sections['protocol'].detector!r}")
    jobs = raw.get("jobs", 1)
    if not (isinstance(jobs, int) and jobs >= 1):
        problems.append("jobs must be an integer >= 1")
    if problems:
        raise ConfigError(problems)
    cfg = ExperimentConfig(detectors=detectors, output_dir=str(raw.get("output_dir", "outputs")),
                           seed=int(raw.get("seed", 0)), jobs=jobs,
                           paper_scale=bool(raw.get("paper_scale", False)), **sections)
    return cfg


def load_config(path=None) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise OutputError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return from_dict(raw)


def apply_cli_overrides(cfg: ExperimentConfig, seed=None, jobs=None, out=None, paper_scale=False) -> ExperimentConfig:
    if seed is not None:
        cfg = replace(cfg, seed=int(seed))
    if jobs is not None:
        if jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        cfg = replace(cfg, jobs=int(jobs))
    if out is not None:
        cfg = replace(cfg, output_dir=str(out))
    if paper_scale:
        cfg = replace(cfg, paper_scale=True)
    return cfg


def write_config(cfg: ExperimentConfig, path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(cfg.to_dict(), sort_keys=False))
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    return path
