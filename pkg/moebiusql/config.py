import json
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Literal, Optional
from moebiusql.arith.cache import CACHE_DIR_ENV, CACHE_DIR_PATH
from moebiusql.arith.sieve import DEFAULT_SEGMENT_SIZE
from moebiusql.utils.errors import ConfigError

CommandType = Literal[
    "sieve", "corr", "spectrum", "mirsky", "affinity", "flatness",
    "davenport", "entropy", "simulate", "concentration", "report",
]
COMMANDS: tuple[CommandType, ...] = (
    "sieve", "corr", "spectrum", "mirsky", "affinity", "flatness",
    "davenport", "entropy", "simulate", "concentration", "report",
)
SuiteType = Literal["acceptance", "quick"]
FormatType = Literal["csv", "json"]
CRITERIA_COUNT = 12


@dataclass(frozen=True)
class Tolerances:
    slack: float = 0.05
    "finite-n slack of the affinity inequalities"

    mc_sigmas: float = 3.0
    "Monte-Carlo slack in standard deviations"

    mirsky: float = 5e-3
    "largest gap between mu^2 correlations and Mirsky coefficients"

    density: float = 1e-3
    "squarefree density against 6/pi^2"

    identity: float = 1e-14
    "Euler product identity"

    spectrum: float = 1e-3
    "mu^2 spectrum Fourier coefficients and mass"

    elliott: float = 5e-3
    "largest |c_N(h)| for h >= 1"

    affinity: float = 1e-9
    "closed-form affinity cases"

    entropy_rate: float = 0.03
    "log r(m)/m of zero-entropy systems"

    entropy_relative: float = 0.02
    "relative error of the full-shift slope against log 2"

    decay_window: tuple[float, float] = (-0.62, -0.38)
    "accepted mean decay slope"

    orthogonality: float = 0.02
    "deterministic Moebius sums at the largest N"

    oracle: float = 1e-10
    "FFT against direct autocorrelation"


@dataclass
class RunConfig:
    command: CommandType = "report"
    "experiment to run"

    n_max: int = 10**6
    "sieve size and sample length N"

    k_max: int = 16
    "largest lag"

    grid: Optional[int] = None
    "circle grid size, a power of two; chosen from n when unset"

    prime_cutoff: int = 10**6
    "P of the truncated Euler products"

    d_max: int = 1000
    "largest d of the mu^2 spectrum"

    seeds: list[int] = field(default_factory=lambda: list(range(50)))
    "seeds of the random Moebius experiments"

    n_grid: list[int] = field(default_factory=lambda: [2**e for e in range(10, 23)])
    "sample sizes of the decay fit"

    m_list: list[int] = field(default_factory=lambda: [8, 16, 32, 64, 128, 256])
    "block lengths of the entropy scan"

    t_list: list[float] = field(default_factory=lambda: [1.0, 2.0, 3.0])
    "tail thresholds in units of sqrt(sum c_j^2)"

    m: int = 1000
    "block length of the concentration experiments"

    trials: int = 10**5
    "Monte-Carlo trials"

    delta: float = 0.1
    "deviation of the union-bound experiment"

    system: str = "thue_morse"
    "sequence generator spec, see SequenceGenerator.parse"

    pair: Optional[str] = None
    "second generator of the affinity command"

    sequence: str = "mu2"
    "sequence of the corr command: mu, mu2 or a generator"

    epsilon: Optional[float] = None
    "metric resolution of the entropy scan"

    martingale: bool = False
    "use predictable increments in the concentration command"

    suite: SuiteType = "quick"
    "criteria set of the report command"

    criteria: Optional[list[int]] = None
    "criterion numbers the report command runs, all when unset"

    tolerances: Tolerances = field(default_factory=Tolerances)

    out_dir: str = "."
    out_name: Optional[str] = None
    "stem of the run's first data file, the artifact name when unset"

    cache_dir: Optional[str] = None
    use_cache: bool = True
    format: FormatType = "csv"
    workers: int = 1
    segment_size: int = DEFAULT_SEGMENT_SIZE

    @staticmethod
    def from_file(file_path: str) -> "RunConfig":
        "loads a JSON config file; keys are RunConfig field names"
        try:
            data = json.loads(Path(file_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError(f"cannot read config {file_path}: {error}") from error
        if not isinstance(data, dict):
            raise ConfigError(f"config {file_path} must hold a JSON object")
        return RunConfig().merged(data)

    def merged(self, overrides: dict[str, Any]) -> "RunConfig":
        "copy with the non-None overrides applied; tolerances merge key by key"
        known = {f.name for f in fields(RunConfig)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values = {key: value for key, value in overrides.items() if value is not None}
        if "tolerances" in values and isinstance(values["tolerances"], dict):
            tolerance_names = {f.name for f in fields(Tolerances)}
            bad = set(values["tolerances"]) - tolerance_names
            if bad:
                raise ConfigError(f"unknown tolerances: {', '.join(sorted(bad))}")
            tolerances = dict(values["tolerances"])
            if "decay_window" in tolerances:
                tolerances["decay_window"] = tuple(tolerances["decay_window"])
            values["tolerances"] = replace(self.tolerances, **tolerances)
        return replace(self, **values)

    @property
    def resolved_cache_dir(self) -> str:
        "flag or config value, then the MOEBIUSQL_CACHE_DIR variable, then the temp directory"
        return self.cache_dir or os.environ.get(CACHE_DIR_ENV) or CACHE_DIR_PATH

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.suite not in ("acceptance", "quick"):
            raise ConfigError(f"suite must be acceptance or quick, got {self.suite!r}")
        positive = {
            "n_max": self.n_max, "prime_cutoff": self.prime_cutoff, "d_max": self.d_max,
            "m": self.m, "trials": self.trials, "workers": self.workers, "segment_size": self.segment_size,
        }
        for name, value in positive.items():
            if value < 1:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.k_max < 0:
            raise ConfigError(f"k_max must be nonnegative, got {self.k_max}")
        if self.grid is not None and (self.grid < 1 or self.grid & (self.grid - 1)):
            raise ConfigError(f"grid must be a power of two, got {self.grid}")
        if self.criteria is not None and any(not 1 <= number <= CRITERIA_COUNT for number in self.criteria):
            raise ConfigError(f"criteria must lie in 1..{CRITERIA_COUNT}, got {self.criteria}")
        if self.delta <= 0:
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.epsilon is not None and not 0 < self.epsilon <= 1:
            raise ConfigError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if any(n < 1 for n in self.n_grid) or any(m < 1 for m in self.m_list) or any(t < 0 for t in self.t_list):
            raise ConfigError("n_grid and m_list need positive entries, t_list nonnegative ones")
        if self.out_name is not None and (not self.out_name or Path(self.out_name).name != self.out_name):
            raise ConfigError(f"out_name must be a bare file stem, got {self.out_name!r}")
        out_dir = Path(self.out_dir)
        target = out_dir if out_dir.exists() else out_dir.parent
        if target.exists() and not os.access(target, os.W_OK):
            raise ConfigError(f"output directory {self.out_dir} is not writable")
        return self

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)
