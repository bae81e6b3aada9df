import dataclasses
import logging
from collections import Counter
from pathlib import Path
from typing import Callable, Optional, Sequence
from plotly import graph_objects as go
from moebiusql.artifacts.artifact import Artifact, ArtifactFormat
from moebiusql.artifacts.exporters import export_artifact, export_run_meta
from moebiusql.config import RunConfig, SuiteType
from moebiusql.spectral.mirsky import mirsky_truncation_bound
from moebiusql.transaction import Transaction, TransactionContext
from moebiusql.transactions.acceptance import AcceptanceSuite
from moebiusql.transactions.arithmetic import SieveSummary
from moebiusql.transactions.entropy import EntropyScan
from moebiusql.transactions.measures import AffinityCheck
from moebiusql.transactions.random_model import ConcentrationCheck, DecaySimulation, UnionBound
from moebiusql.transactions.spectral import Correlations, DavenportScan, FlatnessScan, MirskyCorrelations, Spectrum
from moebiusql.utils.plot import add_plot
from moebiusql.version import __version__

logger = logging.getLogger(__name__)

MIN_SCAN_SIZE = 10**3


def decades(n_max: int, start: int = MIN_SCAN_SIZE) -> list[int]:
    "start, 10 start, ... below n_max, then n_max"
    values = []
    n = start
    while n < n_max:
        values.append(n)
        n *= 10
    return values + [n_max]


class MoebiusQL:
    """Fluent front end: queue experiments, generate them on one shared sieve, write or show the results.

    Parameters left as None fall back to the RunConfig.
    """

    def __init__(self, config: Optional[RunConfig] = None) -> None:
        self.config = config or RunConfig()
        self._ctx = TransactionContext(self.config)
        self.written: list[Path] = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end()

    def end(self):
        "drops pending transactions, results and the sieve table"
        self._ctx = TransactionContext(self.config)
        return self

    def addTransaction(self, toTransaction: Callable[["MoebiusQL"], Transaction]):
        self._ctx.add_transaction(toTransaction(self))
        return self

    def sieve(self, n_max: Optional[int] = None, x_list: Optional[Sequence[int]] = None):
        self._ctx.add_transaction(SieveSummary(n_max or self.config.n_max, x_list))
        return self

    def correlations(self, sequence: Optional[str] = None, n: Optional[int] = None, k_max: Optional[int] = None):
        k_max = self.config.k_max if k_max is None else k_max
        self._ctx.add_transaction(Correlations(sequence or self.config.sequence, n or self.config.n_max, k_max))
        return self

    def mirsky(self, n: Optional[int] = None, k_max: Optional[int] = None, prime_cutoff: Optional[int] = None):
        k_max = self.config.k_max if k_max is None else k_max
        self._ctx.add_transaction(
            MirskyCorrelations(n or self.config.n_max, k_max, prime_cutoff or self.config.prime_cutoff)
        )
        return self

    def spectrum(
        self,
        n: Optional[int] = None,
        grid_size: Optional[int] = None,
        d_max: Optional[int] = None,
        prime_cutoff: Optional[int] = None,
    ):
        self._ctx.add_transaction(Spectrum(
            n or self.config.n_max,
            grid_size or self.config.grid,
            d_max or self.config.d_max,
            prime_cutoff or self.config.prime_cutoff,
        ))
        return self

    def affinity(
        self,
        g: Optional[str] = None,
        h: Optional[str] = None,
        n_list: Optional[Sequence[int]] = None,
        slack: Optional[float] = None,
    ):
        "Bellow-Losert check of g against h; h defaults to the config pair, then to mu"
        self._ctx.add_transaction(AffinityCheck(
            g or self.config.system,
            h or self.config.pair or "mu",
            n_list or decades(self.config.n_max),
            self.config.tolerances.slack if slack is None else slack,
        ))
        return self

    def flatness(self, n_list: Optional[Sequence[int]] = None):
        self._ctx.add_transaction(FlatnessScan(n_list or decades(self.config.n_max)))
        return self

    def davenport(self, x_list: Optional[Sequence[int]] = None):
        self._ctx.add_transaction(DavenportScan(x_list or decades(self.config.n_max)))
        return self

    def entropy(
        self,
        system: Optional[str] = None,
        N: Optional[int] = None,
        m_list: Optional[Sequence[int]] = None,
        epsilon: Optional[float] = None,
    ):
        self._ctx.add_transaction(EntropyScan(
            system or self.config.system,
            N or self.config.n_max,
            m_list or self.config.m_list,
            self.config.epsilon if epsilon is None else epsilon,
        ))
        return self

    def simulate(self, system: Optional[str] = None, seeds: Optional[Sequence[int]] = None, n_grid: Optional[Sequence[int]] = None):
        self._ctx.add_transaction(DecaySimulation(
            system or self.config.system,
            seeds or self.config.seeds,
            n_grid or self.config.n_grid,
        ))
        return self

    def unionBound(
        self,
        system: Optional[str] = None,
        m: Optional[int] = None,
        delta: Optional[float] = None,
        seeds: Optional[Sequence[int]] = None,
    ):
        self._ctx.add_transaction(UnionBound(
            system or self.config.system,
            1,
            m or self.config.m,
            delta or self.config.delta,
            seeds or self.config.seeds,
            self.config.tolerances.mc_sigmas,
        ))
        return self

    def concentration(
        self,
        m: Optional[int] = None,
        t_list: Optional[Sequence[float]] = None,
        trials: Optional[int] = None,
        martingale: Optional[bool] = None,
    ):
        "t_list in units of sqrt(m)"
        self._ctx.add_transaction(ConcentrationCheck(
            m or self.config.m,
            t_list or self.config.t_list,
            trials or self.config.trials,
            min(self.config.seeds, default=0),
            self.config.martingale if martingale is None else martingale,
            self.config.tolerances.mc_sigmas,
        ))
        return self

    def acceptance(self, suite: Optional[SuiteType] = None, criteria: Optional[Sequence[int]] = None):
        self._ctx.add_transaction(AcceptanceSuite(suite or self.config.suite, criteria or self.config.criteria))
        return self

    def generate(self):
        self._ctx.generate()
        return self

    @property
    def artifacts(self) -> list[Artifact]:
        return self._ctx.artifacts

    def get_artifact(self, name: str) -> Artifact:
        for artifact in self.artifacts:
            if artifact.name == name:
                return artifact
        raise KeyError(f"no artifact named {name}, have {[a.name for a in self.artifacts]}")

    @property
    def passed(self) -> bool:
        "False when an artifact recorded a failed check"
        return all(artifact.meta.get("passed", True) is not False for artifact in self.artifacts)

    def _unique_artifacts(self) -> list[Artifact]:
        "the first artifact takes config.out_name; repeated names get a numeric suffix so no file is overwritten"
        seen = Counter[str]()
        unique = []
        for index, artifact in enumerate(self.artifacts):
            if index == 0 and self.config.out_name:
                artifact = dataclasses.replace(artifact, name=self.config.out_name)
            seen[artifact.name] += 1
            if seen[artifact.name] > 1:
                artifact = dataclasses.replace(artifact, name=f"{artifact.name}_{seen[artifact.name]}")
            unique.append(artifact)
        return unique

    def write(self, out_dir: Optional[str] = None, format: Optional[ArtifactFormat] = None):
        if self._ctx.transactions:
            self.generate()
        out_dir = out_dir or self.config.out_dir
        artifacts = self._unique_artifacts()
        for artifact in artifacts:
            self.written.extend(export_artifact(artifact, out_dir, format or self.config.format))
        run = {
            "command": self.config.command,
            "parameters": self.config.to_dict(),
            "truncation_bound": mirsky_truncation_bound(self.config.prime_cutoff),
            "sieve_n_max": None if self._ctx.table is None else self._ctx.table.n_max,
            "wall_time": self._ctx.wall_time,
            "version": __version__,
            "passed": self.passed,
        }
        self.written.append(export_run_meta(artifacts, out_dir, run))
        return self

    def show(self, name: Optional[str] = None):
        if self._ctx.transactions:
            self.generate()
        for artifact in self.artifacts:
            if artifact.plot is None or (name is not None and artifact.name != name):
                continue
            fig = go.Figure()
            x = artifact.column(artifact.plot.x)
            for column in artifact.plot.y:
                add_plot(x, artifact.column(column), fig, column)
            fig.update_layout(title=artifact.name, xaxis_title=artifact.plot.x)
            fig.update_xaxes(type=artifact.plot.x_scale)
            fig.update_yaxes(type=artifact.plot.y_scale)
            fig.show()
        return self
