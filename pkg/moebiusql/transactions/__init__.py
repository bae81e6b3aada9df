from moebiusql.transactions.acceptance import AcceptanceSuite, CRITERIA, SUITES, SuiteSizes
from moebiusql.transactions.arithmetic import SieveSummary
from moebiusql.transactions.entropy import EntropyScan
from moebiusql.transactions.measures import AffinityCheck, resolve_sequence
from moebiusql.transactions.random_model import ConcentrationCheck, DecaySimulation, UnionBound
from moebiusql.transactions.spectral import Correlations, DavenportScan, FlatnessScan, MirskyCorrelations, Spectrum
