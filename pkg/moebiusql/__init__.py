from moebiusql.version import __version__
from moebiusql.arith import *
from moebiusql.spectral import *
from moebiusql.measures import *
from moebiusql.dynsys import *
from moebiusql.randmodel import *
from moebiusql.config import RunConfig, Tolerances
from moebiusql.ql import MoebiusQL
