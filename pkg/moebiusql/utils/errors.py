class MoebiusQLError(Exception):
    "base class of every error raised by moebiusql"


class RangeError(MoebiusQLError, ValueError):
    "an index or range falls outside the table or sequence it addresses"


class ParameterError(MoebiusQLError, ValueError):
    "an operation or generator received an invalid parameter"


class ConfigError(MoebiusQLError, ValueError):
    "a run configuration failed validation"


class CacheFormatError(MoebiusQLError, ValueError):
    "a sieve cache file has the wrong magic bytes or is truncated"


class DegenerateError(MoebiusQLError, ArithmeticError):
    "a normalisation that cannot vanish for valid input did vanish"


class TrivialSequenceError(MoebiusQLError, ValueError):
    "a sequence has zero mean square, so its spectral measure is trivial"


class PositiveEntropyError(MoebiusQLError, ValueError):
    "the union bound is vacuous for systems with positive topological entropy"


class SieveAllocationError(MoebiusQLError, MemoryError):
    def __init__(self, requested_bytes: int, what: str = "sieve table"):
        super().__init__(f"could not allocate {requested_bytes} bytes for the {what}")
        self.requested_bytes = requested_bytes
