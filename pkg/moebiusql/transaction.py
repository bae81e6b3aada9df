import logging
import time
import uuid
from dataclasses import dataclass
from typing import Hashable, Optional, OrderedDict, Sequence
from moebiusql.arith.cache import load_or_sieve
from moebiusql.arith.sieve import SieveTable
from moebiusql.artifacts.artifact import Artifact
from moebiusql.config import RunConfig

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Transaction:
    def __post_init__(self):
        self.is_commited: bool = False
        self.is_generated: bool = False
        self.id = uuid.uuid4()
        self.artifacts: list[Artifact] = []

    @property
    def key(self) -> Hashable:
        "transactions of the same type and key replace each other"
        return ()

    def before_gen(self, ctx: "TransactionContext") -> int:
        "returns the sieve size the transaction needs, 0 for none"
        return 0

    def after_gen(self, ctx: "TransactionContext"):
        "runs the experiment once the shared sieve table exists."
        ...

    def __hash__(self) -> int:
        return self.id.__hash__()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Transaction) and self.id == other.id


@dataclass(eq=False)
class LabeledTransaction(Transaction):
    label: str
    "distinguishes transactions of one type, e.g. the generator they run on"

    @property
    def key(self) -> Hashable:
        return self.label


class TransactionContext:
    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()
        self.transactions = OrderedDict[tuple[type[Transaction], Hashable], Transaction]()
        self.table: Optional[SieveTable] = None
        self.artifacts: list[Artifact] = []
        self.wall_time: float = 0.0

    def get_transaction(self, transaction_type: type[Transaction], key: Hashable = ()) -> Optional[Transaction]:
        return self.transactions.get((transaction_type, key))

    def add_transaction(self, transaction: Transaction, ignore_duplicates: bool = False):
        """
        transaction: Transaction - transaction to be added
        ignore_duplicates: bool = False - if True, keeps the older of two transactions with the same type and key
        """
        transaction_id = (type(transaction), transaction.key)
        if transaction_id in self.transactions and ignore_duplicates:
            return
        self.transactions[transaction_id] = transaction
        transaction.is_commited = True

    def add_transactions(self, transactions: Sequence[Transaction], ignore_duplicates: bool = False):
        for transaction in transactions:
            self.add_transaction(transaction, ignore_duplicates)

    def require_table(self, n_max: int) -> SieveTable:
        "the shared table, extended by a fresh sieve when it is smaller than n_max"
        if self.table is None or self.table.n_max < n_max:
            self.table = load_or_sieve(
                n_max,
                cache_dir=self.config.resolved_cache_dir,
                use_cache=self.config.use_cache,
                segment_size=self.config.segment_size,
                workers=self.config.workers,
            )
        return self.table

    def generate(self) -> list[Artifact]:
        begin = time.perf_counter()
        transactions = list(self.transactions.values())
        n_max = max((transaction.before_gen(self) for transaction in transactions), default=0)
        if n_max:
            self.require_table(n_max)

        for transaction in transactions:
            started = time.perf_counter()
            transaction.after_gen(self)
            transaction.is_generated = True
            self.artifacts.extend(transaction.artifacts)
            logger.info("%s finished in %.2fs", type(transaction).__name__, time.perf_counter() - started)

        self.transactions = OrderedDict()
        self.wall_time += time.perf_counter() - begin
        return self.artifacts
