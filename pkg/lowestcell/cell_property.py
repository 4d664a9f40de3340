import logging
import time

from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

import numpy as np

from tqdm import tqdm

from lowestcell.cells import LowestCell
from lowestcell.exceptions import ConfigurationError, ResourceError
from lowestcell.kl_table import KLTable

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


@dataclass
class CellReport:
    """
    The outcome of checking one property on the lowest cell inside a ball.
    A failing report always carries the least failing argument tuple as its witness.
    """

    property_id: str
    radius: int
    verdict: str
    checked: int
    witness: Optional[Any]
    elapsed: float
    statement: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_json(self) -> dict:
        return {
            "id": self.property_id,
            "radius": self.radius,
            "verdict": self.verdict,
            "checked": self.checked,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 3),
            "statement": self.statement,
            "note": self.note,
        }


class BaseCellProperty(ABC):
    """
    Interface for a property of the lowest two-sided cell that can be checked tuple by tuple.

    Subclasses set `property_id` and `statement`, enumerate their argument tuples in a deterministic
    order and decide each tuple independently. Subclasses with a `property_id` are registered by it.
    """

    property_id: str = ""
    statement: str = ""
    note: str = ""
    _registry: Dict[str, Type["BaseCellProperty"]] = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.property_id:
            BaseCellProperty._registry[cls.property_id] = cls

    def __init__(
        self,
        cell: LowestCell,
        radius: int,
        sample_size: Optional[int] = None,
        sample_radius: int = 2,
        seed: int = 0,
        threads: int = 1,
        progress: bool = False,
    ):
        """
        Constructs a new property check.

        Arguments:
            cell {LowestCell} -- The lowest cell, backed by a KLTable.
            radius {int} -- Radius of the ball whose lowest-cell elements are checked.
            sample_size {int, optional} -- Check a random sample of this many tuples instead of all of them.
            sample_radius {int, optional} -- Radius of the ball arbitrary group elements are drawn from. Defaults to 2.
            seed {int, optional} -- Seed of the sampler. Defaults to 0.
            threads {int, optional} -- Worker threads. Defaults to 1.
            progress {bool, optional} -- Show a progress bar. Defaults to False.
        """
        if radius > cell.table.radius:
            raise ResourceError(
                f"{self.property_id} needs the KL basis up to length {radius}, but the table stops at {cell.table.radius}.",
                limit=radius,
            )
        self.cell = cell
        self.table = cell.table
        self.datum = cell.datum
        self.radius = radius
        self.sample_size = sample_size
        self.sample_radius = sample_radius
        self.seed = seed
        self.threads = max(1, threads)
        self.progress = progress
        self.skipped = 0

    def fits(self, *lengths: int) -> bool:
        """
        Whether a product of elements of the given lengths can be expanded inside the table; counts misses.
        """
        if sum(lengths) <= self.table.radius:
            return True
        self.skipped += 1
        return False

    @abstractmethod
    def tuples(self) -> List[Tuple]:
        """
        Returns the argument tuples to check, in a deterministic order.
        """
        pass

    @abstractmethod
    def check(self, args: Tuple) -> bool:
        """
        Returns whether the property holds for one argument tuple.
        """
        pass

    def describe(self, args: Tuple) -> Any:
        return [str(a) if not isinstance(a, tuple) else list(a) for a in args]

    def run(self) -> CellReport:
        start = time.perf_counter()
        tuples = self.tuples()
        note = self.note
        if self.sample_size is not None and len(tuples) > self.sample_size:
            rng = np.random.default_rng(self.seed)
            chosen = np.sort(rng.choice(len(tuples), size=self.sample_size, replace=False))
            tuples = [tuples[i] for i in chosen]
            note = (note + " " if note else "") + f"random sample of {self.sample_size} tuples (seed {self.seed})."
        if self.skipped:
            note = (note + " " if note else "") + f"{self.skipped} tuples skipped: products exceed the table radius."

        failing = None
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            outcomes = pool.map(self.check, tuples) if self.threads > 1 else map(self.check, tuples)
            for index, ok in enumerate(tqdm(outcomes, total=len(tuples), desc=self.property_id, disable=not self.progress)):
                if not ok and failing is None:
                    failing = index
        if failing is not None:
            verdict, witness = FAIL, self.describe(tuples[failing])
            logger.warning(f"{self.property_id} fails at {witness}.")
        else:
            verdict, witness = (PASS if tuples else VACUOUS), None
        return CellReport(
            property_id=self.property_id,
            radius=self.radius,
            verdict=verdict,
            checked=len(tuples),
            witness=witness,
            elapsed=time.perf_counter() - start,
            statement=self.statement,
            note=note,
        )


def property_ids() -> List[str]:
    import lowestcell.implementations  # noqa: F401

    return list(BaseCellProperty._registry)


def verify_property(property_id: str, table: KLTable, radius: Optional[int] = None, **kwargs) -> CellReport:
    """
    Checks one property of the lowest cell on the ball of the given radius.

    Arguments:
        property_id {str} -- One of P1, P2, P3, P4, P5, P6, P7, P8, P13, P15, DEG32, DEG33, FLAT, LPRE.
        table {KLTable} -- The KL table to read from.
        radius {int, optional} -- Ball radius; defaults to half the table radius.
        **kwargs -- Passed to the property (sample_size, sample_radius, seed, threads, progress).

    Returns:
        CellReport -- The verdict, with a witness on failure.
    """
    ids = property_ids()
    if property_id not in BaseCellProperty._registry:
        raise ConfigurationError(f"unknown property {property_id!r}; expected one of {', '.join(ids)}.", field="props")
    radius = table.radius // 2 if radius is None else radius
    check = BaseCellProperty._registry[property_id](LowestCell(table), radius, **kwargs)
    report = check.run()
    logger.info(f"{property_id}: {report.verdict} ({report.checked} tuples, {report.elapsed:.2f}s).")
    return report


def verify_properties(ids: Sequence[str], table: KLTable, radius: Optional[int] = None, **kwargs) -> List[CellReport]:
    if list(ids) == ["all"]:
        ids = property_ids()
    return [verify_property(property_id, table, radius, **kwargs) for property_id in ids]
