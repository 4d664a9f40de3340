"""
Run configuration: a JSON document describing the group, the weight function, the ball radius and
the tasks to run. Everything is validated before any computation starts.
"""

import dataclasses
import hashlib
import json
import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from lowestcell.affine_weyl import EXTENDED, NON_EXTENDED
from lowestcell.exceptions import ConfigurationError
from lowestcell.root_data import parse_cartan_type
from lowestcell.utils.math import check_prime, parse_rational_list

logger = logging.getLogger(__name__)

TASKS = ("info", "klbasis", "xi", "verify", "basedring", "spectra")

# Tasks whose checks need products of lowest-cell elements, i.e. radius ≥ 2·l(w₀).
CELL_TASKS = ("verify", "basedring", "spectra")

_TOP_LEVEL_KEYS = {
    "type",
    "mode",
    "gamma_rank",
    "weights",
    "radius",
    "threads",
    "verify",
    "tasks",
    "props",
    "sample_size",
    "seed",
    "output",
    "cache",
    "spectra",
}


@dataclass(frozen=True)
class SpectraConfig:
    field: Any = "Q"
    q: Tuple[str, ...] = ("2",)
    torus: Tuple[str, ...] = ()
    grid: Tuple[str, ...] = ("-2", "-1", "1", "2", "1/2", "3")

    def to_dict(self) -> dict:
        return {"field": self.field, "q": list(self.q), "torus": list(self.torus), "grid": list(self.grid)}


@dataclass(frozen=True)
class Task:
    name: str
    options: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, **self.options}


@dataclass(frozen=True)
class RunConfig:
    """
    A validated run configuration. `radius` is None until it is resolved against the group.
    """

    type: str
    mode: str = EXTENDED
    gamma_rank: int = 1
    weights: Optional[Dict[str, Any]] = None
    radius: Optional[int] = None
    threads: int = 1
    verify: bool = True
    tasks: Tuple[Task, ...] = (Task("info"),)
    props: Tuple[str, ...] = ("all",)
    sample_size: Optional[int] = None
    seed: int = 0
    output: str = "results"
    cache: Optional[str] = None
    spectra: SpectraConfig = field(default_factory=SpectraConfig)

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "mode": self.mode,
            "gamma_rank": self.gamma_rank,
            "weights": self.weights,
            "radius": self.radius,
            "verify": self.verify,
            "tasks": [task.to_dict() for task in self.tasks],
            "props": list(self.props),
            "sample_size": self.sample_size,
            "seed": self.seed,
            "spectra": self.spectra.to_dict(),
        }

    def canonical_json(self) -> str:
        """
        The configuration as sorted-key JSON; threads and paths do not affect results and are left out.
        """
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def cache_key(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def _require_int(obj: Mapping, key: str, default, minimum: int, path: str) -> Optional[int]:
    value = obj.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigurationError(f"expected an integer ≥ {minimum}, got {value!r}.", field=path)
    return value


def _parse_tasks(value, path: str = "tasks") -> Tuple[Task, ...]:
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, list) or not value:
        raise ConfigurationError("expected a non-empty list of tasks.", field=path)
    tasks = []
    for i, entry in enumerate(value):
        if isinstance(entry, str):
            entry = {"name": entry}
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigurationError("expected a task name or an object with a 'name'.", field=f"{path}[{i}]")
        name = entry["name"]
        if name not in TASKS:
            raise ConfigurationError(f"unknown task {name!r}; expected one of {', '.join(TASKS)}.", field=f"{path}[{i}].name")
        tasks.append(Task(name, {k: v for k, v in entry.items() if k != "name"}))
    return tuple(tasks)


def _parse_spectra(obj: Optional[Mapping]) -> SpectraConfig:
    if obj is None:
        return SpectraConfig()
    if not isinstance(obj, dict):
        raise ConfigurationError("expected an object.", field="spectra")
    unknown = set(obj) - {"field", "q", "torus", "grid"}
    if unknown:
        raise ConfigurationError(f"unknown keys {sorted(unknown)}.", field="spectra")
    field_value = obj.get("field", "Q")
    if isinstance(field_value, str) and field_value.strip().isdigit():
        field_value = int(field_value)
    if field_value != "Q":
        check_prime(field_value)
    values = {}
    for key in ("q", "torus", "grid"):
        if key in obj:
            raw = obj[key]
            parse_rational_list(raw, field=f"spectra.{key}")
            values[key] = tuple(str(v).strip() for v in (raw.split(",") if isinstance(raw, str) else raw))
    return SpectraConfig(field=field_value, **values)


def config_from_dict(obj: Mapping) -> RunConfig:
    """
    Validates a configuration document.

    Raises:
        ConfigurationError -- Naming the dotted path of the first invalid field.
    """
    if not isinstance(obj, dict):
        raise ConfigurationError("the configuration must be a JSON object.")
    unknown = set(obj) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigurationError(f"unknown keys {sorted(unknown)}.")
    if "type" not in obj:
        raise ConfigurationError("is required.", field="type")
    parse_cartan_type(obj["type"])

    mode = obj.get("mode", EXTENDED)
    if mode not in (EXTENDED, NON_EXTENDED):
        raise ConfigurationError(f"expected {EXTENDED!r} or {NON_EXTENDED!r}, got {mode!r}.", field="mode")
    weights = obj.get("weights")
    if weights is not None and not isinstance(weights, dict):
        raise ConfigurationError("expected an object mapping generators to weights.", field="weights")
    verify = obj.get("verify", True)
    if not isinstance(verify, bool):
        raise ConfigurationError("expected true or false.", field="verify")
    props = obj.get("props", ["all"])
    if isinstance(props, str):
        props = [p for p in props.split(",") if p]
    cache = obj.get("cache")
    if cache is not None and not isinstance(cache, str):
        raise ConfigurationError("expected a directory or null.", field="cache")

    return RunConfig(
        type=str(obj["type"]).strip().upper(),
        mode=mode,
        gamma_rank=_require_int(obj, "gamma_rank", 1, 1, "gamma_rank"),
        weights=weights,
        radius=_require_int(obj, "radius", None, 0, "radius"),
        threads=_require_int(obj, "threads", 1, 1, "threads"),
        verify=verify,
        tasks=_parse_tasks(obj.get("tasks", ["info"])),
        props=tuple(props),
        sample_size=_require_int(obj, "sample_size", None, 1, "sample_size"),
        seed=_require_int(obj, "seed", 0, 0, "seed"),
        output=str(obj.get("output", "results")),
        cache=cache,
        spectra=_parse_spectra(obj.get("spectra")),
    )


def load_config(path: str) -> RunConfig:
    """
    Reads and validates a JSON configuration file.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            obj = json.load(f)
    except FileNotFoundError:
        raise ConfigurationError(f"no such file {path!r}.", field="config") from None
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{path} is not valid JSON ({e.msg} at line {e.lineno}).", field="config") from None
    config = config_from_dict(obj)
    logger.debug(f"Loaded configuration for {config.type} from {path}.")
    return config


def task_names(config: RunConfig) -> List[str]:
    return [task.name for task in config.tasks]
