# src/qineq_audit/campaign/common.py
"""Campaign configuration: defaults, YAML files and command-line overrides."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

import yaml

from ..config.config import CAMPAIGN_DEFAULTS, LOCAL_RESULTS_DIR
from ..corpus import corpus_names
from ..errors import DomainError, UsageError
from ..inequalities import FirstFactor, Pairing
from ..moments import MomentSource
from ..qcalc import TruncationPolicy, as_qparam

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")


class AuditKind(str, Enum):
    IDENTITY = "identity"
    MOMENTS = "moments"
    INEQUALITIES = "inequalities"
    LIMITS = "limits"
    REGRESSION = "regression"


CONFIG_KEYS = frozenset(CAMPAIGN_DEFAULTS)


@dataclass(frozen=True)
class CampaignConfig:
    audit_kinds: tuple[AuditKind, ...]
    q_grid: tuple[float, ...]
    x_grid_size: int
    r_values: tuple[float, ...]
    corpus_filter: tuple[str, ...]
    pairings: tuple[Pairing, ...]
    first_factors: tuple[FirstFactor, ...]
    moment_sources: tuple[MomentSource, ...]
    policy: TruncationPolicy
    seed: int
    max_workers: int
    output_format: str
    output: Path
    stamp_time: bool

    def as_dict(self) -> dict[str, Any]:
        """Flat, YAML-compatible echo of the configuration."""
        return {
            "audit_kinds": [kind.value for kind in self.audit_kinds],
            "q_grid": list(self.q_grid),
            "x_grid_size": self.x_grid_size,
            "r_values": list(self.r_values),
            "corpus_filter": list(self.corpus_filter),
            "pairings": [p.value for p in self.pairings],
            "first_factors": [f.value for f in self.first_factors],
            "moment_sources": [m.value for m in self.moment_sources],
            "eps_rel": self.policy.eps_rel,
            "n_max": self.policy.n_max,
            "seed": self.seed,
            "max_workers": self.max_workers,
            "format": self.output_format,
            "output": str(self.output),
            "stamp_time": self.stamp_time,
        }


def load_campaign_file(path: str | Path) -> dict[str, Any]:
    """Read a campaign YAML file; unknown keys are a usage error."""
    try:
        with open(path) as f:
            content = yaml.safe_load(f) or {}
    except OSError as e:
        raise UsageError(f"Cannot read campaign file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise UsageError(f"Campaign file {path} is not valid YAML: {e}") from e
    if not isinstance(content, dict):
        raise UsageError(f"Campaign file {path} must contain a mapping")
    unknown = set(content) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"Unknown campaign keys in {path}: {sorted(unknown)}")
    return content


def _as_list(value: Any, key: str) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, (str, int, float)):
        return [value]
    raise UsageError(f"{key} must be a list, got {value!r}")


def _enum_list(enum, values: Any, key: str) -> tuple:
    try:
        members = tuple(enum(v) for v in _as_list(values, key))
    except ValueError as e:
        allowed = [m.value for m in enum]
        raise UsageError(f"{key}: {e}; allowed values are {allowed}") from e
    if not members:
        raise UsageError(f"{key} must not be empty")
    return members


def _number_list(values: Any, key: str) -> tuple[float, ...]:
    try:
        numbers = tuple(float(v) for v in _as_list(values, key))
    except (TypeError, ValueError) as e:
        raise UsageError(f"{key} must contain numbers: {e}") from e
    if not numbers:
        raise UsageError(f"{key} must not be empty")
    return numbers


def build_campaign_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> CampaignConfig:
    """
    Merge the packaged defaults, an optional campaign file and overrides.

    Later sources win key by key; ``None`` overrides are ignored.

    Raises
    ------
    UsageError
        On unknown keys or values out of range.
    """
    merged = dict(CAMPAIGN_DEFAULTS)
    if path is not None:
        merged.update(load_campaign_file(path))
    for key, value in (overrides or {}).items():
        if key not in CONFIG_KEYS:
            raise UsageError(f"Unknown campaign key {key!r}")
        if value is not None:
            merged[key] = value

    q_grid = _number_list(merged["q_grid"], "q_grid")
    try:
        for q in q_grid:
            as_qparam(q)
        policy = TruncationPolicy(float(merged["eps_rel"]), int(merged["n_max"]))
    except (DomainError, TypeError, ValueError) as e:
        raise UsageError(str(e)) from e

    r_values = _number_list(merged["r_values"], "r_values")
    if any(not r >= 1.0 for r in r_values):
        raise UsageError(f"r_values must all be >= 1, got {list(r_values)}")

    x_grid_size = merged["x_grid_size"]
    if isinstance(x_grid_size, bool) or not isinstance(x_grid_size, int) or x_grid_size < 2:
        raise UsageError(f"x_grid_size must be an integer >= 2, got {x_grid_size!r}")

    corpus_filter = tuple(
        str(name) for name in _as_list(merged["corpus_filter"] or [], "corpus_filter")
    )
    unknown = set(corpus_filter) - set(corpus_names())
    if unknown:
        raise UsageError(f"Unknown corpus functions: {sorted(unknown)}")

    output_format = str(merged["format"])
    if output_format not in OUTPUT_FORMATS:
        raise UsageError(f"format must be one of {OUTPUT_FORMATS}, got {output_format!r}")
    output = merged["output"]
    output = Path(output) if output else LOCAL_RESULTS_DIR / f"audit.{output_format}"

    try:
        seed = int(merged["seed"])
        max_workers = int(merged["max_workers"])
    except (TypeError, ValueError) as e:
        raise UsageError(f"seed and max_workers must be integers: {e}") from e
    if max_workers < 1:
        raise UsageError(f"max_workers must be at least 1, got {max_workers}")

    config = CampaignConfig(
        audit_kinds=_enum_list(AuditKind, merged["audit_kinds"], "audit_kinds"),
        q_grid=q_grid,
        x_grid_size=x_grid_size,
        r_values=r_values,
        corpus_filter=corpus_filter,
        pairings=_enum_list(Pairing, merged["pairings"], "pairings"),
        first_factors=_enum_list(FirstFactor, merged["first_factors"], "first_factors"),
        moment_sources=_enum_list(MomentSource, merged["moment_sources"], "moment_sources"),
        policy=policy,
        seed=seed,
        max_workers=max_workers,
        output_format=output_format,
        output=output,
        stamp_time=bool(merged["stamp_time"]),
    )
    logger.debug("Campaign configuration built", extra={"config": config.as_dict()})
    return config
