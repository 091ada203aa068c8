# src/qineq_audit/config/config.py

import logging.config
import os
from datetime import datetime
from pathlib import Path

import yaml
from dotenv import load_dotenv

# Pathing and environment variables
PROJECT_ROOT = Path(__file__).parents[3]
load_dotenv(PROJECT_ROOT / ".env")

PACKAGE_DIR = Path(__file__).parents[1]
CONFIG_DIR = Path(__file__).parent
DATA_DIR = PROJECT_ROOT / "data"
LOCAL_RESULTS_DIR = DATA_DIR / "results"
LOG_DIR = Path(os.getenv("QINEQ_LOG_DIR", "logs"))

with open(CONFIG_DIR / "campaign_defaults.yaml") as f:
    CAMPAIGN_DEFAULTS = yaml.safe_load(f)

# Jackson summation
DEFAULT_EPS_REL = float(os.getenv("QINEQ_EPS_REL", "1e-12"))
DEFAULT_N_MAX = int(os.getenv("QINEQ_N_MAX", "200000"))
TAIL_WINDOW = 8
# Stop tests look back over this many e-folds of q^n
TAIL_LOG_SPAN = 1.0

# Near-classical evaluations (q = 1 - 1e-6) need far more terms than the cap above
CLASSICAL_PROXY_Q = 1.0 - 1e-6
CLASSICAL_PROXY_EPS_REL = 1e-10
CLASSICAL_PROXY_N_MAX = 50_000_000

# Left-endpoint derivative probing
ENDPOINT_STEP_SCALE = 0.5
ENDPOINT_PROBES = 40
ENDPOINT_CAUCHY_TOL = 1e-8

# Sampling and acceptance tolerances
DEFAULT_SEED = int(os.getenv("QINEQ_SEED", str(0x5EED)), 0)
CONVEXITY_SAMPLES = 10_000
CONVEXITY_TOL = 1e-10
VERDICT_TOL = 1e-12
# Truncation floor for bounds that are equalities for monotone f
SOUND_KERNEL_EPS_REL = 1e-15
IDENTITY_TOL = 1e-9
MOMENT_FLAG_TOL = 1e-8
MOMENT_MATCH_TOL = 1e-10
NODE_ALIGNMENT_TOL = 1e-10
LIMIT_TOL = 1e-6
INTEGRAL_LIMIT_TOL = 1e-3
MIDPOINT_LIMIT_RTOL = 1e-2

MAX_WORKERS = int(os.getenv("QINEQ_MAX_WORKERS", "4"))
# Entries kept by the memoised per-function evaluations
FUNC_CACHE_SIZE = 1024


# Attributes every LogRecord has; anything else came in through extra=
_RECORD_ATTRS = frozenset(
    vars(logging.LogRecord("", 0, "", 0, "", (), None))
) | {"message", "asctime", "context"}


class AuditContextFilter(logging.Filter):
    """
    Render the fields passed through ``extra=`` (function, q, terms, path, ...)
    into a single ``context`` attribute, e.g. `` | function=square q=0.5``.

    Records without extras get an empty context.
    """

    def filter(self, record: logging.LogRecord) -> bool:
        fields = [
            f"{key}={value}"
            for key, value in vars(record).items()
            if key not in _RECORD_ATTRS and not key.startswith("_")
        ]
        record.context = " | " + " ".join(fields) if fields else ""
        return True


def setup_logging():
    """
    Load the logging configuration from ``logging_config.yaml``.

    Log files go under ``LOG_DIR/<YYYYMMDD>/``; campaign and report events
    also land in ``audit.log``.
    """
    with open(CONFIG_DIR / "logging_config.yaml") as f:
        config = yaml.safe_load(f)
    current_date = datetime.now().strftime("%Y%m%d")

    for _, handler_config in config.get("handlers", {}).items():
        if "filename" in handler_config:
            log_path = LOG_DIR / Path(handler_config["filename"]).name
            date_based_path = log_path.parent / current_date / log_path.name
            full_path = (
                date_based_path
                if date_based_path.is_absolute()
                else PROJECT_ROOT / date_based_path
            )
            full_path.parent.mkdir(parents=True, exist_ok=True)
            handler_config["filename"] = str(full_path)

    logging.config.dictConfig(config)
