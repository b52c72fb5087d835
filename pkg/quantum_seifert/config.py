import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from .errors import ConfigError

load_dotenv()  # Load variables from .env file

# Numerics
DEFAULT_PRECISION = os.getenv("QUANTUM_SEIFERT_PRECISION", "double")
HIGH_PRECISION_DPS = 50
PRECISION_MODES = ("double", "high")

# Enumeration and summation limits
WEYL_ENUMERATION_CAP = int(os.getenv("QUANTUM_SEIFERT_WEYL_CAP", "1000000"))
TERM_BUDGET = int(os.getenv("QUANTUM_SEIFERT_TERM_BUDGET", "1000000000"))

# Agreement between evaluation paths
AGREEMENT_RTOL = 1e-8
AGREEMENT_ATOL = 1e-10
SMALL_VALUE_THRESHOLD = 1e-2

# Randomized suites
DEFAULT_SEED = 7

# Directories
CACHE_DIR = os.getenv("QUANTUM_SEIFERT_CACHE_DIR", ".quantum_seifert_cache")
RESULTS_DIR = os.getenv("QUANTUM_SEIFERT_RESULTS_DIR", "results")
GOLDEN_VALUES_FILE = os.getenv("QUANTUM_SEIFERT_GOLDEN_FILE", os.path.join(RESULTS_DIR, "golden_values.json"))

OUTPUT_FORMATS = ("json", "csv", "plain")
SUPPORTED_FAMILIES = ("A", "D", "E")


def parse_algebra(name: str) -> Tuple[str, int]:
    """Splits an algebra name such as 'A2' or 'e6' into (family, rank)."""
    name = name.strip().upper()
    if len(name) < 2 or not name[1:].isdigit():
        raise ConfigError([f"algebra '{name}' is not of the form <family><rank>, e.g. A2"])
    return name[0], int(name[1:])


def parse_r_range(text: str) -> List[int]:
    """Parses 'a:b:step' (inclusive of b) or 'a:b' into a list of levels."""
    parts = text.split(":")
    if len(parts) not in (2, 3) or not all(p.strip().lstrip("-").isdigit() for p in parts):
        raise ConfigError([f"r-range '{text}' is not of the form a:b or a:b:step"])
    start, stop = int(parts[0]), int(parts[1])
    step = int(parts[2]) if len(parts) == 3 else 1
    if step <= 0:
        raise ConfigError([f"r-range step must be positive, got {step}"])
    return list(range(start, stop + 1, step))


@dataclass
class RunConfig:
    """Validated settings for one CLI invocation."""

    algebra: str = "A1"
    level: Optional[int] = None
    r_values: List[int] = field(default_factory=list)
    precision: str = DEFAULT_PRECISION
    term_budget: int = TERM_BUDGET
    cache_dir: Optional[str] = CACHE_DIR
    output_format: str = "json"
    workers: int = 1

    def validate(self) -> None:
        """Raises one ConfigError listing every problem found."""
        problems: List[str] = []
        try:
            family, rank = parse_algebra(self.algebra)
            if family not in SUPPORTED_FAMILIES:
                problems.append(f"unsupported algebra family '{family}' (simply-laced A, D, E only)")
        except ConfigError as e:
            problems.extend(e.problems)
        if self.level is not None and self.level < 1:
            problems.append(f"level must be positive, got {self.level}")
        if any(r < 1 for r in self.r_values):
            problems.append("every level in the r-range must be positive")
        if self.precision not in PRECISION_MODES:
            problems.append(f"precision must be one of {', '.join(PRECISION_MODES)}, got '{self.precision}'")
        if self.term_budget <= 0:
            problems.append(f"term budget must be positive, got {self.term_budget}")
        if self.output_format not in OUTPUT_FORMATS:
            problems.append(f"output format must be one of {', '.join(OUTPUT_FORMATS)}, got '{self.output_format}'")
        if self.workers < 1:
            problems.append(f"workers must be at least 1, got {self.workers}")
        if problems:
            raise ConfigError(problems)
