import json
import os
import sys
import tempfile
from typing import Dict, Optional

from ..config import CACHE_DIR, GOLDEN_VALUES_FILE, RESULTS_DIR
from .numeric import Backend, close_enough, to_pair

CACHE_FILE_NAME = "invariants.json"


def _safe_filename(name: str) -> str:
    safe = "".join(c if c.isalnum() or c in (" ", "-", "_", ".") else "" for c in name)
    return safe.strip().replace(" ", "_")


def _ensure_dir(path: str) -> bool:
    if os.path.isdir(path):
        return True
    try:
        os.makedirs(path, exist_ok=True)
        return True
    except OSError as e:
        print(f"Error creating directory {path}: {e}", file=sys.stderr)
        return False


def save_result_file(name: str, content: str, results_dir: Optional[str] = None, verbose: bool = False) -> bool:
    """
    Saves emitted output (JSON or CSV text) under the results directory.
    Returns True if successful, False otherwise.
    """
    results_dir = results_dir or RESULTS_DIR
    safe_filename = _safe_filename(name)
    if not safe_filename.strip("._"):
        print(f"Error: Could not generate a valid filename from '{name}'", file=sys.stderr)
        return False
    if not _ensure_dir(results_dir):
        return False

    file_path = os.path.join(results_dir, safe_filename)
    try:
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(content)
        if verbose:
            print(f"Saved result to {file_path}", file=sys.stderr)
        return True
    except OSError as e:
        print(f"Error saving file {file_path}: {e}", file=sys.stderr)
        return False


def _write_json_atomic(path: str, data: Dict) -> bool:
    directory = os.path.dirname(os.path.abspath(path))
    if not _ensure_dir(directory):
        return False
    try:
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp_", suffix=".json")
    except OSError as e:
        print(f"Error writing {path}: {e}", file=sys.stderr)
        return False
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, sort_keys=True)
        os.replace(tmp_path, path)
        return True
    except (OSError, TypeError, ValueError) as e:
        print(f"Error writing {path}: {e}", file=sys.stderr)
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        return False


def _read_json(path: str) -> Dict:
    if not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        print(f"Warning: ignoring unreadable file {path}: {e}", file=sys.stderr)
        return {}


def cache_key(algebra: str, r: int, manifold: str, method: str, precision: str) -> str:
    return "|".join([algebra, str(r), manifold, method, precision])


def load_cached_value(key: str, backend: Backend, cache_dir: Optional[str] = None):
    """The cached invariant for key, or None."""
    entries = _read_json(os.path.join(cache_dir or CACHE_DIR, CACHE_FILE_NAME))
    text = entries.get(key)
    if text is None:
        return None
    try:
        return backend.parse_scalar(text)
    except ValueError:
        print(f"Warning: cache entry for {key} is malformed, recomputing", file=sys.stderr)
        return None


def store_cached_value(key: str, value, backend: Backend, cache_dir: Optional[str] = None) -> bool:
    """Adds one value to the cache file, replacing the file atomically."""
    path = os.path.join(cache_dir or CACHE_DIR, CACHE_FILE_NAME)
    entries = _read_json(path)
    entries[key] = backend.format_scalar(value)
    return _write_json_atomic(path, entries)


class GoldenStore:
    """Reference values recorded from runs where every evaluation path agreed."""

    def __init__(self, path: Optional[str] = None):
        self.path = path or GOLDEN_VALUES_FILE
        self.values: Dict[str, list] = _read_json(self.path)

    def __contains__(self, key: str) -> bool:
        return key in self.values

    def get(self, key: str) -> Optional[complex]:
        pair = self.values.get(key)
        return None if pair is None else complex(pair[0], pair[1])

    def record(self, key: str, value, overwrite: bool = False) -> bool:
        if key in self.values and not overwrite:
            return False
        self.values[key] = to_pair(value)
        return _write_json_atomic(self.path, self.values)

    def check(self, key: str, value, rtol: float = 1e-8, atol: float = 1e-10) -> Optional[bool]:
        """True/False against the recorded value, None when nothing is recorded yet."""
        expected = self.get(key)
        if expected is None:
            return None
        return close_enough(value, expected, rtol=rtol, atol=atol)
