"""
Report writer: one JSON document per run, large integer tables in .npy sidecars.

Sidecars live in `<report stem>_tables/` next to the report and are referenced
by relative path and sha256 so a report can be checked against its tables.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

logger = logging.getLogger(__name__)

SCHEMA_VERSION = '1.0'

# Tables up to this many entries stay inline in the JSON
INLINE_LIMIT = 256

TIMING_KEYS = ('wall_time', 'timing')


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 20), b''):
            digest.update(block)
    return digest.hexdigest()


class ReportStore:
    """Writes a run's report and its sidecar tables"""

    def __init__(self, path: Path, force: bool = False, inline_limit: int = INLINE_LIMIT):
        """
        Args:
            path: Report file (.json)
            force: Overwrite an existing report
            inline_limit: Largest table kept inline
        """
        self.path = Path(path)
        self.force = force
        self.inline_limit = inline_limit
        self.table_dir = self.path.parent / f"{self.path.stem}_tables"
        self._names: Dict[str, int] = {}

    def check_writable(self) -> None:
        """
        Raises:
            FileExistsError: If the report exists and force is not set
        """
        if self.path.exists() and not self.force:
            raise FileExistsError(f"{self.path} exists; pass --force to overwrite")

    def _unique(self, name: str) -> str:
        safe = ''.join(c if c.isalnum() or c in '-_' else '_' for c in name)
        n = self._names.get(safe, 0)
        self._names[safe] = n + 1
        return safe if n == 0 else f"{safe}_{n}"

    def table(self, name: str, values: np.ndarray) -> Dict[str, Any]:
        """
        Store one integer table; usable wherever a TableStore is expected.

        Returns:
            Inline values for small tables, else a sidecar reference
        """
        values = np.asarray(values, dtype=np.int64)
        if values.size <= self.inline_limit:
            return {'name': name, 'values': values.reshape(-1).tolist(), 'shape': list(values.shape)}

        self.table_dir.mkdir(parents=True, exist_ok=True)
        target = self.table_dir / f"{self._unique(name)}.npy"
        np.save(target, values, allow_pickle=False)
        ref = {
            'name': name,
            'path': str(target.relative_to(self.path.parent)),
            'sha256': sha256_file(target),
            'shape': list(values.shape),
            'dtype': 'int64',
        }
        logger.debug(f"sidecar {ref['path']} ({values.size:,} entries)")
        return ref

    def write(self, report: Dict[str, Any]) -> Path:
        """Write the report with its schema version; returns the path."""
        self.check_writable()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        document = {'schema_version': SCHEMA_VERSION, **report}
        with open(self.path, 'w') as f:
            json.dump(document, f, indent=2, ensure_ascii=False, default=_default)
            f.write('\n')
        logger.info(f"report written to {self.path}")
        return self.path


def load_report(path: Path) -> Dict[str, Any]:
    with open(path) as f:
        return json.load(f)


def load_table(report_path: Path, ref: Dict[str, Any], verify: bool = True) -> np.ndarray:
    """
    Load a table reference from a report, inline or sidecar.

    Raises:
        ValueError: If the sidecar checksum does not match
    """
    if 'values' in ref:
        return np.array(ref['values'], dtype=np.int64).reshape(ref['shape'])
    target = Path(report_path).parent / ref['path']
    if verify and sha256_file(target) != ref['sha256']:
        raise ValueError(f"checksum mismatch for {target}")
    return np.load(target, allow_pickle=False)


def strip_timing(report: Any) -> Any:
    """Copy of a report without timing fields, for reproducibility comparisons."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k not in TIMING_KEYS}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report


def _default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    return str(value)


def default_report_path(output_dir: Path, command: str, name: Optional[str] = None) -> Path:
    return Path(output_dir) / f"{command}{'_' + name if name else ''}.json"
