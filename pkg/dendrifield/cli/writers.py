"""
Output files: snapshot payloads with a YAML header sidecar, CSV series and
YAML reports.

A snapshot payload ``<stem>.bin`` holds little-endian 8-byte floats,
snapshot after snapshot, each snapshot row by row (i = 0..n_xi-1) with the
columns j = 0..n_x-1 contiguous. ``<stem>.yaml`` states the dimensions,
stride, grid and model so that the payload is self-describing.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

import numpy as np
import yaml

from ..errors import DimensionMismatchError
from ..stepper import RunRecord, SimulationSetup

logger = logging.getLogger(__name__)

PAYLOAD_DTYPE = '<f8'
PathLike = Union[str, Path]


def snapshot_header(record: RunRecord, setup: SimulationSetup) -> Dict[str, Any]:
    grid = setup.grid
    n_snapshots, n_xi, n_x = record.snapshots.shape
    return {
        'n_snapshots': int(n_snapshots),
        'n_xi': int(n_xi),
        'n_x': int(n_x),
        'dtype': PAYLOAD_DTYPE,
        'order': 'snapshot, row i, column j',
        'snapshot_stride': setup.snapshot_stride,
        'tau': setup.tau,
        'n_t': setup.n_t,
        'snapshot_times': [float(t) for t in record.snapshot_times],
        'grid': {'L_x': grid.L_x, 'L_xi': grid.L_xi, 'h_x': grid.h_x, 'h_xi': grid.h_xi},
        'params': setup.params.to_dict(),
        'firing_rate': setup.firing_rate.to_dict(),
        'kernel': setup.kernel.to_dict(),
        'delta': setup.delta.to_dict(),
        'evaluator': setup.evaluator,
    }


def write_snapshots(directory: PathLike, stem: str, record: RunRecord,
                    setup: SimulationSetup) -> Tuple[Path, Path]:
    """Write ``<stem>.yaml`` and ``<stem>.bin``; returns both paths"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    header_path = directory / f"{stem}.yaml"
    payload_path = directory / f"{stem}.bin"
    with open(header_path, 'w', encoding='utf-8') as f:
        yaml.safe_dump(snapshot_header(record, setup), f, sort_keys=False)
    np.ascontiguousarray(record.snapshots, dtype=PAYLOAD_DTYPE).tofile(payload_path)
    logger.info("Wrote %d snapshots to %s", record.snapshots.shape[0], payload_path)
    return header_path, payload_path


def read_snapshots(stem: PathLike) -> Tuple[Dict[str, Any], np.ndarray]:
    """Read a header/payload pair back; the payload must match the header exactly"""
    stem = Path(stem)
    if stem.suffix in ('.yaml', '.bin'):
        stem = stem.with_suffix('')
    header_path = stem.with_suffix('.yaml')
    payload_path = stem.with_suffix('.bin')
    if not header_path.exists():
        raise FileNotFoundError(f"Snapshot header not found: {header_path}")
    with open(header_path, 'r', encoding='utf-8') as f:
        header = yaml.safe_load(f)
    shape = (header['n_snapshots'], header['n_xi'], header['n_x'])
    expected = int(np.prod(shape)) * np.dtype(PAYLOAD_DTYPE).itemsize
    actual = payload_path.stat().st_size
    if actual != expected:
        raise DimensionMismatchError(
            f"Payload {payload_path} has {actual} bytes, header {shape} implies {expected}"
        )
    data = np.fromfile(payload_path, dtype=PAYLOAD_DTYPE).reshape(shape)
    return header, data


def write_csv(path: PathLike, columns: Mapping[str, Any]) -> Path:
    """Write equal-length 1D series as columns under a one-line header"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arrays = [np.asarray(v, dtype=float).ravel() for v in columns.values()]
    lengths = {len(a) for a in arrays}
    if len(lengths) > 1:
        raise DimensionMismatchError(f"CSV columns have different lengths: {sorted(lengths)}")
    np.savetxt(path, np.column_stack(arrays), delimiter=',', header=','.join(columns),
               comments='', fmt='%.17g')
    return path


def read_csv(path: PathLike) -> Dict[str, np.ndarray]:
    """Inverse of ``write_csv``"""
    with open(path, 'r', encoding='utf-8') as f:
        names = f.readline().strip().split(',')
    data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    return {name: data[:, k] for k, name in enumerate(names)}


def write_yaml(path: PathLike, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        if isinstance(payload, str):
            f.write(payload)
        else:
            yaml.safe_dump(payload, f, sort_keys=False)
    return path
