"""CSV / JSON artifact conventions shared by the CLI commands.

Every CSV pairs with a JSON sidecar (same stem, ``.json``) carrying the
full run configuration, code version and wall time.  Files are written
atomically (temp file + rename) and floats are printed with 17
significant digits so a rerun with the same config produces
byte-identical CSV bodies.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path


def fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_sidecar(csv_path: Path, payload: dict) -> None:
    side = Path(csv_path).with_suffix(".json")
    atomic_write_text(side, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_csv(path: Path) -> tuple[list[str], list[list[float]]]:
    text = Path(path).read_text().strip().splitlines()
    if not text:
        raise ValueError(f"{path}: empty CSV")
    header = [h.strip() for h in text[0].split(",")]
    rows = []
    for i, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        vals = line.split(",")
        if len(vals) != len(header):
            raise ValueError(f"{path}:{i}: expected {len(header)} columns, got {len(vals)}")
        rows.append([float(v) for v in vals])
    return header, rows


def read_sidecar(csv_path: Path) -> dict | None:
    side = Path(csv_path).with_suffix(".json")
    if not side.exists():
        return None
    return json.loads(side.read_text())


def read_b_csv(path: Path) -> list[float]:
    header, rows = read_csv(path)
    if header[:2] != ["n", "b_n"]:
        raise ValueError(f"{path}: expected columns 'n,b_n', got {header}")
    b = [0.0] * len(rows)
    for n, bn, *_ in rows:
        idx = int(n)
        if idx < 0 or idx >= len(rows):
            raise ValueError(f"{path}: n values must be 0..{len(rows) - 1}")
        b[idx] = bn
    if b[0] != 0.0:
        raise ValueError(f"{path}: b_0 must be 0")
    return b
