"""Atomic file storage operations for JSON and JSON-lines exports."""

import contextlib
import hashlib
import json
import os
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import aiofiles
import aiofiles.os

from findmy_sentinel.core.exceptions import PersistenceError


def run_id(scenario: str, seed: int, engine: str) -> str:
    """Stable 12-hex-digit identifier of a scenario run."""
    return hashlib.sha256(f"{scenario}:{seed}:{engine}".encode()).hexdigest()[:12]


async def atomic_write_text(path: Path, content: str) -> None:
    """Write text atomically using temp file + rename.

    The file is either fully written or left untouched.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_suffix(path.suffix + ".tmp")

    try:
        async with aiofiles.open(temp_path, "w") as f:
            await f.write(content)
            await f.flush()
            os.fsync(f.fileno())

        await aiofiles.os.rename(temp_path, path)

    except Exception as e:
        with contextlib.suppress(FileNotFoundError):
            await aiofiles.os.remove(temp_path)

        raise PersistenceError(
            code="WRITE_FAILED",
            message=f"Failed to write {path}: {e}",
            details={"path": str(path), "error": str(e)},
        )


async def atomic_write(path: Path, data: dict[str, Any]) -> None:
    """Write a JSON document atomically with sorted keys."""
    await atomic_write_text(path, json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")


async def safe_read(path: Path) -> dict[str, Any] | None:
    """Read a JSON document, returning None if the file doesn't exist."""
    try:
        async with aiofiles.open(path) as f:
            content = await f.read()
            data: dict[str, Any] = json.loads(content)
            return data
    except FileNotFoundError:
        return None
    except json.JSONDecodeError as e:
        raise PersistenceError(
            code="INVALID_JSON",
            message=f"Invalid JSON in {path}: {e}",
            details={"path": str(path), "error": str(e)},
        )


def _jsonl(records: Iterable[dict[str, Any]]) -> str:
    return "".join(json.dumps(r, sort_keys=True, default=str) + "\n" for r in records)


async def write_jsonl(path: Path, records: Iterable[dict[str, Any]]) -> None:
    await atomic_write_text(path, _jsonl(records))


async def append_jsonl(path: Path, records: Iterable[dict[str, Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        async with aiofiles.open(path, "a") as f:
            await f.write(_jsonl(records))
    except OSError as e:
        raise PersistenceError(
            code="WRITE_FAILED",
            message=f"Failed to append to {path}: {e}",
            details={"path": str(path), "error": str(e)},
        )


async def read_jsonl(path: Path) -> list[dict[str, Any]]:
    """Read every JSON-lines record; blank lines are skipped."""
    try:
        async with aiofiles.open(path) as f:
            content = await f.read()
    except FileNotFoundError:
        raise PersistenceError(
            code="NOT_FOUND",
            message=f"File {path} not found",
            details={"path": str(path)},
        )

    records = []
    for line_number, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise PersistenceError(
                code="INVALID_JSON",
                message=f"Invalid JSON on line {line_number} of {path}: {e.msg}",
                details={"path": str(path), "line": line_number},
            )
    return records
