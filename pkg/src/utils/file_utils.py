"""Utilities for file handling in the PV performance toolkit."""
import os
import json
import tempfile
from pathlib import Path
from typing import Any, Union


def atomic_write_bytes(data: bytes, file_path: Union[str, Path]) -> Path:
    """
    Write bytes to a file atomically (temp file in the same directory, then rename).

    Args:
        data: Content to write
        file_path: Destination path

    Returns:
        Path of the written file
    """
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=str(path.parent))
    try:
        with os.fdopen(fd, 'wb') as f:
            f.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise
    return path


def atomic_write_text(text: str, file_path: Union[str, Path]) -> Path:
    """
    Write UTF-8 text to a file atomically.

    Args:
        text: Content to write
        file_path: Destination path

    Returns:
        Path of the written file
    """
    return atomic_write_bytes(text.encode('utf-8'), file_path)


def dump_json(data: Any, indent: int = 2) -> str:
    """
    Serialize data as JSON with a stable layout.

    Key order is the insertion order of the dictionaries, so callers that
    build their dictionaries deterministically get byte-identical output.

    Args:
        data: Data to serialize
        indent: Indentation level for JSON formatting

    Returns:
        JSON text terminated by a newline
    """
    return json.dumps(data, indent=indent, ensure_ascii=False, allow_nan=False) + "\n"


def load_json(file_path: Union[str, Path]) -> Any:
    """
    Load data from a JSON file.

    Args:
        file_path: Path to the JSON file

    Returns:
        Loaded data

    Raises:
        FileNotFoundError: If the file doesn't exist
        json.JSONDecodeError: If the file contains invalid JSON
    """
    with open(file_path, 'r', encoding='utf-8') as f:
        return json.load(f)
