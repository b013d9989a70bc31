# storage.py
import json
import os
import sys
import logging
import tempfile
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def read_text(path: str | Path) -> str:
    """Read a UTF-8 document."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    logger.debug(f"Read {len(text)} characters from {path}")
    return text


def write_text_atomic(path: str | Path, text: str):
    """Write text via a temp file in the target directory, then rename over the target."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_name, target)
    except Exception:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    logger.info(f"Saved {len(text)} characters to {target}")


def emit(text: str, path: str | Path | None = None):
    """Write to ``path`` atomically, or to stdout when no path (or ``-``) is given."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    write_text_atomic(path, text)


def save_json(path: str | Path, payload: Any):
    write_text_atomic(path, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
