from typing import Iterator

import settings.config as cfg


def content_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yields (1-based line number, line) for every non-blank, non-comment line."""
    for number, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, line


def column_of(line: str, token: str, start: int = 0) -> int:
    idx = line.find(token, start)
    return idx + 1 if idx >= 0 else 1


def format_value(value: float) -> str:
    return f"{value:.{cfg.CSV_DECIMALS}f}"


def split_list(value: str, sep: str = ",") -> list[str]:
    return [part.strip() for part in value.split(sep) if part.strip()]
