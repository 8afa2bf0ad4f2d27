"""On-disk JSON cache for fusion tables and homology reports."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from pathlib import Path

SCHEMA_VERSION = 1
ENV_VAR = "VERLINDE_CACHE_DIR"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "verlinde"


def resolve_cache_dir(flag: str | os.PathLike | None = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else default_cache_dir()


class ResultCache:
    """Keyed by ``(schema version, kind, type, level, truncation)``."""

    def __init__(self, root: str | os.PathLike, schema_version: int = SCHEMA_VERSION):
        self.root = Path(root)
        self.schema_version = schema_version

    def path_for(self, kind: str, type_name: str, level: int, trunc: int | None = None,
                 extra: str = "") -> Path:
        parts = [f"v{self.schema_version}", kind, type_name, f"k{level}"]
        if trunc is not None:
            parts.append(f"L{trunc}")
        if extra:
            parts.append(hashlib.sha256(extra.encode()).hexdigest()[:12])
        return self.root / ("-".join(parts) + ".json")

    def load(self, path: Path) -> str | None:
        try:
            text = path.read_text(encoding="utf-8")
            json.loads(text)
        except FileNotFoundError:
            return None
        except (OSError, UnicodeDecodeError, ValueError) as exc:
            warnings.warn(f"ignoring unreadable cache entry {path}: {exc}", RuntimeWarning, stacklevel=2)
            return None
        return text

    def store(self, path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
