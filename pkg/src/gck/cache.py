"""On-disk character table cache.

Tables are stored as JSON under a file named by the SHA-256 of the group key.
Entries are re-checked for orthonormality on load; a bad entry is reported
with a warning and recomputed.  Writes go through a temporary file and
``os.replace`` so concurrent processes never observe partial files.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .chars import CharacterTable, _dixon, register_table
from .errors import GCKError, OrderCapExceeded
from .group_core import DEFAULT_ORDER_CAP, Group

log = logging.getLogger(__name__)

ENV_VAR = "GCK_CACHE_DIR"


class CacheCorrupt(GCKError):
    code = "cache_corrupt"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "gck"


def resolve_cache_dir(flag: str | None = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else default_cache_dir()


def cache_path(G: Group, cache_dir: Path) -> Path:
    return cache_dir / f"{hashlib.sha256(G.key.encode()).hexdigest()}.json"


def _load(G: Group, path: Path) -> CharacterTable:
    try:
        data = json.loads(path.read_text())
        table = CharacterTable.from_json(G, data)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError, GCKError) as exc:
        raise CacheCorrupt(f"unreadable cache entry {path.name}: {exc}") from None
    if len(table) != len(G.classes) or not table.is_orthonormal():
        raise CacheCorrupt(f"cache entry {path.name} fails the orthogonality check")
    return table


def _store(table: CharacterTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(table.to_json(), fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_get_or_compute(
    G: Group, cache_dir: Path | None = None, enabled: bool = True, cap: int = DEFAULT_ORDER_CAP
) -> tuple[CharacterTable, str]:
    """The character table of ``G`` and how it was obtained: "hit", "miss", "recomputed" or "disabled"."""
    if G.order > cap:
        raise OrderCapExceeded(f"character tables limited to order {cap}", cap=cap, order=G.order)
    if not enabled or cache_dir is None:
        table = _dixon(G)
        register_table(table)
        return table, "disabled"
    path = cache_path(G, cache_dir)
    status = "miss"
    if path.exists():
        try:
            table = _load(G, path)
            register_table(table)
            return table, "hit"
        except CacheCorrupt as exc:
            log.warning("%s; recomputing", exc)
            status = "recomputed"
    table = _dixon(G)
    try:
        _store(table, path)
    except OSError as exc:
        log.warning("could not write cache entry %s: %s", path, exc)
    register_table(table)
    return table, status


def cache_entries(cache_dir: Path) -> list[Path]:
    if not cache_dir.is_dir():
        return []
    return sorted(p for p in cache_dir.glob("*.json") if not p.name.startswith(".tmp-"))


def clear_cache(cache_dir: Path) -> int:
    n = 0
    for p in cache_entries(cache_dir):
        p.unlink()
        n += 1
    return n
