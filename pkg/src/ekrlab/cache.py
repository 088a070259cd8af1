"""Write-once, content-addressed JSON result cache."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

ENV_VAR = "EKRLAB_CACHE"
DEFAULT_DIR = ".ekrlab-cache"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(command: str, args: dict, version: str) -> str:
    blob = canonical_json({"command": command, "args": args, "version": version})
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    payload: dict
    created: float
    tool_version: str


class ResultCache:
    def __init__(self, root: str | os.PathLike | None = None):
        root = root or os.environ.get(ENV_VAR) or DEFAULT_DIR
        self.root = Path(root)

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> CacheEntry | None:
        path = self._path(key)
        try:
            raw = path.read_text()
        except FileNotFoundError:
            return None
        doc = json.loads(raw)
        return CacheEntry(doc["key"], doc["payload"], doc["created"], doc["tool_version"])

    def put(self, key: str, payload: dict, tool_version: str) -> CacheEntry:
        """Store ``payload`` unless ``key`` already exists; returns the surviving entry."""
        existing = self.get(key)
        if existing is not None:
            return existing
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = CacheEntry(key, payload, time.time(), tool_version)
        doc = {"key": key, "payload": payload, "created": entry.created, "tool_version": tool_version}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(doc))
                fh.flush()
                os.fsync(fh.fileno())
            try:
                # link() refuses to overwrite, so the first complete writer wins
                os.link(tmp, path)
            except FileExistsError:
                return self.get(key)  # type: ignore[return-value]
        finally:
            os.unlink(tmp)
        return entry
