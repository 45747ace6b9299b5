from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from typing import Any, Callable, Dict, Optional

from . import ENGINE_VERSION

FILE_MAGIC = "pyns2-result"


def canonical(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def cache_key(op: str, params: Dict[str, Any]) -> Dict[str, Any]:
    return {"op": op, "params": params}


class ResultCache:
    """
    JSON results on disk, one file per key, named by the SHA-256 of the
    canonical key. A file with the wrong magic or engine version is a miss.
    """

    def __init__(self, directory: Optional[str]):
        self.directory = directory
        self.enabled = directory is not None
        if directory is not None:
            try:
                os.makedirs(directory, exist_ok=True)
                if not os.access(directory, os.W_OK):
                    raise PermissionError(f"{directory} is not writable")
            except OSError as ex:
                self.disable(f"cache directory {directory} unusable ({ex})")

    def disable(self, why: str) -> None:
        print(f"Warning: {why}, caching disabled", file=sys.stderr)
        self.enabled = False

    def path(self, key: Dict[str, Any]) -> str:
        assert self.directory is not None
        digest = hashlib.sha256(canonical(key).encode()).hexdigest()
        return os.path.join(self.directory, f"{digest}.json")

    def get(self, key: Dict[str, Any]) -> Optional[Any]:
        if not self.enabled:
            return None
        try:
            with open(self.path(key)) as f:
                entry = json.load(f)
        except (OSError, ValueError):
            return None
        if not isinstance(entry, dict):
            return None
        if entry.get("magic") != FILE_MAGIC or entry.get("version") != ENGINE_VERSION:
            return None
        if entry.get("key") != key:
            return None
        return entry.get("payload")

    def put(self, key: Dict[str, Any], payload: Any) -> None:
        if not self.enabled:
            return
        entry = {"magic": FILE_MAGIC, "version": ENGINE_VERSION, "key": key, "payload": payload}
        target = self.path(key)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as f:
                    f.write(canonical(entry))
                os.replace(tmp, target)
            except BaseException:
                os.unlink(tmp)
                raise
        except OSError as ex:
            self.disable(f"cannot write {target} ({ex})")

    def cached(self, op: str, params: Dict[str, Any], compute: Callable[[], Any]) -> Any:
        key = cache_key(op, params)
        payload = self.get(key)
        if payload is not None:
            print(f"cache hit {op} {canonical(params)}", file=sys.stderr)
            return payload
        # round trip through JSON so that cold and warm runs emit the same bytes
        payload = json.loads(canonical(compute()))
        self.put(key, payload)
        return payload
