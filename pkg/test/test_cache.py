import json
from pathlib import Path
from typing import Any, Dict, List

import pytest

from pyns2.cache import FILE_MAGIC, ResultCache, cache_key, canonical


def counting(calls: List[int], value: Any) -> Any:
    def compute() -> Any:
        calls.append(1)
        return value

    return compute


def test_canonical_is_order_free() -> None:
    assert canonical({"b": 1, "a": [1, 2]}) == canonical({"a": [1, 2], "b": 1})
    assert canonical({"a": 1}) == '{"a":1}'


def test_roundtrip(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    cache = ResultCache(str(tmp_path))
    assert cache.enabled
    calls: List[int] = []
    payload: Dict[str, Any] = {"entries": [["1", "1/2"]], "level": "1"}
    first = cache.cached("gram", {"h": "0"}, counting(calls, payload))
    second = cache.cached("gram", {"h": "0"}, counting(calls, payload))
    assert first == second == payload
    assert len(calls) == 1
    assert "cache hit gram" in capsys.readouterr().err

    # different parameters never share an entry
    cache.cached("gram", {"h": "1"}, counting(calls, payload))
    assert len(calls) == 2
    assert len(list(tmp_path.glob("*.json"))) == 2


def test_payload_is_json_normalised(tmp_path: Path) -> None:
    cache = ResultCache(str(tmp_path))
    assert cache.cached("op", {}, lambda: {"t": (1, 2)}) == {"t": [1, 2]}


def test_version_mismatch_is_miss(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    cache = ResultCache(str(tmp_path))
    key = cache_key("op", {"x": 1})
    cache.put(key, {"v": 1})
    assert cache.get(key) == {"v": 1}
    monkeypatch.setattr("pyns2.cache.ENGINE_VERSION", "0-other")
    assert cache.get(key) is None


def test_damaged_files_are_misses(tmp_path: Path) -> None:
    cache = ResultCache(str(tmp_path))
    key = cache_key("op", {"x": 1})
    cache.put(key, {"v": 1})
    path = Path(cache.path(key))

    path.write_text("{not json")
    assert cache.get(key) is None

    entry = {"magic": "something-else", "version": "1", "key": key, "payload": 1}
    path.write_text(json.dumps(entry))
    assert cache.get(key) is None

    entry = {"magic": FILE_MAGIC, "version": "1", "key": cache_key("op", {"x": 2}), "payload": 1}
    path.write_text(json.dumps(entry))
    assert cache.get(key) is None


def test_unusable_directory_disables(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("")
    cache = ResultCache(str(blocker / "sub"))
    assert not cache.enabled
    assert "caching disabled" in capsys.readouterr().err
    calls: List[int] = []
    cache.cached("op", {}, counting(calls, 1))
    cache.cached("op", {}, counting(calls, 1))
    assert len(calls) == 2


def test_no_directory() -> None:
    cache = ResultCache(None)
    assert not cache.enabled
    cache.put(cache_key("op", {}), 1)
    assert cache.get(cache_key("op", {})) is None
