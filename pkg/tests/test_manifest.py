"""Artifact I/O: canonical hashing, atomic writes, JSONL meta headers."""

from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fedsent import manifest
from fedsent.errors import DataError

json_scalars = st.one_of(
    st.none(), st.booleans(), st.integers(-1000, 1000), st.floats(allow_nan=False, allow_infinity=False), st.text(max_size=20)
)


@given(st.dictionaries(st.text(min_size=1, max_size=10), json_scalars, max_size=8))
def test_config_hash_is_key_order_invariant(config):
    items = list(config.items())
    reordered = dict(reversed(items))
    assert manifest.config_hash(config) == manifest.config_hash(reordered)


def test_config_hash_distinguishes_values():
    assert manifest.config_hash({"a": 1}) != manifest.config_hash({"a": 2})


def test_atomic_write_leaves_no_partial(tmp_path):
    target = tmp_path / "artifact.json"
    manifest.write_json(target, {"x": 1})
    assert target.exists()
    assert list(tmp_path.glob("*.partial")) == []


def test_write_json_round_trip(tmp_path):
    target = tmp_path / "artifact.json"
    payload = {"values": [1.5, 2.25], "name": "run"}
    manifest.write_json(target, payload, meta=manifest.build_meta("stage", {"seed": 1}))
    loaded = manifest.read_json(target)
    assert loaded["values"] == [1.5, 2.25]
    assert loaded[manifest.META_KEY]["stage"] == "stage"
    assert loaded[manifest.META_KEY]["config_hash"] == manifest.config_hash({"seed": 1})


def test_write_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    meta = manifest.build_meta("s", {"seed": 3}, seeds={"seed": 3})
    manifest.write_json(a, {"k": [1, 2]}, meta=meta)
    manifest.write_json(b, {"k": [1, 2]}, meta=meta)
    assert a.read_bytes() == b.read_bytes()


def test_jsonl_meta_header_round_trip(tmp_path):
    target = tmp_path / "rows.jsonl"
    rows = [{"id": "a", "v": 1}, {"id": "b", "v": 2}]
    n = manifest.write_jsonl(target, rows, meta=manifest.build_meta("rows", {}))
    assert n == 2
    records, meta = manifest.read_jsonl(target)
    assert records == rows
    assert meta is not None and meta["stage"] == "rows"
    first_line = target.read_text().splitlines()[0]
    assert manifest.META_KEY in json.loads(first_line)


def test_jsonl_without_meta(tmp_path):
    target = tmp_path / "rows.jsonl"
    manifest.write_jsonl(target, [{"id": "a"}])
    records, meta = manifest.read_jsonl(target)
    assert records == [{"id": "a"}] and meta is None


def test_read_json_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    with pytest.raises(DataError):
        manifest.read_json(bad)


def test_read_missing_file_raises(tmp_path):
    with pytest.raises(DataError):
        manifest.read_json(tmp_path / "absent.json")


def test_sha256_file_matches_known_digest(tmp_path):
    target = tmp_path / "blob.bin"
    target.write_bytes(b"abc")
    assert manifest.sha256_file(target) == (
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )
