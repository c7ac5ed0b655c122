#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

from __future__ import annotations

import os
import typing as tp

import orjson
import xxhash


def rw_owner_opener(path, flags):
    return os.open(path, flags, 0o600)


def calculate_hash(
    value: tp.Any, hash_method: tp.Callable[[], tp.Any] = xxhash.xxh3_64
) -> str:
    m = hash_method()
    m.update(orjson.dumps(value, option=orjson.OPT_SORT_KEYS))
    return m.hexdigest()


def dump_json(path: str, value: tp.Any, private: bool = False) -> None:
    """Write `value` as indented JSON, atomically replacing `path`."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)

    tmp_file = f"{path}.tmp"
    opener = rw_owner_opener if private else None
    with open(tmp_file, "wb", opener=opener) as f:
        f.write(orjson.dumps(value, option=orjson.OPT_INDENT_2))
        f.write(b"\n")
    os.replace(tmp_file, path)


def load_json(path: str) -> tp.Any:
    with open(path, "rb") as f:
        return orjson.loads(f.read())
