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

import random

import pytest

from gcl_v2g.codec import doc

_NAMES = ["a", "b", "body", "header", "sessionId", "x-y", "n_1", "élan"]
_ALPHABET = "abcXYZ019 <>&\"'\t\n\ré€-_."


def _string(rng: random.Random, size: int = 8) -> str:
    return "".join(rng.choice(_ALPHABET) for _ in range(rng.randint(0, size)))


def random_tree(rng: random.Random, depth: int = 3) -> doc.DocNode:
    attr_names = rng.sample(_NAMES, rng.randint(0, 2))
    attributes = tuple((name, _string(rng)) for name in attr_names)
    if depth == 0 or rng.random() < 0.4:
        return doc.DocNode(
            name=rng.choice(_NAMES),
            attributes=attributes,
            text=_string(rng) if rng.random() < 0.7 else None,
        )
    return doc.DocNode(
        name=rng.choice(_NAMES),
        attributes=attributes,
        children=tuple(
            random_tree(rng, depth - 1) for _ in range(rng.randint(1, 3))
        ),
    )


@pytest.fixture
def tree_factory():
    return random_tree
