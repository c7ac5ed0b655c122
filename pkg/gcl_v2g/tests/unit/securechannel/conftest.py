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

from gcl_v2g.securechannel import handshake
from gcl_v2g.securechannel import identity as sc_identity

BINDING = handshake.EndpointBinding(bytes(16), 50000, bytes(range(16)), 15118)


@pytest.fixture
def root() -> sc_identity.Identity:
    return sc_identity.generate_identity("root", None, random.Random("root"))


@pytest.fixture
def server_identity(root) -> sc_identity.Identity:
    return sc_identity.generate_identity("se1", root, random.Random("se1"))
