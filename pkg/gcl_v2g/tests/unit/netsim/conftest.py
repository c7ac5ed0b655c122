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

import pytest

from gcl_v2g.netsim import network

NodeKind = network.NodeKind


def host(name: str, *peers: str, role: str = "host") -> network.NodeSpec:
    return network.NodeSpec(
        name, NodeKind.HOST, [network.LinkSpec(p) for p in peers], role=role
    )


def switch(name: str, *peers: str) -> network.NodeSpec:
    return network.NodeSpec(
        name, NodeKind.SWITCH, [network.LinkSpec(p) for p in peers]
    )


def run_process(sim: network.Simulation, process, limit: int | None = None):
    """Run `process` to completion and return its result."""
    future = sim.spawn(process)
    sim.run(limit)
    return future.result()


@pytest.fixture
def lan() -> network.Simulation:
    """Hosts a, b and c on one switch."""
    return network.build_network(
        [host("a", "sw"), host("b", "sw"), host("c", "sw"), switch("sw")]
    )


@pytest.fixture
def two_hops() -> network.Simulation:
    """a - sw1 - sw2 - b"""
    return network.build_network(
        [
            host("a", "sw1"),
            switch("sw1", "sw2"),
            switch("sw2", "b"),
            host("b"),
        ]
    )
