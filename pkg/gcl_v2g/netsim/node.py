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

import dataclasses
import logging
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.netsim import frames

if tp.TYPE_CHECKING:
    from gcl_v2g.netsim import network

LOG = logging.getLogger(__name__)

DEFAULT_LATENCY = 1 * constants.MSEC


@dataclasses.dataclass
class Link:
    a: Node
    a_port: int
    b: Node
    b_port: int
    latency: int = DEFAULT_LATENCY

    def peer_of(self, node: Node) -> tuple[Node, int]:
        if node is self.a:
            return self.b, self.b_port
        return self.a, self.a_port


class Node:
    """Anything with ports: frames leave through `transmit`, enter via `receive`."""

    def __init__(self, sim: network.Simulation, name: str) -> None:
        self.sim = sim
        self.name = name
        self.ports: dict[int, Link] = {}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    @property
    def scheduler(self):
        return self.sim.scheduler

    def attach(self, port: int, link: Link) -> None:
        self.ports[port] = link

    def transmit(self, port: int, frame: frames.Frame) -> None:
        link = self.ports.get(port)
        if link is None:
            LOG.debug("%s: port %s is not connected, frame dropped", self.name, port)
            return
        self.sim.record(self, constants.Direction.OUT, port, frame)
        peer, peer_port = link.peer_of(self)
        self.scheduler.call_later(link.latency, peer.receive, peer_port, frame)

    def receive(self, port: int, frame: frames.Frame) -> None:
        self.sim.record(self, constants.Direction.IN, port, frame)
        self.handle(port, frame)

    def handle(self, port: int, frame: frames.Frame) -> None:
        raise NotImplementedError
