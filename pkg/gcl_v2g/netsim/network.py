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
import enum
import logging
import random
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import capture
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import host as net_host
from gcl_v2g.netsim import node
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.netsim import switch as net_switch

LOG = logging.getLogger(__name__)


class NodeKind(str, enum.Enum):
    HOST = "host"
    SWITCH = "switch"


@dataclasses.dataclass(frozen=True)
class LinkSpec:
    peer: str
    latency: int | None = None


@dataclasses.dataclass
class NodeSpec:
    name: str
    kind: NodeKind = NodeKind.HOST
    links: list[LinkSpec] = dataclasses.field(default_factory=list)
    link_address: addresses.LinkAddress | None = None
    net_address: addresses.NetAddress | None = None
    role: str = "host"


class Simulation:
    """One emulated world: nodes, their links, the clock and the capture."""

    def __init__(self, seed: int = constants.DEFAULT_SEED) -> None:
        self.seed = seed
        self.rng = random.Random(seed)
        self.scheduler = sched.EventScheduler()
        self.nodes: dict[str, node.Node] = {}
        self.links: list[node.Link] = []
        self.capture: list[capture.CaptureRecord] = []

    @property
    def now(self) -> int:
        return self.scheduler.now

    def record(
        self,
        at: node.Node,
        direction: constants.Direction,
        port: int,
        frame: frames.Frame,
    ) -> None:
        self.capture.append(
            capture.CaptureRecord(self.scheduler.now, at.name, direction, port, frame)
        )

    def host(self, name: str) -> net_host.Host:
        found = self.nodes.get(name)
        if not isinstance(found, net_host.Host):
            raise KeyError(f"No host named {name}")
        return found

    def switch(self, name: str) -> net_switch.Switch:
        found = self.nodes.get(name)
        if not isinstance(found, net_switch.Switch):
            raise KeyError(f"No switch named {name}")
        return found

    def hosts(self, role: str | None = None) -> list[net_host.Host]:
        return [
            n
            for n in self.nodes.values()
            if isinstance(n, net_host.Host) and (role is None or n.role == role)
        ]

    def spawn(self, process: sched.Process, name: str = "process") -> sched.SimProcess:
        return self.scheduler.spawn(process, name)

    def run(self, until: int | None = None) -> None:
        self.scheduler.run(until)

    def run_until_complete(
        self, future: sched.SimFuture, limit: int | None = None
    ) -> bool:
        """Run until `future` is done; False when `limit` came first."""
        while not future.done():
            when = self.scheduler.next_time()
            if when is None or (limit is not None and when > limit):
                return False
            self.scheduler.step()
        return True

    def link(
        self, a: node.Node, b: node.Node, latency: int | None = None
    ) -> node.Link:
        a_port = _next_port(a)
        b_port = _next_port(b)
        if latency is None:
            latency = node.DEFAULT_LATENCY
        link = node.Link(a, a_port, b, b_port, latency)
        a.attach(a_port, link)
        b.attach(b_port, link)
        self.links.append(link)
        return link


def _next_port(n: node.Node) -> int:
    if isinstance(n, net_host.Host):
        if n.ports:
            raise net_exc.InvalidTopology(
                reason=f"host {n.name} has more than one link"
            )
        return net_host.INTERFACE_PORT
    return len(n.ports) + 1


def _check_unique(
    specs: tp.Sequence[NodeSpec], field: str, derive: tp.Callable[[str], tp.Any]
) -> dict[str, tp.Any]:
    owners: dict[tp.Any, str] = {}
    values: dict[str, tp.Any] = {}
    for spec in specs:
        if spec.kind is not NodeKind.HOST:
            continue
        value = getattr(spec, field) or derive(spec.name)
        if value in owners:
            raise net_exc.AddressCollision(
                address=str(value), first=owners[value], second=spec.name
            )
        owners[value] = spec.name
        values[spec.name] = value
    return values


def build_network(
    specs: tp.Sequence[NodeSpec], seed: int = constants.DEFAULT_SEED
) -> Simulation:
    """Instantiate nodes and links.

    Unset addresses are derived from node names. A link may be listed on
    either side or on both; it is created once. Switch ports are numbered
    from 1 in the order links are created.
    """
    names: set[str] = set()
    for spec in specs:
        if spec.name in names:
            raise net_exc.DuplicateName(name=spec.name)
        names.add(spec.name)
    for spec in specs:
        for link in spec.links:
            if link.peer not in names:
                raise net_exc.DanglingLink(name=spec.name, peer=link.peer)
            if link.peer == spec.name:
                raise net_exc.InvalidTopology(reason=f"{spec.name} links to itself")

    links = _check_unique(specs, "link_address", addresses.LinkAddress.derive)
    nets = _check_unique(specs, "net_address", addresses.NetAddress.derive)

    sim = Simulation(seed)
    for spec in specs:
        if spec.kind is NodeKind.SWITCH:
            sim.nodes[spec.name] = net_switch.Switch(sim, spec.name)
        else:
            sim.nodes[spec.name] = net_host.Host(
                sim, spec.name, links[spec.name], nets[spec.name], spec.role
            )

    created: set[frozenset[str]] = set()
    for spec in specs:
        for link in spec.links:
            pair = frozenset((spec.name, link.peer))
            if pair in created:
                continue
            created.add(pair)
            sim.link(sim.nodes[spec.name], sim.nodes[link.peer], link.latency)

    LOG.debug("Built network of %d nodes and %d links", len(sim.nodes), len(created))
    return sim
