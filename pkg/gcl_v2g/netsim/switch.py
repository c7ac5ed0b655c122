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

"""Learning switch with a prioritized flow table.

A frame is decided by the highest-priority matching rule (insertion order
breaks ties) or, when nothing matches, by the Normal learning behavior.
Every frame teaches the switch where its source link address lives.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import logging
import typing as tp

from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import node

LOG = logging.getLogger(__name__)


class ActionKind(str, enum.Enum):
    NORMAL = "Normal"
    REDIRECT_TO_PORT = "RedirectToPort"
    DROP = "Drop"


@dataclasses.dataclass(frozen=True)
class Action:
    kind: ActionKind
    port: int | None = None

    def __post_init__(self) -> None:
        if (self.kind is ActionKind.REDIRECT_TO_PORT) != (self.port is not None):
            raise ValueError("Only RedirectToPort carries a port")


NORMAL = Action(ActionKind.NORMAL)
DROP = Action(ActionKind.DROP)


def redirect_to_port(port: int) -> Action:
    return Action(ActionKind.REDIRECT_TO_PORT, port)


@dataclasses.dataclass(frozen=True)
class FlowMatch:
    """Unset fields match anything."""

    in_port: int | None = None
    src_link: addresses.LinkAddress | None = None
    dst_link: addresses.LinkAddress | None = None
    kind: frames.FrameKind | None = None
    src_port: int | None = None
    dst_port: int | None = None

    def matches(self, in_port: int, frame: frames.Frame) -> bool:
        return (
            (self.in_port is None or self.in_port == in_port)
            and (self.src_link is None or self.src_link == frame.src_link)
            and (self.dst_link is None or self.dst_link == frame.dst_link)
            and (self.kind is None or self.kind is frame.kind)
            and (self.src_port is None or self.src_port == frame.src_port)
            and (self.dst_port is None or self.dst_port == frame.dst_port)
        )


@dataclasses.dataclass(frozen=True)
class FlowRule:
    priority: int
    match: FlowMatch
    action: Action
    cookie: str = ""


@dataclasses.dataclass
class SwitchState:
    ports: list[int] = dataclasses.field(default_factory=list)
    table: dict[addresses.LinkAddress, int] = dataclasses.field(default_factory=dict)
    rules: list[tuple[int, int, FlowRule]] = dataclasses.field(default_factory=list)
    _order: tp.Iterator[int] = dataclasses.field(
        default_factory=itertools.count, repr=False
    )

    def add_rule(self, rule: FlowRule) -> None:
        self.rules.append((-rule.priority, next(self._order), rule))
        self.rules.sort(key=lambda entry: entry[:2])

    def remove_rules(self, cookie: str) -> int:
        before = len(self.rules)
        self.rules = [entry for entry in self.rules if entry[2].cookie != cookie]
        return before - len(self.rules)

    def lookup(self, in_port: int, frame: frames.Frame) -> FlowRule | None:
        for _, _, rule in self.rules:
            if rule.match.matches(in_port, frame):
                return rule
        return None


def switch_forward(
    state: SwitchState, in_port: int, frame: frames.Frame
) -> list[tuple[int, frames.Frame]]:
    """Decide the egress ports of a frame entering through `in_port`."""
    if not frame.src_link.is_multicast:
        state.table[frame.src_link] = in_port

    rule = state.lookup(in_port, frame)
    action = rule.action if rule is not None else NORMAL

    if action.kind is ActionKind.DROP:
        return []
    if action.kind is ActionKind.REDIRECT_TO_PORT:
        if action.port == in_port or action.port not in state.ports:
            return []
        return [(action.port, frame)]

    if not frame.dst_link.is_multicast:
        port = state.table.get(frame.dst_link)
        if port is not None:
            return [] if port == in_port else [(port, frame)]
    return [(port, frame) for port in state.ports if port != in_port]


class Switch(node.Node):
    def __init__(self, sim, name: str) -> None:
        super().__init__(sim, name)
        self.state = SwitchState()

    def attach(self, port: int, link: node.Link) -> None:
        super().attach(port, link)
        self.state.ports.append(port)

    def port_to(self, peer: node.Node) -> int | None:
        for port, link in self.ports.items():
            if link.peer_of(self)[0] is peer:
                return port
        return None

    def add_rule(self, rule: FlowRule) -> None:
        LOG.debug("%s: flow rule %s", self.name, rule)
        self.state.add_rule(rule)

    def remove_rules(self, cookie: str) -> int:
        return self.state.remove_rules(cookie)

    def handle(self, port: int, frame: frames.Frame) -> None:
        for egress, out in switch_forward(self.state, port, frame):
            self.transmit(egress, out)
