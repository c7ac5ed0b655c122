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

import collections
import dataclasses
import logging
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import node
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.netsim import stream as net_stream

LOG = logging.getLogger(__name__)

INTERFACE_PORT = 0

SOLICITATIONS = 3
SOLICITATION_INTERVAL = 100 * constants.MSEC
NEIGHBOR_LIFETIME = 30 * constants.SEC
ADVERTISEMENT_DELAY = 1 * constants.MSEC

EPHEMERAL_PORTS = range(49152, 65536)

FrameHook = tp.Callable[[frames.Frame], bool]
AcceptFilter = tp.Callable[[frames.Frame], bool]


@dataclasses.dataclass(frozen=True)
class NeighborEntry:
    link: addresses.LinkAddress
    expires: int


class Datagram(tp.NamedTuple):
    payload: bytes
    src_net: addresses.NetAddress
    src_port: int
    dst_net: addresses.NetAddress


class _Waiting:
    """FIFO of items with at most one waiting reader."""

    def __init__(self, scheduler: sched.EventScheduler, what: str) -> None:
        self._scheduler = scheduler
        self._what = what
        self._items: collections.deque = collections.deque()
        self._waiter: sched.SimFuture | None = None

    def put(self, item: tp.Any) -> None:
        self._items.append(item)
        waiter, self._waiter = self._waiter, None
        if waiter is not None and not waiter.done():
            waiter.set_result(None)

    def get(self, timeout: int | None) -> sched.Process:
        while not self._items:
            self._waiter = sched.SimFuture(self._scheduler, self._what)
            yield sched.wait_for(self._scheduler, self._waiter, timeout)
        return self._items.popleft()


class DatagramSocket:
    def __init__(self, host: Host, port: int) -> None:
        self.host = host
        self.port = port
        self._queue = _Waiting(host.scheduler, f"datagram on {host.name}:{port}")

    def deliver(self, datagram: Datagram) -> None:
        self._queue.put(datagram)

    def recv(self, timeout: int | None = None) -> sched.Process:
        return (yield from self._queue.get(timeout))

    def sendto(
        self, payload: bytes, address: addresses.NetAddress, port: int
    ) -> sched.Process:
        if len(payload) > frames.MAX_DATAGRAM_PAYLOAD:
            raise net_exc.PayloadTooLarge(
                size=len(payload), limit=frames.MAX_DATAGRAM_PAYLOAD
            )
        link = yield from self.host.resolve(address)
        self.host.send_frame(
            frames.Frame(
                src_link=self.host.link_address,
                dst_link=link,
                kind=frames.FrameKind.DATAGRAM,
                payload=payload,
                src_net=self.host.net_address,
                dst_net=address,
                src_port=self.port,
                dst_port=port,
            )
        )

    def close(self) -> None:
        self.host.datagram_sockets.pop(self.port, None)


class Listener:
    def __init__(
        self,
        host: Host,
        port: int,
        transparent: bool = False,
        accept_filter: AcceptFilter | None = None,
    ) -> None:
        self.host = host
        self.port = port
        self.transparent = transparent
        self.accept_filter = accept_filter
        self._queue = _Waiting(host.scheduler, f"accept on {host.name}:{port}")

    def wants(self, frame: frames.Frame) -> bool:
        if frame.dst_net != self.host.net_address and not self.transparent:
            return False
        return self.accept_filter is None or self.accept_filter(frame)

    def deliver(self, stream: net_stream.Stream) -> None:
        self._queue.put(stream)

    def accept(self, timeout: int | None = None) -> sched.Process:
        return (yield from self._queue.get(timeout))

    def close(self) -> None:
        self.host.listeners.pop(self.port, None)


class Host(node.Node):
    """End host with a single interface on port 0."""

    def __init__(
        self,
        sim,
        name: str,
        link_address: addresses.LinkAddress,
        net_address: addresses.NetAddress,
        role: str = "host",
    ) -> None:
        super().__init__(sim, name)
        self.link_address = link_address
        self.net_address = net_address
        self.role = role
        self.neighbors: dict[addresses.NetAddress, NeighborEntry] = {}
        self.datagram_sockets: dict[int, DatagramSocket] = {}
        self.listeners: dict[int, Listener] = {}
        self.streams: dict[net_stream.StreamKey, net_stream.Stream] = {}
        self.promiscuous = False
        self.frame_hook: FrameHook | None = None
        self._resolving: dict[addresses.NetAddress, sched.SimFuture] = {}
        self._next_port = EPHEMERAL_PORTS.start

    # Neighbor discovery

    def cached(self, target: addresses.NetAddress) -> addresses.LinkAddress | None:
        entry = self.neighbors.get(target)
        if entry is None or entry.expires <= self.scheduler.now:
            return None
        return entry.link

    def resolve(self, target: addresses.NetAddress) -> sched.Process:
        """Link address of `target`, soliciting it when not cached."""
        if target.is_multicast:
            return addresses.link_for_group(target)
        if target == self.net_address:
            return self.link_address
        link = self.cached(target)
        if link is not None:
            return link
        future = self._resolving.get(target)
        if future is None:
            future = sched.SimFuture(self.scheduler, f"resolve {target}")
            self._resolving[target] = future
            self.scheduler.spawn(self._solicit(target, future), f"solicit {target}")
        return (yield future)

    def _solicit(
        self, target: addresses.NetAddress, future: sched.SimFuture
    ) -> sched.Process:
        for _ in range(SOLICITATIONS):
            if future.done():
                return
            self.send_frame(
                frames.neighbor_solicitation(
                    self.link_address, self.net_address, target
                )
            )
            yield sched.sleep(self.scheduler, SOLICITATION_INTERVAL)
        if not future.done():
            del self._resolving[target]
            future.set_exception(net_exc.ResolveTimeout(address=str(target)))

    def _on_solicitation(self, frame: frames.Frame) -> None:
        if frames.solicited(frame) != self.net_address:
            return
        self.scheduler.call_later(
            ADVERTISEMENT_DELAY,
            self.send_frame,
            frames.neighbor_advertisement(
                self.link_address, frame.src_link, self.net_address, frame.src_net
            ),
        )

    def _on_advertisement(self, frame: frames.Frame) -> None:
        target, link = frames.advertised(frame)
        future = self._resolving.pop(target, None)
        if future is None:
            return
        self.neighbors[target] = NeighborEntry(
            link, self.scheduler.now + NEIGHBOR_LIFETIME
        )
        LOG.debug("%s: %s is at %s", self.name, target, link)
        future.set_result(link)

    # Sockets

    def _allocate_port(self, used: tp.Container[int]) -> int:
        for _ in EPHEMERAL_PORTS:
            port = self._next_port
            self._next_port += 1
            if self._next_port >= EPHEMERAL_PORTS.stop:
                self._next_port = EPHEMERAL_PORTS.start
            if port not in used:
                return port
        raise net_exc.PortInUse(port=0, host=self.name)

    def bind(self, port: int | None = None) -> DatagramSocket:
        if port is None:
            port = self._allocate_port(self.datagram_sockets)
        if port in self.datagram_sockets:
            raise net_exc.PortInUse(port=port, host=self.name)
        sock = DatagramSocket(self, port)
        self.datagram_sockets[port] = sock
        return sock

    def listen(
        self,
        port: int,
        transparent: bool = False,
        accept_filter: AcceptFilter | None = None,
    ) -> Listener:
        if port in self.listeners:
            raise net_exc.PortInUse(port=port, host=self.name)
        listener = Listener(self, port, transparent, accept_filter)
        self.listeners[port] = listener
        return listener

    def connect(
        self,
        address: addresses.NetAddress,
        port: int,
        source: addresses.NetAddress | None = None,
    ) -> sched.Process:
        """Open a stream to [address]:port.

        `source` overrides the local address, which is how a transparent
        proxy speaks on behalf of another host.
        """
        link = yield from self.resolve(address)
        local_ports = {key.local_port for key in self.streams}
        key = net_stream.StreamKey(
            source or self.net_address,
            self._allocate_port(local_ports),
            address,
            port,
        )
        stream = net_stream.Stream(self, key, link)
        self.streams[key] = stream
        yield from stream.open()
        return stream

    def forget_stream(self, key: net_stream.StreamKey) -> None:
        self.streams.pop(key, None)

    def send_segment(self, stream: net_stream.Stream, segment: frames.Segment) -> None:
        self.send_frame(
            frames.Frame(
                src_link=self.link_address,
                dst_link=stream.peer_link,
                kind=frames.FrameKind.STREAM_SEGMENT,
                payload=segment.to_bytes(),
                src_net=stream.local_net,
                dst_net=stream.remote_net,
                src_port=stream.local_port,
                dst_port=stream.remote_port,
            )
        )

    def _on_segment(self, frame: frames.Frame) -> None:
        segment = frame.segment()
        key = net_stream.StreamKey(
            frame.dst_net, frame.dst_port, frame.src_net, frame.src_port
        )
        stream = self.streams.get(key)
        if stream is not None:
            stream.on_segment(segment)
            return

        flags = segment.flags
        if not flags & frames.SegmentFlags.SYN or flags & frames.SegmentFlags.ACK:
            return
        listener = self.listeners.get(frame.dst_port)
        if listener is not None and listener.wants(frame):
            stream = net_stream.Stream(self, key, frame.src_link)
            self.streams[key] = stream
            stream.accept(segment)
            listener.deliver(stream)
        elif frame.dst_net == self.net_address:
            self.send_frame(
                frame.replace(
                    src_link=self.link_address,
                    dst_link=frame.src_link,
                    src_net=frame.dst_net,
                    dst_net=frame.src_net,
                    src_port=frame.dst_port,
                    dst_port=frame.src_port,
                    payload=frames.Segment(
                        frames.SegmentFlags.RST | frames.SegmentFlags.ACK,
                        0,
                        segment.seq + 1,
                    ).to_bytes(),
                )
            )

    # Frames

    def send_frame(self, frame: frames.Frame) -> None:
        self.transmit(INTERFACE_PORT, frame)

    def is_local(self, address: addresses.NetAddress | None) -> bool:
        return address == self.net_address or (
            address is not None and address.is_multicast
        )

    def handle(self, port: int, frame: frames.Frame) -> None:
        if self.frame_hook is not None and self.frame_hook(frame):
            return
        if not (
            frame.dst_link == self.link_address
            or frame.dst_link.is_multicast
            or self.promiscuous
        ):
            return

        kind = frame.kind
        if kind is frames.FrameKind.NEIGHBOR_SOLICITATION:
            self._on_solicitation(frame)
        elif kind is frames.FrameKind.NEIGHBOR_ADVERTISEMENT:
            self._on_advertisement(frame)
        elif kind is frames.FrameKind.DATAGRAM:
            sock = self.datagram_sockets.get(frame.dst_port)
            if sock is not None and self.is_local(frame.dst_net):
                sock.deliver(
                    Datagram(
                        frame.payload, frame.src_net, frame.src_port, frame.dst_net
                    )
                )
        elif kind is frames.FrameKind.STREAM_SEGMENT:
            self._on_segment(frame)
