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

"""Reliable byte streams.

A simplified transport: three-way open, cumulative acknowledgements and
go-back-N retransmission with a fixed window. SYN and FIN each consume one
sequence number. Links never lose frames on their own, so retransmissions
only matter when a flow rule drops segments.
"""

from __future__ import annotations

import enum
import logging
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import scheduler as sched

if tp.TYPE_CHECKING:
    from gcl_v2g.netsim import host as net_host

LOG = logging.getLogger(__name__)

WINDOW = 8
RTO = 200 * constants.MSEC
MAX_RETRIES = 5

Flags = frames.SegmentFlags


class StreamKey(tp.NamedTuple):
    local_net: addresses.NetAddress
    local_port: int
    remote_net: addresses.NetAddress
    remote_port: int


class StreamState(str, enum.Enum):
    SYN_SENT = "SynSent"
    ESTABLISHED = "Established"
    CLOSED = "Closed"


class _Inflight(tp.NamedTuple):
    seq: int
    flags: Flags
    data: bytes

    @property
    def length(self) -> int:
        extra = 1 if self.flags & (Flags.SYN | Flags.FIN) else 0
        return len(self.data) + extra


class Stream:
    def __init__(
        self,
        host: net_host.Host,
        key: StreamKey,
        peer_link: addresses.LinkAddress,
    ) -> None:
        self.host = host
        self.key = key
        self.peer_link = peer_link
        self.state = StreamState.SYN_SENT

        self._snd_una = 0
        self._snd_nxt = 0
        self._send_buffer = bytearray()
        self._inflight: list[_Inflight] = []
        self._fin_queued = False
        self._fin_sent = False
        self._retries = 0
        self._timer: sched.Event | None = None

        self._rcv_nxt = 0
        self._recv_buffer = bytearray()
        self._eof = False
        self._error: net_exc.NetsimException | None = None
        self._reader: sched.SimFuture | None = None
        self._opened: sched.SimFuture | None = None

    def __str__(self) -> str:
        return (
            f"[{self.key.local_net}]:{self.key.local_port}->"
            f"[{self.key.remote_net}]:{self.key.remote_port}"
        )

    @property
    def local_net(self) -> addresses.NetAddress:
        return self.key.local_net

    @property
    def local_port(self) -> int:
        return self.key.local_port

    @property
    def remote_net(self) -> addresses.NetAddress:
        return self.key.remote_net

    @property
    def remote_port(self) -> int:
        return self.key.remote_port

    @property
    def closed(self) -> bool:
        return self.state is StreamState.CLOSED

    @property
    def _scheduler(self) -> sched.EventScheduler:
        return self.host.scheduler

    # Opening

    def open(self) -> sched.Process:
        """Active open; completes once the peer acknowledged our SYN."""
        self._opened = sched.SimFuture(self._scheduler, f"connect {self}")
        self._queue(_Inflight(self._snd_nxt, Flags.SYN, b""))
        yield self._opened

    def accept(self, syn: frames.Segment) -> None:
        """Passive open on a received SYN."""
        self.state = StreamState.ESTABLISHED
        self._rcv_nxt = syn.seq + 1
        self._queue(_Inflight(self._snd_nxt, Flags.SYN | Flags.ACK, b""))

    # Application interface

    def write(self, data: bytes) -> None:
        if self._error is not None:
            raise self._error
        if self._fin_queued or self.closed:
            raise net_exc.ConnectionReset(connection=str(self))
        self._send_buffer.extend(data)
        self._pump()

    def read(self, timeout: int | None = None) -> sched.Process:
        """Return the buffered bytes, or b"" once the peer closed the stream."""
        while True:
            if self._recv_buffer:
                data = bytes(self._recv_buffer)
                self._recv_buffer.clear()
                return data
            if self._error is not None:
                raise self._error
            if self._eof:
                return b""
            self._reader = sched.SimFuture(self._scheduler, f"read {self}")
            yield sched.wait_for(self._scheduler, self._reader, timeout)

    def close(self) -> None:
        if self._fin_queued or self.closed:
            return
        self._fin_queued = True
        self._pump()
        self._maybe_finish()

    def abort(self, error: net_exc.NetsimException | None = None) -> None:
        if self.closed:
            return
        LOG.debug("Stream %s aborted: %s", self, error)
        self.state = StreamState.CLOSED
        self._error = error or net_exc.ConnectionReset(connection=str(self))
        self._inflight.clear()
        self._cancel_timer()
        self._wake()
        if self._opened is not None and not self._opened.done():
            self._opened.set_exception(self._error)
        self.host.forget_stream(self.key)

    # Segment processing

    def on_segment(self, segment: frames.Segment) -> None:
        flags = segment.flags
        if flags & Flags.RST:
            if self.state is StreamState.SYN_SENT:
                self.abort(
                    net_exc.ConnectionRefused(
                        address=str(self.remote_net), port=self.remote_port
                    )
                )
            else:
                self.abort()
            return

        if self.state is StreamState.SYN_SENT:
            if flags & Flags.SYN and flags & Flags.ACK and segment.ack == 1:
                self._rcv_nxt = segment.seq + 1
                self.state = StreamState.ESTABLISHED
                self._on_ack(segment.ack)
                self._send(Flags.ACK, self._snd_nxt, b"")
                if self._opened is not None and not self._opened.done():
                    self._opened.set_result(self)
            return

        if flags & Flags.SYN:
            if flags & Flags.ACK:
                self._send(Flags.ACK, self._snd_nxt, b"")
            else:
                self._retransmit()
            return

        if flags & Flags.ACK:
            self._on_ack(segment.ack)

        if segment.data or flags & Flags.FIN:
            if segment.seq == self._rcv_nxt and not self._eof:
                if segment.data:
                    self._recv_buffer.extend(segment.data)
                    self._rcv_nxt += len(segment.data)
                if flags & Flags.FIN:
                    self._rcv_nxt += 1
                    self._eof = True
                self._wake()
            self._send(Flags.ACK, self._snd_nxt, b"")
        self._maybe_finish()

    def _on_ack(self, ack: int) -> None:
        if not self._snd_una < ack <= self._snd_nxt:
            return
        self._snd_una = ack
        self._inflight = [s for s in self._inflight if s.seq + s.length > ack]
        self._retries = 0
        self._cancel_timer()
        if self._inflight:
            self._arm_timer()
        self._pump()

    # Sending

    def _send(self, flags: Flags, seq: int, data: bytes) -> None:
        if self.state is not StreamState.SYN_SENT:
            flags |= Flags.ACK
        segment = frames.Segment(flags, seq, self._rcv_nxt, data)
        self.host.send_segment(self, segment)

    def _queue(self, item: _Inflight) -> None:
        self._inflight.append(item)
        self._snd_nxt += item.length
        self._send(item.flags, item.seq, item.data)
        if self._timer is None:
            self._arm_timer()

    def _pump(self) -> None:
        if self.state is not StreamState.ESTABLISHED:
            return
        while len(self._inflight) < WINDOW:
            if self._send_buffer:
                chunk = bytes(self._send_buffer[: frames.MAX_SEGMENT_DATA])
                del self._send_buffer[: frames.MAX_SEGMENT_DATA]
                self._queue(_Inflight(self._snd_nxt, Flags.ACK, chunk))
            elif self._fin_queued and not self._fin_sent:
                self._fin_sent = True
                self._queue(_Inflight(self._snd_nxt, Flags.FIN | Flags.ACK, b""))
            else:
                break

    def _retransmit(self) -> None:
        for item in self._inflight:
            self._send(item.flags, item.seq, item.data)

    def _arm_timer(self) -> None:
        self._timer = self._scheduler.call_later(RTO, self._on_timeout)

    def _cancel_timer(self) -> None:
        if self._timer is not None:
            self._timer.cancel()
            self._timer = None

    def _on_timeout(self) -> None:
        self._timer = None
        if not self._inflight or self.closed:
            return
        self._retries += 1
        if self._retries > MAX_RETRIES:
            if self.state is StreamState.SYN_SENT:
                self.abort(
                    net_exc.ConnectTimeout(
                        address=str(self.remote_net), port=self.remote_port
                    )
                )
            else:
                self.abort()
            return
        LOG.debug("Stream %s: retransmission %d", self, self._retries)
        self._retransmit()
        self._arm_timer()

    def _wake(self) -> None:
        reader, self._reader = self._reader, None
        if reader is not None and not reader.done():
            reader.set_result(None)

    def _maybe_finish(self) -> None:
        if self._fin_sent and not self._inflight and self._eof and not self.closed:
            self.state = StreamState.CLOSED
            self._cancel_timer()
            self.host.forget_stream(self.key)
