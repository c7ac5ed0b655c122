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

"""Handshake drivers and the secured stream.

The drivers run the sans-IO handshakes over any stream offering
``read(timeout)`` (a simulated-process generator returning b"" on end of
stream), ``write(data)`` and ``close()``.
"""

from __future__ import annotations

import logging
import random
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import handshake
from gcl_v2g.securechannel import identity as sc_identity
from gcl_v2g.securechannel import records

LOG = logging.getLogger(__name__)

FLIGHT_TIMEOUT = 2 * constants.SEC

Reason = sc_exc.FailureReason


class ByteStream(tp.Protocol):
    def read(self, timeout: int | None = None) -> tp.Generator: ...

    def write(self, data: bytes) -> None: ...

    def close(self) -> None: ...


def _next_record(
    stream: ByteStream, buffer: records.RecordBuffer, timeout: int
) -> tp.Generator:
    while True:
        try:
            record = buffer.pop()
        except sc_exc.BadRecord as e:
            raise sc_exc.HandshakeFailure(
                reason=Reason.TRANSCRIPT_MISMATCH, detail=e.detail
            )
        if record is not None:
            return record
        try:
            data = yield from stream.read(timeout)
        except net_exc.WaitTimeout:
            raise sc_exc.HandshakeFailure(
                reason=Reason.TIMEOUT, detail="no handshake flight from the peer"
            )
        except net_exc.NetsimException as e:
            raise sc_exc.HandshakeFailure(reason=Reason.TIMEOUT, detail=str(e))
        if not data:
            raise sc_exc.HandshakeFailure(
                reason=Reason.TIMEOUT, detail="stream closed during the handshake"
            )
        buffer.feed(data)


def _fail(stream: ByteStream, error: sc_exc.HandshakeFailure, alerted: bool) -> None:
    if not alerted:
        try:
            stream.write(handshake.alert_record(error.reason))
        except net_exc.NetsimException:
            pass
    stream.close()


def _drive(
    stream: ByteStream,
    machine: handshake.ClientHandshake | handshake.ServerHandshake,
    buffer: records.RecordBuffer,
    timeout: int,
) -> tp.Generator:
    while not machine.done:
        alerted = False
        try:
            record_type, body = yield from _next_record(stream, buffer, timeout)
            alerted = record_type is records.RecordType.ALERT
            reply = machine.receive(record_type, body)
        except sc_exc.HandshakeFailure as e:
            _fail(stream, e, alerted)
            raise
        if reply:
            stream.write(reply)


def connect_secure(
    stream: ByteStream,
    anchor: sc_identity.TrustAnchor,
    binding: handshake.EndpointBinding,
    rng: random.Random | None = None,
    timeout: int = FLIGHT_TIMEOUT,
) -> tp.Generator:
    """Client side. Returns a SecureStream or raises HandshakeFailure."""
    machine = handshake.ClientHandshake(anchor, binding, rng)
    buffer = records.RecordBuffer()
    stream.write(machine.client_hello())
    yield from _drive(stream, machine, buffer, timeout)
    LOG.debug("Secured channel to %s", machine.peer_certificate.subject_name)
    return SecureStream(stream, records.RecordLayer(machine.keys, True), buffer)


def accept_secure(
    stream: ByteStream,
    identity: sc_identity.Identity,
    observed: handshake.EndpointBinding,
    rng: random.Random | None = None,
    timeout: int = FLIGHT_TIMEOUT,
    buffer: records.RecordBuffer | None = None,
) -> tp.Generator:
    """Server side. `buffer` may hold bytes already read from the stream."""
    machine = handshake.ServerHandshake(identity, observed, rng)
    buffer = buffer or records.RecordBuffer()
    yield from _drive(stream, machine, buffer, timeout)
    return SecureStream(stream, records.RecordLayer(machine.keys, False), buffer)


class SecureStream:
    """Byte stream of sealed application records over an established channel."""

    def __init__(
        self,
        stream: ByteStream,
        layer: records.RecordLayer,
        buffer: records.RecordBuffer | None = None,
    ) -> None:
        self.stream = stream
        self.layer = layer
        self._buffer = buffer or records.RecordBuffer()

    @property
    def keys(self) -> records.SessionKeys:
        return self.layer.keys

    def write(self, data: bytes) -> None:
        self.stream.write(self.layer.seal(data))

    def read(self, timeout: int | None = None) -> tp.Generator:
        while True:
            record = self._buffer.pop()
            if record is not None:
                record_type, body = record
                if record_type is records.RecordType.ALERT:
                    return b""
                if record_type is not records.RecordType.APPLICATION_DATA:
                    raise sc_exc.BadRecord(
                        detail=f"unexpected {record_type.name} record"
                    )
                plaintext = self.layer.open_body(body)
                if plaintext:
                    return plaintext
                continue
            data = yield from self.stream.read(timeout)
            if not data:
                return b""
            self._buffer.feed(data)

    def close(self) -> None:
        self.stream.close()
