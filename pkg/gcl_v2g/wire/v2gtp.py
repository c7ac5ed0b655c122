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

"""V2G Transfer Protocol framing.

Layout of the 8 byte header (all fields big-endian)::

    0       1          2..3          4..7
    version inverse    payload type  payload length

Version is always 0x01 and the inverse version its complement 0xFE.
"""

from __future__ import annotations

import dataclasses
import enum
import struct

from gcl_v2g.wire import exceptions as wire_exc

PROTOCOL_VERSION = 0x01
INVERSE_PROTOCOL_VERSION = PROTOCOL_VERSION ^ 0xFF
HEADER_SIZE = 8

_HEADER = struct.Struct(">BBHI")


class PayloadType(enum.IntEnum):
    EXI_V2G_MESSAGE = 0x8001
    SDP_REQUEST = 0x9000
    SDP_RESPONSE = 0x9001


@dataclasses.dataclass(frozen=True)
class V2gtpHeader:
    payload_type: PayloadType
    payload_length: int
    version: int = PROTOCOL_VERSION
    inverse_version: int = INVERSE_PROTOCOL_VERSION

    @classmethod
    def for_payload(cls, payload_type: PayloadType, payload: bytes) -> V2gtpHeader:
        return cls(payload_type=payload_type, payload_length=len(payload))


def encode_v2gtp(header: V2gtpHeader, payload: bytes) -> bytes:
    if header.payload_length != len(payload):
        raise wire_exc.LengthMismatch(
            declared=header.payload_length, actual=len(payload)
        )
    return (
        _HEADER.pack(
            header.version,
            header.inverse_version,
            int(header.payload_type),
            header.payload_length,
        )
        + payload
    )


def frame(payload_type: PayloadType, payload: bytes) -> bytes:
    """Shortcut: wrap `payload` into a complete V2GTP frame."""
    return encode_v2gtp(V2gtpHeader.for_payload(payload_type, payload), payload)


def decode_v2gtp_prefix(data: bytes) -> tuple[V2gtpHeader, bytes, int]:
    """Decode exactly one frame from the beginning of `data`.

    Returns the header, the payload and the number of consumed bytes.
    Bytes after the frame are left untouched.
    """
    if len(data) >= 1 and data[0] != PROTOCOL_VERSION:
        raise wire_exc.BadVersion(value=data[0])
    if len(data) >= 2 and data[1] != INVERSE_PROTOCOL_VERSION:
        raise wire_exc.BadInverseVersion(value=data[1])
    if len(data) < HEADER_SIZE:
        raise wire_exc.Truncated(expected=HEADER_SIZE, actual=len(data))

    version, inverse, raw_type, length = _HEADER.unpack_from(data)
    try:
        payload_type = PayloadType(raw_type)
    except ValueError:
        raise wire_exc.UnknownPayloadType(value=raw_type)

    consumed = HEADER_SIZE + length
    if len(data) < consumed:
        raise wire_exc.Truncated(expected=consumed, actual=len(data))

    header = V2gtpHeader(
        payload_type=payload_type,
        payload_length=length,
        version=version,
        inverse_version=inverse,
    )
    return header, bytes(data[HEADER_SIZE:consumed]), consumed


def decode_v2gtp(data: bytes) -> tuple[V2gtpHeader, bytes]:
    header, payload, _ = decode_v2gtp_prefix(data)
    return header, payload


class FrameBuffer:
    """Reassembles V2GTP frames from a byte stream."""

    def __init__(self) -> None:
        self._buffer = bytearray()

    def __len__(self) -> int:
        return len(self._buffer)

    def feed(self, data: bytes) -> None:
        self._buffer.extend(data)

    def pending(self) -> bytes:
        return bytes(self._buffer)

    def pop(self) -> tuple[V2gtpHeader, bytes] | None:
        """Return the next complete frame or None if more bytes are needed.

        Malformed headers raise the decoder errors; truncation does not.
        """
        try:
            header, payload, consumed = decode_v2gtp_prefix(bytes(self._buffer))
        except wire_exc.Truncated:
            return None
        del self._buffer[:consumed]
        return header, payload

    def pop_all(self) -> list[tuple[V2gtpHeader, bytes]]:
        frames = []
        while (item := self.pop()) is not None:
            frames.append(item)
        return frames
