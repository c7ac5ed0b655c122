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

"""SECC Discovery Protocol payloads.

SDP payloads are raw binary, they are never EXI encoded or encrypted.
"""

from __future__ import annotations

import dataclasses
import enum
import struct

from gcl_v2g.wire import exceptions as wire_exc

REQUEST_SIZE = 2
RESPONSE_SIZE = 20
ADDRESS_SIZE = 16

_REQUEST = struct.Struct(">BB")
_RESPONSE = struct.Struct(">16sHBB")


class Security(enum.IntEnum):
    SECURED_WITH_TLS = 0x00
    PLAIN_TCP = 0x10


class Transport(enum.IntEnum):
    TCP = 0x00


@dataclasses.dataclass(frozen=True)
class SdpRequest:
    security: Security
    transport: Transport = Transport.TCP


@dataclasses.dataclass(frozen=True)
class SdpResponse:
    secc_address: bytes
    secc_port: int
    security: Security
    transport: Transport = Transport.TCP

    def __post_init__(self) -> None:
        if len(self.secc_address) != ADDRESS_SIZE:
            raise ValueError(f"SECC address must be {ADDRESS_SIZE} bytes")
        if not 0 < self.secc_port <= 0xFFFF:
            raise ValueError(f"Invalid SECC port {self.secc_port}")


def _security(value: int) -> Security:
    try:
        return Security(value)
    except ValueError:
        raise wire_exc.UnknownSecurityByte(value=value)


def _transport(value: int) -> Transport:
    try:
        return Transport(value)
    except ValueError:
        raise wire_exc.UnknownTransportByte(value=value)


def encode_sdp_request(request: SdpRequest) -> bytes:
    return _REQUEST.pack(int(request.security), int(request.transport))


def decode_sdp_request(data: bytes) -> SdpRequest:
    if len(data) != REQUEST_SIZE:
        raise wire_exc.BadLength(expected=REQUEST_SIZE, actual=len(data))
    security, transport = _REQUEST.unpack(data)
    return SdpRequest(security=_security(security), transport=_transport(transport))


def encode_sdp_response(response: SdpResponse) -> bytes:
    return _RESPONSE.pack(
        response.secc_address,
        response.secc_port,
        int(response.security),
        int(response.transport),
    )


def decode_sdp_response(data: bytes) -> SdpResponse:
    if len(data) != RESPONSE_SIZE:
        raise wire_exc.BadLength(expected=RESPONSE_SIZE, actual=len(data))
    address, port, security, transport = _RESPONSE.unpack(data)
    security = _security(security)
    transport = _transport(transport)
    if port == 0:
        raise wire_exc.ZeroPort()
    return SdpResponse(
        secc_address=address, secc_port=port, security=security, transport=transport
    )
