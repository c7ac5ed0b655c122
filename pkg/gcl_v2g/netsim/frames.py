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
import struct
import typing as tp

from gcl_v2g.netsim import addresses

MTU = 1500
NET_HEADER_SIZE = 40
DATAGRAM_HEADER_SIZE = 8
SEGMENT_HEADER_SIZE = 20
LINK_HEADER_SIZE = 14

MAX_DATAGRAM_PAYLOAD = MTU - NET_HEADER_SIZE - DATAGRAM_HEADER_SIZE
MAX_SEGMENT_DATA = MTU - NET_HEADER_SIZE - SEGMENT_HEADER_SIZE

_SEGMENT = struct.Struct(">BII")
_NULL_NET = bytes(addresses.NET_ADDRESS_SIZE)


class FrameKind(str, enum.Enum):
    NEIGHBOR_SOLICITATION = "NeighborSolicitation"
    NEIGHBOR_ADVERTISEMENT = "NeighborAdvertisement"
    DATAGRAM = "Datagram"
    STREAM_SEGMENT = "StreamSegment"

    def __str__(self) -> str:
        return self.value


_KIND_CODES = {kind: code for code, kind in enumerate(FrameKind, start=1)}
_CODE_KINDS = {code: kind for kind, code in _KIND_CODES.items()}


class SegmentFlags(enum.IntFlag):
    SYN = 0x01
    ACK = 0x02
    FIN = 0x04
    RST = 0x08


@dataclasses.dataclass(frozen=True)
class Segment:
    flags: SegmentFlags
    seq: int
    ack: int
    data: bytes = b""

    def to_bytes(self) -> bytes:
        return _SEGMENT.pack(int(self.flags), self.seq, self.ack) + self.data

    @classmethod
    def from_bytes(cls, payload: bytes) -> Segment:
        flags, seq, ack = _SEGMENT.unpack_from(payload)
        return cls(SegmentFlags(flags), seq, ack, bytes(payload[_SEGMENT.size :]))


@dataclasses.dataclass(frozen=True)
class Frame:
    src_link: addresses.LinkAddress
    dst_link: addresses.LinkAddress
    kind: FrameKind
    payload: bytes
    src_net: addresses.NetAddress | None = None
    dst_net: addresses.NetAddress | None = None
    src_port: int | None = None
    dst_port: int | None = None

    def __post_init__(self) -> None:
        if self.size > MTU + LINK_HEADER_SIZE:
            raise ValueError(f"Frame of {self.size} bytes exceeds the MTU")

    @property
    def size(self) -> int:
        if self.kind is FrameKind.DATAGRAM:
            header = NET_HEADER_SIZE + DATAGRAM_HEADER_SIZE
        elif self.kind is FrameKind.STREAM_SEGMENT:
            header = NET_HEADER_SIZE + SEGMENT_HEADER_SIZE - _SEGMENT.size
        else:
            header = NET_HEADER_SIZE
        return LINK_HEADER_SIZE + header + len(self.payload)

    def segment(self) -> Segment:
        return Segment.from_bytes(self.payload)

    def data(self) -> bytes:
        """Application bytes carried by the frame."""
        if self.kind is FrameKind.STREAM_SEGMENT:
            return self.payload[_SEGMENT.size :]
        return self.payload

    def replace(self, **changes: tp.Any) -> Frame:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "srcLink": str(self.src_link),
            "dstLink": str(self.dst_link),
            "kind": self.kind.value,
            "srcNet": str(self.src_net) if self.src_net else None,
            "dstNet": str(self.dst_net) if self.dst_net else None,
            "srcPort": self.src_port,
            "dstPort": self.dst_port,
            "payload": self.payload.hex(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, tp.Any]) -> Frame:
        return cls(
            src_link=addresses.LinkAddress.parse(data["srcLink"]),
            dst_link=addresses.LinkAddress.parse(data["dstLink"]),
            kind=FrameKind(data["kind"]),
            payload=bytes.fromhex(data["payload"]),
            src_net=addresses.NetAddress.parse(data["srcNet"])
            if data.get("srcNet")
            else None,
            dst_net=addresses.NetAddress.parse(data["dstNet"])
            if data.get("dstNet")
            else None,
            src_port=data.get("srcPort"),
            dst_port=data.get("dstPort"),
        )

    def to_bytes(self) -> bytes:
        """Synthetic link-layer rendering used by the pcap export.

        dst link (6) | src link (6) | kind (1) | src net (16) | dst net (16)
        | src port (2) | dst port (2) | payload
        """
        return (
            self.dst_link.value
            + self.src_link.value
            + bytes([_KIND_CODES[self.kind]])
            + (self.src_net.value if self.src_net else _NULL_NET)
            + (self.dst_net.value if self.dst_net else _NULL_NET)
            + struct.pack(">HH", self.src_port or 0, self.dst_port or 0)
            + self.payload
        )


def neighbor_solicitation(
    src_link: addresses.LinkAddress,
    src_net: addresses.NetAddress,
    target: addresses.NetAddress,
) -> Frame:
    return Frame(
        src_link=src_link,
        dst_link=addresses.BROADCAST_LINK,
        kind=FrameKind.NEIGHBOR_SOLICITATION,
        payload=target.value,
        src_net=src_net,
        dst_net=addresses.BROADCAST_NET,
    )


def neighbor_advertisement(
    src_link: addresses.LinkAddress,
    dst_link: addresses.LinkAddress,
    target: addresses.NetAddress,
    dst_net: addresses.NetAddress | None = None,
) -> Frame:
    """Advertise `src_link` as the link address of `target`."""
    return Frame(
        src_link=src_link,
        dst_link=dst_link,
        kind=FrameKind.NEIGHBOR_ADVERTISEMENT,
        payload=target.value + src_link.value,
        src_net=target,
        dst_net=dst_net,
    )


def advertised(frame: Frame) -> tuple[addresses.NetAddress, addresses.LinkAddress]:
    return (
        addresses.NetAddress(frame.payload[: addresses.NET_ADDRESS_SIZE]),
        addresses.LinkAddress(frame.payload[addresses.NET_ADDRESS_SIZE :]),
    )


def solicited(frame: Frame) -> addresses.NetAddress:
    return addresses.NetAddress(frame.payload)
