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

"""Packet capture records and their files.

The primary format is JSON lines: a header object followed by one record
per line::

    {"format": "gcl-v2g-capture", "version": 1}
    {"time": 1000, "node": "ev", "direction": "out", "port": 0, "frame": {...}}

Frames keep their payload as lowercase hex. The pcap export wraps every
record in a synthetic link-layer frame with the DLT_USER0 link type.
"""

from __future__ import annotations

import dataclasses
import typing as tp

import dpkt
import orjson

from gcl_v2g.common import constants
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames

FORMAT = "gcl-v2g-capture"
VERSION = 1
PCAP_LINKTYPE = 147
PCAP_SNAPLEN = 65535


@dataclasses.dataclass(frozen=True)
class CaptureRecord:
    time: int
    node: str
    direction: constants.Direction
    port: int
    frame: frames.Frame

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "time": self.time,
            "node": self.node,
            "direction": self.direction.value,
            "port": self.port,
            "frame": self.frame.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, tp.Any]) -> CaptureRecord:
        return cls(
            time=data["time"],
            node=data["node"],
            direction=constants.Direction(data["direction"]),
            port=data["port"],
            frame=frames.Frame.from_dict(data["frame"]),
        )


def header() -> dict[str, tp.Any]:
    return {"format": FORMAT, "version": VERSION}


def dumps(records: tp.Iterable[CaptureRecord]) -> bytes:
    lines = [orjson.dumps(header())]
    lines.extend(orjson.dumps(record.to_dict()) for record in records)
    return b"\n".join(lines) + b"\n"


def export_capture(records: tp.Iterable[CaptureRecord], path: str) -> None:
    try:
        with open(path, "wb") as f:
            f.write(dumps(records))
    except OSError as e:
        raise net_exc.IoFailure(path=path, reason=e.strerror or str(e))


def export_pcap(records: tp.Iterable[CaptureRecord], path: str) -> None:
    try:
        with open(path, "wb") as f:
            writer = dpkt.pcap.Writer(f, snaplen=PCAP_SNAPLEN, linktype=PCAP_LINKTYPE)
            for record in records:
                writer.writepkt(
                    record.frame.to_bytes(), ts=record.time / constants.SEC
                )
    except OSError as e:
        raise net_exc.IoFailure(path=path, reason=e.strerror or str(e))


def loads(data: bytes, path: str = "<memory>") -> list[CaptureRecord]:
    lines = data.splitlines()
    try:
        head = orjson.loads(lines[0]) if lines else None
        if head != header():
            raise ValueError("missing or unsupported capture header")
        return [CaptureRecord.from_dict(orjson.loads(line)) for line in lines[1:]]
    except (orjson.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise net_exc.IoFailure(path=path, reason=str(e))


def load_capture(path: str) -> list[CaptureRecord]:
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise net_exc.IoFailure(path=path, reason=e.strerror or str(e))
    return loads(data, path)


def read_pcap(path: str) -> list[tuple[float, bytes]]:
    with open(path, "rb") as f:
        return [(ts, bytes(buf)) for ts, buf in dpkt.pcap.Reader(f)]
