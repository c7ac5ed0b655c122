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

import os
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.messages import docs
from gcl_v2g.messages import models
from gcl_v2g.netsim import capture
from gcl_v2g.netsim import frames
from gcl_v2g.scenario import topology
from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import v2gtp

TOPOLOGIES = os.path.join(os.path.dirname(topology.__file__), "topologies")
GOLDEN = (
    "basic",
    "dos",
    "energy-mismatch",
    "port-rewrite",
    "tls-countermeasure",
    "two-columns",
)


def golden(name: str, seed: int | None = None) -> topology.TopologySpec:
    return topology.parse_topology(os.path.join(TOPOLOGIES, f"{name}.toplgy"), seed)


def golden_text(name: str) -> str:
    with open(os.path.join(TOPOLOGIES, f"{name}.toplgy"), encoding="utf-8") as f:
        return f.read()


def segments(
    records: tp.Iterable[capture.CaptureRecord],
    node: str,
    direction: constants.Direction,
) -> list[frames.Frame]:
    """Stream segments with data seen by `node` in `direction`."""
    return [
        r.frame
        for r in records
        if r.node == node
        and r.direction is direction
        and r.frame.kind is frames.FrameKind.STREAM_SEGMENT
        and r.frame.data()
    ]


def v2g_messages(
    records: tp.Iterable[capture.CaptureRecord],
    node: str,
    direction: constants.Direction,
) -> list[models.V2GMessage]:
    """Plaintext V2G messages carried by the stream segments of `node`."""
    messages = []
    for frame in segments(records, node, direction):
        data = frame.data()
        while data:
            try:
                header, payload, consumed = v2gtp.decode_v2gtp_prefix(data)
            except wire_exc.WireException:
                break
            if header.payload_type is v2gtp.PayloadType.EXI_V2G_MESSAGE:
                messages.append(docs.from_exi(payload))
            data = data[consumed:]
    return messages
