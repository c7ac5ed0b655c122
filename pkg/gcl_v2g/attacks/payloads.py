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

"""EXI <-> XML helpers for the attacker and the CLI."""

from __future__ import annotations

from gcl_v2g.codec import doc
from gcl_v2g.codec import exi
from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import v2gtp


def unframe(data: bytes) -> bytes:
    """Strip a V2GTP header from an EXI message frame, if there is one."""
    if data[:1] != bytes([v2gtp.PROTOCOL_VERSION]):
        return data
    try:
        header, payload = v2gtp.decode_v2gtp(data)
    except wire_exc.WireException:
        return data
    if header.payload_type is not v2gtp.PayloadType.EXI_V2G_MESSAGE:
        return data
    return payload


def decode_payload(data: bytes) -> str:
    return doc.to_xml_text(exi.decode_exi(exi.ExiDocument(unframe(data))))


def encode_payload(xml_text: str) -> bytes:
    return exi.encode_exi(doc.parse_xml_text(xml_text)).data
