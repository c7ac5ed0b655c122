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

"""Compact binary encoding of DocNode trees.

The stream starts with the magic byte 0x80, followed by depth-first events::

    SE  0x01 name-ref                 start element
    AT  0x02 name-ref string          attribute
    CH  0x03 string                   characters
    EE  0x04                          end element

A name-ref is an unsigned LEB128 varint. Zero means a literal follows
(a string, appended to the string table); ``n > 0`` refers to table
entry ``n - 1``. A string is a varint byte length followed by UTF-8 bytes.
Element and attribute names share one table.
"""

from __future__ import annotations

import dataclasses

from gcl_v2g.codec import doc
from gcl_v2g.codec import exceptions as codec_exc

MAGIC = 0x80

EV_START_ELEMENT = 0x01
EV_ATTRIBUTE = 0x02
EV_CHARACTERS = 0x03
EV_END_ELEMENT = 0x04


@dataclasses.dataclass(frozen=True)
class ExiDocument:
    data: bytes

    def __len__(self) -> int:
        return len(self.data)


def _write_varint(out: bytearray, value: int) -> None:
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


def _write_string(out: bytearray, value: str) -> None:
    raw = value.encode("utf-8")
    _write_varint(out, len(raw))
    out.extend(raw)


class _Encoder:
    def __init__(self) -> None:
        self.out = bytearray([MAGIC])
        self.table: dict[str, int] = {}

    def name_ref(self, name: str) -> None:
        index = self.table.get(name)
        if index is not None:
            _write_varint(self.out, index + 1)
            return
        _write_varint(self.out, 0)
        _write_string(self.out, name)
        self.table[name] = len(self.table)

    def encode(self, root: doc.DocNode) -> bytes:
        stack: list[tuple[doc.DocNode, bool]] = [(root, False)]
        while stack:
            node, closing = stack.pop()
            if closing:
                self.out.append(EV_END_ELEMENT)
                continue

            self.out.append(EV_START_ELEMENT)
            self.name_ref(node.name)
            for key, value in node.attributes:
                self.out.append(EV_ATTRIBUTE)
                self.name_ref(key)
                _write_string(self.out, value)
            if node.text is not None:
                self.out.append(EV_CHARACTERS)
                _write_string(self.out, node.text)

            stack.append((node, True))
            stack.extend((child, False) for child in reversed(node.children))
        return bytes(self.out)


def encode_exi(node: doc.DocNode) -> ExiDocument:
    return ExiDocument(_Encoder().encode(node))


@dataclasses.dataclass
class _OpenElement:
    name: str
    attributes: list[tuple[str, str]] = dataclasses.field(default_factory=list)
    text: str | None = None
    children: list[doc.DocNode] = dataclasses.field(default_factory=list)

    def close(self) -> doc.DocNode:
        return doc.DocNode(
            name=self.name,
            attributes=tuple(self.attributes),
            text=self.text,
            children=tuple(self.children),
        )


class _Decoder:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0
        self.table: list[str] = []

    def byte(self) -> int:
        if self.pos >= len(self.data):
            raise codec_exc.TruncatedStream(offset=self.pos)
        value = self.data[self.pos]
        self.pos += 1
        return value

    def varint(self) -> int:
        result = 0
        shift = 0
        while True:
            byte = self.byte()
            result |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return result
            shift += 7

    def string(self) -> str:
        length = self.varint()
        start = self.pos
        if start + length > len(self.data):
            raise codec_exc.TruncatedStream(offset=len(self.data))
        self.pos += length
        try:
            return self.data[start : self.pos].decode("utf-8")
        except UnicodeDecodeError:
            raise codec_exc.InvalidString(offset=start)

    def name_ref(self) -> str:
        index = self.varint()
        if index == 0:
            name = self.string()
            self.table.append(name)
            return name
        if index > len(self.table):
            raise codec_exc.BadStringTableIndex(index=index, size=len(self.table))
        return self.table[index - 1]

    def decode(self) -> doc.DocNode:
        magic = self.byte()
        if magic != MAGIC:
            raise codec_exc.BadMagic(value=magic)

        stack: list[_OpenElement] = []
        root: doc.DocNode | None = None
        while root is None:
            offset = self.pos
            code = self.byte()
            top = stack[-1] if stack else None

            if code == EV_START_ELEMENT and (top is None or top.text is None):
                stack.append(_OpenElement(name=self.name_ref()))
            elif code == EV_ATTRIBUTE and top and not top.children:
                if top.text is not None:
                    raise codec_exc.BadEventCode(code=code, offset=offset)
                top.attributes.append((self.name_ref(), self.string()))
            elif code == EV_CHARACTERS and top and not top.children:
                if top.text is not None:
                    raise codec_exc.BadEventCode(code=code, offset=offset)
                top.text = self.string()
            elif code == EV_END_ELEMENT and top:
                node = stack.pop().close()
                if stack:
                    stack[-1].children.append(node)
                else:
                    root = node
            else:
                raise codec_exc.BadEventCode(code=code, offset=offset)

        if self.pos != len(self.data):
            raise codec_exc.BadEventCode(code=self.data[self.pos], offset=self.pos)
        return root


def decode_exi(document: ExiDocument | bytes) -> doc.DocNode:
    data = document.data if isinstance(document, ExiDocument) else document
    return _Decoder(bytes(data)).decode()
