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

"""XML-like document tree and its canonical text form."""

from __future__ import annotations

import dataclasses
import typing as tp
from xml.etree import ElementTree

from gcl_v2g.codec import exceptions as codec_exc

_TEXT_ESCAPES = {
    "&": "&amp;",
    "<": "&lt;",
    ">": "&gt;",
    '"': "&quot;",
    "'": "&apos;",
    "\r": "&#13;",
}
_ATTR_ESCAPES = {**_TEXT_ESCAPES, "\t": "&#9;", "\n": "&#10;"}


@dataclasses.dataclass(frozen=True)
class DocNode:
    name: str
    attributes: tuple[tuple[str, str], ...] = ()
    text: str | None = None
    children: tuple[DocNode, ...] = ()

    def __post_init__(self) -> None:
        if self.text == "":
            object.__setattr__(self, "text", None)
        if not isinstance(self.attributes, tuple):
            object.__setattr__(self, "attributes", tuple(self.attributes))
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

        if not self.name or any(c.isspace() for c in self.name):
            raise codec_exc.InvalidDocNode(reason=f"bad element name {self.name!r}")
        if self.text is not None and self.children:
            raise codec_exc.InvalidDocNode(
                reason=f"element {self.name!r} has both text and children"
            )
        names = [k for k, _ in self.attributes]
        if len(set(names)) != len(names):
            raise codec_exc.InvalidDocNode(
                reason=f"duplicate attribute in element {self.name!r}"
            )
        for key, _ in self.attributes:
            if not key or any(c.isspace() for c in key):
                raise codec_exc.InvalidDocNode(reason=f"bad attribute name {key!r}")

    def child(self, name: str) -> DocNode | None:
        for node in self.children:
            if node.name == name:
                return node
        return None

    def iter(self) -> tp.Iterator[DocNode]:
        """Depth-first walk over the node and all its descendants."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


def _escape(value: str, table: dict[str, str]) -> str:
    return "".join(table.get(c, c) for c in value)


def to_xml_text(node: DocNode) -> str:
    parts: list[str] = []
    # (node, closing) pairs, closing marks the end tag of an opened element
    stack: list[tuple[DocNode, bool]] = [(node, False)]
    while stack:
        current, closing = stack.pop()
        if closing:
            parts.append(f"</{current.name}>")
            continue

        attrs = "".join(
            f' {key}="{_escape(value, _ATTR_ESCAPES)}"'
            for key, value in current.attributes
        )
        if current.text is None and not current.children:
            parts.append(f"<{current.name}{attrs}/>")
            continue

        parts.append(f"<{current.name}{attrs}>")
        if current.text is not None:
            parts.append(_escape(current.text, _TEXT_ESCAPES))
            parts.append(f"</{current.name}>")
            continue

        stack.append((current, True))
        stack.extend((child, False) for child in reversed(current.children))
    return "".join(parts)


def _from_element(element: ElementTree.Element) -> DocNode:
    if element.tag.startswith("{"):
        raise codec_exc.MalformedXml(reason="namespaces are not supported")

    children = list(element)
    text = element.text
    if children:
        if text is not None and text.strip():
            raise codec_exc.MalformedXml(
                reason=f"element {element.tag!r} mixes text and children"
            )
        for child in children:
            if child.tail is not None and child.tail.strip():
                raise codec_exc.MalformedXml(
                    reason=f"element {element.tag!r} mixes text and children"
                )
        text = None

    try:
        return DocNode(
            name=element.tag,
            attributes=tuple(element.attrib.items()),
            text=text,
            children=tuple(_from_element(child) for child in children),
        )
    except codec_exc.InvalidDocNode as e:
        raise codec_exc.MalformedXml(reason=str(e))


def parse_xml_text(text: str) -> DocNode:
    if not text or not text.strip():
        raise codec_exc.EmptyInput()
    try:
        root = ElementTree.fromstring(text)
    except ElementTree.ParseError as e:
        raise codec_exc.MalformedXml(reason=str(e))
    return _from_element(root)
