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

"""Conversion between V2G messages and document trees.

Documents look like::

    <v2gMessage>
      <header><sessionId>00112233AABBCCDD</sessionId></header>
      <body><SessionSetupReq><evccId>0A0B0C0D0E0F</evccId></SessionSetupReq></body>
    </v2gMessage>

Fields are child elements named in lowerCamelCase, integers are decimal,
booleans are ``true``/``false``, byte strings are uppercase hex and
sequences are wrapped in a container element holding one element per item.
Optional fields that are unset are omitted.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import re
import types
import typing as tp

from gcl_v2g.codec import doc
from gcl_v2g.codec import exi
from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.messages import models

ROOT = "v2gMessage"
HEADER = "header"
SESSION_ID = "sessionId"
BODY = "body"

_INT_RE = re.compile(r"-?[0-9]+")


def camel(name: str) -> str:
    head, *tail = name.split("_")
    return head + "".join(part.capitalize() for part in tail)


@functools.lru_cache(maxsize=None)
def _hints(cls: type) -> dict[str, tp.Any]:
    return tp.get_type_hints(cls)


def _optional_arg(hint: tp.Any) -> tp.Any | None:
    if tp.get_origin(hint) in (tp.Union, types.UnionType):
        args = [a for a in tp.get_args(hint) if a is not type(None)]
        if len(args) == 1:
            return args[0]
    return None


def _scalar_text(value: tp.Any) -> str:
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, bytes):
        return value.hex().upper()
    return str(value)


def _encode_value(name: str, value: tp.Any, field: dataclasses.Field) -> doc.DocNode:
    if isinstance(value, tuple):
        item = field.metadata["item"]
        return doc.DocNode(
            name, children=tuple(_encode_value(item, v, field) for v in value)
        )
    if dataclasses.is_dataclass(value):
        return _encode_dataclass(name, value)
    return doc.DocNode(name, text=_scalar_text(value))


def _encode_dataclass(name: str, obj: tp.Any) -> doc.DocNode:
    children = []
    for field in dataclasses.fields(obj):
        value = getattr(obj, field.name)
        if value is None:
            continue
        children.append(_encode_value(camel(field.name), value, field))
    return doc.DocNode(name, children=tuple(children))


def to_doc(message: models.V2GMessage) -> doc.DocNode:
    header = doc.DocNode(
        HEADER, children=(doc.DocNode(SESSION_ID, text=message.session_id.hex),)
    )
    body = doc.DocNode(
        BODY, children=(_encode_dataclass(message.kind, message.body),)
    )
    return doc.DocNode(ROOT, children=(header, body))


def _decode_scalar(field: str, hint: tp.Any, node: doc.DocNode) -> tp.Any:
    if node.children:
        raise msg_exc.BadFieldFormat(field=field, reason="unexpected children")
    text = node.text or ""

    if hint is bool:
        if text not in ("true", "false"):
            raise msg_exc.BadFieldFormat(field=field, reason=f"not a boolean {text!r}")
        return text == "true"
    if hint is int:
        if not _INT_RE.fullmatch(text):
            raise msg_exc.BadFieldFormat(field=field, reason=f"not an integer {text!r}")
        return int(text)
    if hint is str:
        return text
    if hint is bytes:
        try:
            return bytes.fromhex(text)
        except ValueError:
            raise msg_exc.BadFieldFormat(field=field, reason=f"not hex {text!r}")
    if isinstance(hint, type) and issubclass(hint, enum.Enum):
        try:
            return hint(text)
        except ValueError:
            raise msg_exc.BadFieldFormat(
                field=field, reason=f"unknown {hint.__name__} {text!r}"
            )
    raise TypeError(f"Unsupported field type {hint!r}")


def _decode_value(field: str, hint: tp.Any, node: doc.DocNode) -> tp.Any:
    if tp.get_origin(hint) is tuple:
        item_hint = tp.get_args(hint)[0]
        if node.text is not None:
            raise msg_exc.BadFieldFormat(field=field, reason="expected a list")
        return tuple(_decode_value(field, item_hint, child) for child in node.children)
    if dataclasses.is_dataclass(hint):
        return _decode_dataclass(hint, node)
    return _decode_scalar(field, hint, node)


def _decode_dataclass(cls: type, node: doc.DocNode) -> tp.Any:
    hints = _hints(cls)
    if node.text is not None:
        raise msg_exc.BadFieldFormat(field=node.name, reason="unexpected text")
    known = {camel(f.name) for f in dataclasses.fields(cls)}
    seen: set[str] = set()
    for child in node.children:
        if child.name not in known or child.name in seen:
            raise msg_exc.BadFieldFormat(
                field=child.name, reason=f"unexpected element in {node.name}"
            )
        seen.add(child.name)

    kwargs = {}
    for field in dataclasses.fields(cls):
        name = camel(field.name)
        hint = hints[field.name]
        optional = _optional_arg(hint)
        child = node.child(name)
        if child is None:
            if optional is None:
                raise msg_exc.MissingField(field=name, element=node.name)
            kwargs[field.name] = None
            continue
        if item := field.metadata.get("item"):
            stray = [c.name for c in child.children if c.name != item]
            if stray:
                raise msg_exc.BadFieldFormat(
                    field=name, reason=f"unexpected item {stray[0]!r}"
                )
        kwargs[field.name] = _decode_value(name, optional or hint, child)

    try:
        return cls(**kwargs)
    except ValueError as e:
        raise msg_exc.BadFieldFormat(field=node.name, reason=str(e))


def from_doc(node: doc.DocNode) -> models.V2GMessage:
    if node.name != ROOT:
        raise msg_exc.UnknownMessageKind(kind=node.name)

    header = node.child(HEADER)
    if header is None:
        raise msg_exc.MissingField(field=HEADER, element=ROOT)
    session_node = header.child(SESSION_ID)
    if session_node is None:
        raise msg_exc.MissingField(field=SESSION_ID, element=HEADER)
    try:
        session_id = models.SessionId.from_hex(session_node.text or "")
    except ValueError as e:
        raise msg_exc.BadFieldFormat(field=SESSION_ID, reason=str(e))

    body = node.child(BODY)
    if body is None:
        raise msg_exc.MissingField(field=BODY, element=ROOT)
    if len(body.children) != 1:
        raise msg_exc.BadFieldFormat(
            field=BODY, reason="exactly one message body expected"
        )
    content = body.children[0]
    cls = models.BODY_TYPES.get(content.name)
    if cls is None:
        raise msg_exc.UnknownMessageKind(kind=content.name)

    return models.V2GMessage(session_id, _decode_dataclass(cls, content))


def to_exi(message: models.V2GMessage) -> bytes:
    return exi.encode_exi(to_doc(message)).data


def from_exi(data: bytes) -> models.V2GMessage:
    return from_doc(exi.decode_exi(exi.ExiDocument(data)))


def to_xml(message: models.V2GMessage) -> str:
    return doc.to_xml_text(to_doc(message))
