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

from gcl_v2g.common import exceptions


class MessagesException(exceptions.V2GException):
    __template__ = "An unknown message exception occurred."


class UnknownMessageKind(MessagesException):
    __template__ = "Unknown message kind: {kind}"
    kind: str


class MissingField(MessagesException):
    __template__ = "Missing field {field!r} in {element!r}"
    field: str
    element: str


class BadFieldFormat(MessagesException):
    __template__ = "Bad format of field {field!r}: {reason}"
    field: str
    reason: str


class SequenceViolation(MessagesException):
    __template__ = "Sequence violation: expected one of {expected}, got {got}"
    expected: tuple[str, ...]
    got: str
