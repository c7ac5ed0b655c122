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


class CodecException(exceptions.V2GException):
    __template__ = "An unknown codec exception occurred."


class InvalidDocNode(CodecException):
    __template__ = "Invalid document node: {reason}"
    reason: str


class EmptyInput(CodecException):
    __template__ = "Empty XML input"


class MalformedXml(CodecException):
    __template__ = "Malformed XML: {reason}"
    reason: str


class BadMagic(CodecException):
    __template__ = "Bad EXI magic byte: {value:#04x}"
    value: int


class TruncatedStream(CodecException):
    __template__ = "EXI stream truncated at offset {offset}"
    offset: int


class BadStringTableIndex(CodecException):
    __template__ = "String table index {index} out of range (table size {size})"
    index: int
    size: int


class BadEventCode(CodecException):
    __template__ = "Bad EXI event code {code:#04x} at offset {offset}"
    code: int
    offset: int


class InvalidString(CodecException):
    __template__ = "Invalid UTF-8 string at offset {offset}"
    offset: int
