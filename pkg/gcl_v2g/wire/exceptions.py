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


class WireException(exceptions.V2GException):
    __template__ = "An unknown wire format exception occurred."


class LengthMismatch(WireException):
    __template__ = "Declared payload length {declared} != actual length {actual}"
    declared: int
    actual: int


class BadVersion(WireException):
    __template__ = "Bad V2GTP protocol version: {value:#04x}"
    value: int


class BadInverseVersion(WireException):
    __template__ = "Bad V2GTP inverse protocol version: {value:#04x}"
    value: int


class UnknownPayloadType(WireException):
    __template__ = "Unknown V2GTP payload type: {value:#06x}"
    value: int


class Truncated(WireException):
    __template__ = "Truncated V2GTP frame: need {expected} bytes, got {actual}"
    expected: int
    actual: int


class BadLength(WireException):
    __template__ = "Bad SDP payload length: expected {expected}, got {actual}"
    expected: int
    actual: int


class UnknownSecurityByte(WireException):
    __template__ = "Unknown SDP security byte: {value:#04x}"
    value: int


class UnknownTransportByte(WireException):
    __template__ = "Unknown SDP transport byte: {value:#04x}"
    value: int


class ZeroPort(WireException):
    __template__ = "SDP response advertises port 0"
