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


class NetsimException(exceptions.V2GException):
    __template__ = "An unknown network emulator exception occurred."


class WaitTimeout(NetsimException):
    __template__ = "Timed out after {timeout} us waiting for {what}"
    timeout: int
    what: str


class Cancelled(NetsimException):
    __template__ = "Wait for {what} cancelled"
    what: str


class DuplicateName(NetsimException):
    __template__ = "Duplicate node name: {name}"
    name: str


class DanglingLink(NetsimException):
    __template__ = "Node {name} links to unknown node {peer}"
    name: str
    peer: str


class AddressCollision(NetsimException):
    __template__ = "Address {address} is used by both {first} and {second}"
    address: str
    first: str
    second: str


class InvalidTopology(NetsimException):
    __template__ = "Invalid topology: {reason}"
    reason: str


class ResolveTimeout(NetsimException):
    __template__ = "Unable to resolve neighbor {address}"
    address: str


class PortInUse(NetsimException):
    __template__ = "Port {port} already in use on {host}"
    port: int
    host: str


class PayloadTooLarge(NetsimException):
    __template__ = "Payload of {size} bytes exceeds the limit of {limit} bytes"
    size: int
    limit: int


class ConnectionRefused(NetsimException):
    __template__ = "Connection to [{address}]:{port} refused"
    address: str
    port: int


class ConnectTimeout(NetsimException):
    __template__ = "Connection to [{address}]:{port} timed out"
    address: str
    port: int


class ConnectionReset(NetsimException):
    __template__ = "Connection {connection} reset"
    connection: str


class IoFailure(NetsimException):
    __template__ = "Capture file {path}: {reason}"
    path: str
    reason: str
