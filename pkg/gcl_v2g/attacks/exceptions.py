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


class AttacksException(exceptions.V2GException):
    __template__ = "An unknown attack exception occurred."


class UnknownSwitch(AttacksException):
    __template__ = "Unknown switch: {name}"
    name: str


class MitmNotLinked(AttacksException):
    __template__ = "MitM {mitm} is not linked to switch {switch}"
    mitm: str
    switch: str


class DecodeFailure(AttacksException):
    __template__ = "Unable to decode intercepted payload: {reason}"
    reason: str


class InvalidScenario(AttacksException):
    __template__ = "Invalid attack scenario: {reason}"
    reason: str
