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


class ControllerException(exceptions.V2GException):
    __template__ = "An unknown controller exception occurred."


class InvalidConfig(ControllerException):
    __template__ = "Invalid {role} configuration: {reason}"
    role: str
    reason: str


class InvalidTransition(ControllerException):
    __template__ = "Illegal controller transition {current} -> {target}"
    current: str
    target: str


class ChannelClosed(ControllerException):
    __template__ = "Peer closed the channel"


class UnexpectedPayload(ControllerException):
    __template__ = "Unexpected V2GTP payload type {payload_type:#06x}"
    payload_type: int


class SessionEnded(ControllerException):
    __template__ = "Session ended: {outcome} ({detail})"
    outcome: str
    detail: str
