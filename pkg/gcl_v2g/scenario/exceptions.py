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

import typing as tp

from gcl_v2g.common import exceptions


class ScenarioException(exceptions.V2GException):
    __template__ = "An unknown scenario exception occurred."


class ParseError(ScenarioException):
    __template__ = "{path}:{line}: {reason}"
    path: str
    line: int
    reason: str


class UnknownPropertyKey(ScenarioException):
    __template__ = "Node {node}: unknown property {key}"
    node: str
    key: str


class ConstraintViolation(ScenarioException):
    __template__ = "{where}: {reason}"
    where: str
    reason: str


class SimulationTimeout(ScenarioException):
    __template__ = "Sessions still running after {duration} simulated seconds"
    duration: float
    report: tp.Any
