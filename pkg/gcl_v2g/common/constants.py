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

import enum

GLOBAL_SERVICE_NAME = "gcl_v2g"

SEED_ENV_VAR = "GCL_V2G_SEED"
DEFAULT_SEED = 0

# Simulated time is kept in integer microseconds.
USEC = 1
MSEC = 1000 * USEC
SEC = 1000 * MSEC

V2G_SDP_PORT = 15118
V2G_SECC_PORT = 15118


class Direction(str, enum.Enum):
    IN = "in"
    OUT = "out"
