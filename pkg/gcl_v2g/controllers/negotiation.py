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

from __future__ import annotations

import random
import typing as tp

from gcl_v2g.messages import models


def negotiate_protocol(
    offers: tp.Sequence[models.AppProtocol],
    supported: tp.Sequence[models.AppProtocol],
) -> int | None:
    """Schema id of the agreed protocol, or None when nothing matches.

    An offer matches a supported entry with the same namespace and major
    version when its minor version is at least the supported one. Among the
    matching offers the one with the best (lowest) priority value wins.
    """
    best: models.AppProtocol | None = None
    for offer in offers:
        if not any(
            offer.protocol_namespace == entry.protocol_namespace
            and offer.version_number_major == entry.version_number_major
            and offer.version_number_minor >= entry.version_number_minor
            for entry in supported
        ):
            continue
        if best is None or offer.priority < best.priority:
            best = offer
    return None if best is None else best.schema_id


def assign_session_id(
    requested: models.SessionId | None, rng: random.Random
) -> models.SessionId:
    if requested is not None and not requested.is_zero:
        return requested
    while True:
        candidate = models.SessionId(rng.randbytes(models.SESSION_ID_SIZE))
        if not candidate.is_zero:
            return candidate
