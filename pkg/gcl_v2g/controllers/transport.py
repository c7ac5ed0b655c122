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

import logging
import typing as tp

from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.messages import docs
from gcl_v2g.messages import models
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.wire import v2gtp

LOG = logging.getLogger(__name__)


class MessageChannel:
    """V2G messages over a byte stream (plain or secured)."""

    def __init__(
        self, scheduler: sched.EventScheduler, stream: tp.Any, initial: bytes = b""
    ) -> None:
        self.scheduler = scheduler
        self.stream = stream
        self._frames = v2gtp.FrameBuffer()
        self._frames.feed(initial)

    def send(self, message: models.V2GMessage) -> None:
        self.stream.write(
            v2gtp.frame(v2gtp.PayloadType.EXI_V2G_MESSAGE, docs.to_exi(message))
        )

    def receive(self, timeout: int) -> sched.Process:
        deadline = self.scheduler.now + timeout
        while True:
            item = self._frames.pop()
            if item is not None:
                header, payload = item
                if header.payload_type is not v2gtp.PayloadType.EXI_V2G_MESSAGE:
                    raise ctl_exc.UnexpectedPayload(payload_type=header.payload_type)
                return docs.from_exi(payload)
            remaining = deadline - self.scheduler.now
            if remaining <= 0:
                raise net_exc.WaitTimeout(timeout=timeout, what="V2G message")
            data = yield from self.stream.read(remaining)
            if not data:
                raise ctl_exc.ChannelClosed()
            self._frames.feed(data)

    def close(self) -> None:
        self.stream.close()
