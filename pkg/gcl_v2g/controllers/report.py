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

import dataclasses
import enum
import typing as tp

from gcl_v2g.common import constants
from gcl_v2g.messages import models
from gcl_v2g.messages import sequence


class Outcome(str, enum.Enum):
    COMPLETED = "Completed"
    FAILED_NEGOTIATION = "FailedNegotiation"
    FAILED_HANDSHAKE = "FailedHandshake"
    FAILED_SEQUENCE = "FailedSequence"
    FAILED_DISCOVERY_TIMEOUT = "FailedDiscoveryTimeout"
    FAILED_TRANSPORT = "FailedTransport"
    FAILED_UNKNOWN_SESSION = "FailedUnknownSession"
    FAILED_WRONG_ENERGY_TRANSFER_MODE = "FailedWrongEnergyTransferMode"
    FAILED_SERVICE_SELECTION = "FailedServiceSelection"
    FAILED_GENERIC = "FailedGeneric"

    def __str__(self) -> str:
        return self.value


RESPONSE_OUTCOMES = {
    models.ResponseCode.FAILED_NO_NEGOTIATION: Outcome.FAILED_NEGOTIATION,
    models.ResponseCode.FAILED_UNKNOWN_SESSION: Outcome.FAILED_UNKNOWN_SESSION,
    models.ResponseCode.FAILED_WRONG_ENERGY_TRANSFER_MODE: (
        Outcome.FAILED_WRONG_ENERGY_TRANSFER_MODE
    ),
    models.ResponseCode.FAILED_SERVICE_SELECTION: Outcome.FAILED_SERVICE_SELECTION,
    models.ResponseCode.FAILED: Outcome.FAILED_GENERIC,
}


class TranscriptEntry(tp.NamedTuple):
    direction: constants.Direction
    kind: str
    stage: int

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "direction": self.direction.value,
            "kind": self.kind,
            "stage": self.stage,
        }


def _meter_dict(meter: models.MeterInfo | None) -> dict[str, tp.Any] | None:
    if meter is None:
        return None
    return {
        "meterId": meter.meter_id,
        "meterReading": meter.meter_reading,
        "timestamp": meter.timestamp,
    }


@dataclasses.dataclass
class ChargeSessionReport:
    ev: str
    outcome: Outcome | None = None
    last_stage_reached: sequence.Stage = sequence.Stage.NONE
    session_id: models.SessionId = dataclasses.field(
        default_factory=models.SessionId.zero
    )
    messages_sent: int = 0
    messages_received: int = 0
    meter_final: models.MeterInfo | None = None
    transcript: list[TranscriptEntry] = dataclasses.field(default_factory=list)
    response_code: models.ResponseCode | None = None
    failure_reason: str | None = None
    secured: bool = False
    peer_address: str | None = None
    peer_port: int | None = None
    schema_id: int | None = None
    termination_type: models.TerminationType | None = None
    evse_energy_transfer_modes: tuple[models.EnergyTransferMode, ...] = ()
    started: int = 0
    finished: int = 0

    @property
    def completed(self) -> bool:
        return self.outcome is Outcome.COMPLETED

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "ev": self.ev,
            "outcome": self.outcome.value if self.outcome else None,
            "lastStageReached": int(self.last_stage_reached),
            "sessionId": self.session_id.hex,
            "messagesSent": self.messages_sent,
            "messagesReceived": self.messages_received,
            "meterFinal": _meter_dict(self.meter_final),
            "syntheticMeter": True,
            "transcript": [entry.to_dict() for entry in self.transcript],
            "responseCode": self.response_code.value if self.response_code else None,
            "failureReason": self.failure_reason,
            "secured": self.secured,
            "peerAddress": self.peer_address,
            "peerPort": self.peer_port,
            "schemaId": self.schema_id,
            "terminationType": (
                self.termination_type.value if self.termination_type else None
            ),
            "evseEnergyTransferModes": [
                m.value for m in self.evse_energy_transfer_modes
            ],
            "started": self.started,
            "finished": self.finished,
        }


@dataclasses.dataclass
class SeccSessionReport:
    """What the SECC saw of one served connection."""

    peer_address: str
    peer_port: int
    secured: bool = False
    session_id: models.SessionId = dataclasses.field(
        default_factory=models.SessionId.zero
    )
    transcript: list[TranscriptEntry] = dataclasses.field(default_factory=list)
    response_codes: list[models.ResponseCode] = dataclasses.field(default_factory=list)
    termination_type: models.TerminationType | None = None
    state: str = "Idle"
    failure_reason: str | None = None

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "peerAddress": self.peer_address,
            "peerPort": self.peer_port,
            "secured": self.secured,
            "sessionId": self.session_id.hex,
            "transcript": [entry.to_dict() for entry in self.transcript],
            "responseCodes": [code.value for code in self.response_codes],
            "terminationType": (
                self.termination_type.value if self.termination_type else None
            ),
            "state": self.state,
            "failureReason": self.failure_reason,
        }
