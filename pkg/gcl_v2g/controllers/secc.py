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

"""Supply equipment communication controller."""

from __future__ import annotations

import dataclasses
import logging
import random

from gcl_v2g.common import constants
from gcl_v2g.common import exceptions as common_exc
from gcl_v2g.controllers import config as ctl_config
from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.controllers import negotiation
from gcl_v2g.controllers import report as ctl_report
from gcl_v2g.controllers import states
from gcl_v2g.controllers import transport
from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.messages import models
from gcl_v2g.messages import sequence
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import host as net_host
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.securechannel import channel as sc_channel
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import handshake
from gcl_v2g.securechannel import records
from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import sdp
from gcl_v2g.wire import v2gtp

LOG = logging.getLogger(__name__)

IDLE_TIMEOUT = 5 * constants.SEC

Code = models.ResponseCode
Stage = sequence.Stage


@dataclasses.dataclass(frozen=True)
class SeccSession:
    """Per-connection state threaded through secc_handle."""

    state: states.SeccState = states.SeccState.NEGOTIATING
    stage: Stage = Stage.NONE
    session_id: models.SessionId = dataclasses.field(
        default_factory=models.SessionId.zero
    )
    branch: models.ChargingBranch = models.ChargingBranch.AC
    schema_id: int | None = None
    profile: tuple[int, ...] = ()
    loop_pass: int = 0
    meter_reading: int = 0
    termination_type: models.TerminationType | None = None

    @property
    def finished(self) -> bool:
        return self.state in (states.SeccState.DONE, states.SeccState.FAILED)


def _meter_increment(session: SeccSession) -> int:
    if not session.profile:
        return 0
    return session.profile[min(session.loop_pass, len(session.profile)) - 1]


def _respond(
    session: SeccSession, body: models.Response, stage: Stage, **changes
) -> tuple[models.V2GMessage, SeccSession]:
    if body.response_code.is_ok:
        changes.setdefault("stage", stage)
        state = states.check_transition(
            session.state, states.for_stage(states.SeccState, stage)
        )
        if stage is Stage.SESSION_STOP:
            state = states.check_transition(state, states.SeccState.DONE)
    else:
        state = states.check_transition(session.state, states.SeccState.FAILED)
    new_session = dataclasses.replace(session, state=state, **changes)
    session_id = changes.get("session_id", session.session_id)
    return models.V2GMessage(session_id, body), new_session


def secc_handle(
    message: models.V2GMessage,
    session: SeccSession,
    config: ctl_config.SeConfig,
    rng: random.Random,
    now: int = 0,
) -> tuple[models.V2GMessage | None, SeccSession]:
    """Answer one request.

    Every failure is a response code: an unknown session id yields
    FAILED_UnknownSession, an out-of-order request FAILED. Both end the
    session. A response body from the EV cannot be answered and returns no
    message.
    """
    body = message.body
    if not isinstance(body, models.Request):
        return None, dataclasses.replace(session, state=states.SeccState.FAILED)

    response_cls = models.response_type(body)
    previous = None if session.stage is Stage.NONE else session.stage

    if (
        session.stage >= Stage.SESSION_SETUP
        and message.session_id != session.session_id
    ):
        LOG.info(
            "Unknown session %s on %s (expected %s)",
            message.session_id,
            body.kind(),
            session.session_id,
        )
        return _respond(session, response_cls(Code.FAILED_UNKNOWN_SESSION), Stage.NONE)

    try:
        stage = sequence.validate_transition(previous, body, session.branch)
    except msg_exc.SequenceViolation as e:
        LOG.info("Rejecting %s: %s", body.kind(), e)
        return _respond(session, response_cls(Code.FAILED), Stage.NONE)

    if isinstance(body, models.SupportedAppProtocolReq):
        schema_id = negotiation.negotiate_protocol(
            body.app_protocols, config.app_protocols
        )
        if schema_id is None:
            return _respond(
                session,
                models.SupportedAppProtocolRes(Code.FAILED_NO_NEGOTIATION),
                stage,
            )
        return _respond(
            session,
            models.SupportedAppProtocolRes(Code.OK, schema_id=schema_id),
            stage,
            schema_id=schema_id,
        )

    if isinstance(body, models.SessionSetupReq):
        requested = None if message.session_id.is_zero else message.session_id
        session_id = negotiation.assign_session_id(requested, rng)
        return _respond(
            session,
            models.SessionSetupRes(Code.OK, evse_id=config.evse_id),
            stage,
            session_id=session_id,
        )

    if isinstance(body, models.ServiceDiscoveryReq):
        return _respond(
            session,
            models.ServiceDiscoveryRes(
                Code.OK,
                payment_options=config.payment_options,
                free_service=config.free_service,
                energy_transfer_modes=config.energy_transfer_modes_supported,
            ),
            stage,
        )

    if isinstance(body, models.PaymentServiceSelectionReq):
        code = (
            Code.OK
            if body.selected_payment_option in config.payment_options
            else Code.FAILED_SERVICE_SELECTION
        )
        return _respond(session, models.PaymentServiceSelectionRes(code), stage)

    if isinstance(body, models.ChargeParameterDiscoveryReq):
        mode = body.requested_energy_transfer_mode
        if mode not in config.energy_transfer_modes_supported:
            return _respond(
                session,
                models.ChargeParameterDiscoveryRes(
                    Code.FAILED_WRONG_ENERGY_TRANSFER_MODE
                ),
                stage,
            )
        return _respond(
            session,
            models.ChargeParameterDiscoveryRes(
                Code.OK,
                evse_max_voltage=config.max_voltage,
                evse_max_current=config.max_current,
            ),
            stage,
            branch=mode.branch,
        )

    if isinstance(body, models.PreChargeReq):
        return _respond(
            session,
            models.PreChargeRes(
                Code.OK, present_voltage=min(body.target_voltage, config.max_voltage)
            ),
            stage,
        )

    if isinstance(body, models.PowerDeliveryReq):
        changes = {}
        if body.charge_progress is models.ChargeProgress.START:
            changes["profile"] = body.charging_profile
        return _respond(session, models.PowerDeliveryRes(Code.OK), stage, **changes)

    if isinstance(body, (models.ChargingStatusReq, models.CurrentDemandReq)):
        advanced = dataclasses.replace(session, loop_pass=session.loop_pass + 1)
        reading = session.meter_reading + _meter_increment(advanced)
        meter = models.MeterInfo(config.evse_id, reading, now // constants.MSEC)
        if isinstance(body, models.ChargingStatusReq):
            response: models.Response = models.ChargingStatusRes(
                Code.OK,
                evse_id=config.evse_id,
                meter_info=meter,
                receipt_required=config.metering_receipt,
            )
        else:
            response = models.CurrentDemandRes(
                Code.OK,
                present_voltage=min(body.target_voltage, config.max_voltage),
                present_current=min(body.target_current, config.max_current),
                meter_info=meter,
                receipt_required=config.metering_receipt,
            )
        return _respond(
            session,
            response,
            stage,
            loop_pass=advanced.loop_pass,
            meter_reading=reading,
        )

    if isinstance(body, models.SessionStopReq):
        return _respond(
            session,
            models.SessionStopRes(Code.OK),
            stage,
            termination_type=body.termination_type,
        )

    # Authorization, CableCheck, MeteringReceipt, WeldingDetection.
    return _respond(session, response_cls(Code.OK), stage)


class Secc:
    """A charging column listening for EVs on one host."""

    def __init__(
        self,
        host: net_host.Host,
        config: ctl_config.SeConfig,
        rng: random.Random | None = None,
    ) -> None:
        self.host = host
        self.config = config
        self.rng = rng or random.Random(f"{host.sim.seed}/{host.name}")
        self.sessions: list[ctl_report.SeccSessionReport] = []
        self._sdp_socket: net_host.DatagramSocket | None = None
        self._listener: net_host.Listener | None = None
        self._processes: list[sched.SimProcess] = []

    @property
    def scheduler(self) -> sched.EventScheduler:
        return self.host.scheduler

    def start(self) -> Secc:
        self._sdp_socket = self.host.bind(self.config.sdp_port)
        try:
            self._listener = self.host.listen(self.config.v2g_port)
        except net_exc.PortInUse:
            self._sdp_socket.close()
            raise
        self._processes = [
            self.scheduler.spawn(self._answer_discovery(), f"{self.host.name} sdp"),
            self.scheduler.spawn(self._serve_forever(), f"{self.host.name} secc"),
        ]
        LOG.info(
            "SECC %s listening on [%s]:%d",
            self.host.name,
            self.host.net_address,
            self.config.v2g_port,
        )
        return self

    def stop(self) -> None:
        for process in self._processes:
            process.cancel()
        if self._sdp_socket is not None:
            self._sdp_socket.close()
        if self._listener is not None:
            self._listener.close()

    # Discovery

    def _security_for(self, request: sdp.SdpRequest) -> sdp.Security:
        if self.config.tls_identity is None:
            return sdp.Security.PLAIN_TCP
        if self.config.tls_required:
            return sdp.Security.SECURED_WITH_TLS
        return request.security

    def _answer_discovery(self) -> sched.Process:
        while True:
            datagram = yield from self._sdp_socket.recv()
            try:
                header, payload = v2gtp.decode_v2gtp(datagram.payload)
                if header.payload_type is not v2gtp.PayloadType.SDP_REQUEST:
                    continue
                request = sdp.decode_sdp_request(payload)
            except wire_exc.WireException as e:
                LOG.debug("%s: ignoring bad SDP request: %s", self.host.name, e)
                continue
            response = sdp.SdpResponse(
                secc_address=self.host.net_address.value,
                secc_port=self.config.v2g_port,
                security=self._security_for(request),
                transport=sdp.Transport.TCP,
            )
            try:
                yield from self._sdp_socket.sendto(
                    v2gtp.frame(
                        v2gtp.PayloadType.SDP_RESPONSE,
                        sdp.encode_sdp_response(response),
                    ),
                    datagram.src_net,
                    datagram.src_port,
                )
            except net_exc.ResolveTimeout:
                LOG.debug("%s: SDP requester vanished", self.host.name)

    # Sessions

    def _serve_forever(self) -> sched.Process:
        while True:
            stream = yield from self._listener.accept()
            record = ctl_report.SeccSessionReport(
                peer_address=str(stream.remote_net), peer_port=stream.remote_port
            )
            self.sessions.append(record)
            try:
                yield from self._serve(stream, record)
            except common_exc.V2GException as e:
                record.state = states.SeccState.FAILED.value
                record.failure_reason = str(e)
                LOG.info("%s: session with %s ended: %s", self.host.name, stream, e)
            finally:
                stream.close()

    def _open_channel(
        self, stream, record: ctl_report.SeccSessionReport
    ) -> sched.Process:
        first = yield from stream.read(IDLE_TIMEOUT)
        if not first:
            raise ctl_exc.ChannelClosed()
        if first[0] != records.RecordType.HANDSHAKE:
            if self.config.tls_required:
                raise sc_exc.HandshakeFailure(
                    reason=sc_exc.FailureReason.TRANSCRIPT_MISMATCH,
                    detail="plain connection to a secured-only SECC",
                )
            return transport.MessageChannel(self.scheduler, stream, first)
        if self.config.tls_identity is None:
            raise sc_exc.HandshakeFailure(
                reason=sc_exc.FailureReason.TRANSCRIPT_MISMATCH,
                detail="no identity for a secured channel",
            )

        record.state = states.SeccState.HANDSHAKING.value
        buffer = records.RecordBuffer()
        buffer.feed(first)
        observed = handshake.EndpointBinding(
            client_address=stream.remote_net.value,
            client_port=stream.remote_port,
            server_address=stream.local_net.value,
            server_port=stream.local_port,
        )
        secure = yield from sc_channel.accept_secure(
            stream, self.config.tls_identity, observed, self.rng, buffer=buffer
        )
        record.secured = True
        return transport.MessageChannel(self.scheduler, secure)

    def _serve(self, stream, record: ctl_report.SeccSessionReport) -> sched.Process:
        channel = yield from self._open_channel(stream, record)
        session = SeccSession()
        record.state = session.state.value
        while not session.finished:
            message = yield from channel.receive(IDLE_TIMEOUT)
            stage = sequence.stage_of(message.body)
            record.transcript.append(
                ctl_report.TranscriptEntry(
                    constants.Direction.IN,
                    message.kind,
                    int(Stage.NONE if stage is None else stage),
                )
            )
            response, session = secc_handle(
                message, session, self.config, self.rng, self.scheduler.now
            )
            record.state = session.state.value
            record.session_id = session.session_id
            record.termination_type = session.termination_type
            if response is None:
                break
            record.transcript.append(
                ctl_report.TranscriptEntry(
                    constants.Direction.OUT,
                    response.kind,
                    int(Stage.NONE if stage is None else stage),
                )
            )
            record.response_codes.append(response.body.response_code)
            LOG.debug("%s: %s -> %s", self.host.name, message.kind, response.kind)
            channel.send(response)


def secc_start(
    config: ctl_config.SeConfig,
    host: net_host.Host,
    rng: random.Random | None = None,
) -> Secc:
    return Secc(host, config, rng).start()
