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

"""Electric vehicle communication controller.

``ev_charge`` runs one complete charge and always returns a report: every
wait has a timeout and every failure becomes an outcome.
"""

from __future__ import annotations

import logging
import random

from gcl_v2g.common import constants
from gcl_v2g.common import exceptions as common_exc
from gcl_v2g.controllers import config as ctl_config
from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.controllers import report as ctl_report
from gcl_v2g.controllers import states
from gcl_v2g.controllers import transport
from gcl_v2g.messages import models
from gcl_v2g.messages import sequence
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import host as net_host
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.securechannel import channel as sc_channel
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import handshake
from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import sdp
from gcl_v2g.wire import v2gtp

LOG = logging.getLogger(__name__)

SDP_INTERVAL = 250 * constants.MSEC
SDP_ATTEMPTS = 10
RESPONSE_TIMEOUT = 2 * constants.SEC

Outcome = ctl_report.Outcome
Stage = sequence.Stage


class Evcc:
    def __init__(
        self,
        host: net_host.Host,
        config: ctl_config.EvConfig,
        rng: random.Random | None = None,
    ) -> None:
        self.host = host
        self.config = config
        self.rng = rng or random.Random(f"{host.sim.seed}/{host.name}")
        self.state = states.EvccState.IDLE
        self.report = ctl_report.ChargeSessionReport(ev=host.name)
        self._stage: Stage = Stage.NONE
        self._session_id = models.SessionId.zero()
        self._branch = config.energy_transfer_mode_requested.branch

    @property
    def scheduler(self) -> sched.EventScheduler:
        return self.host.scheduler

    def _move(self, target: states.EvccState) -> None:
        if target is self.state:
            return
        self.state = states.check_transition(self.state, target)
        LOG.debug("%s: %s", self.host.name, self.state.value)

    def _end(self, outcome: Outcome, detail: str = "") -> ctl_exc.SessionEnded:
        return ctl_exc.SessionEnded(outcome=outcome.value, detail=detail)

    def charge(self) -> sched.Process:
        report = self.report
        report.started = self.scheduler.now
        stream = None
        try:
            response = yield from self._discover()
            stream = yield from self._connect(response)
            channel = transport.MessageChannel(self.scheduler, stream)
            yield from self._run_session(channel)
            report.outcome = Outcome.COMPLETED
            self._move(states.EvccState.DONE)
        except ctl_exc.SessionEnded as e:
            report.outcome = Outcome(e.outcome)
            report.failure_reason = report.failure_reason or e.detail or None
            self._move(states.EvccState.FAILED)
        except common_exc.V2GException as e:
            LOG.warning("EV %s: unexpected failure: %s", self.host.name, e)
            report.outcome = Outcome.FAILED_TRANSPORT
            report.failure_reason = str(e)
            self._move(states.EvccState.FAILED)
        finally:
            if stream is not None:
                stream.close()
        report.finished = self.scheduler.now
        LOG.info(
            "EV %s: %s at stage %d (session %s)",
            self.host.name,
            report.outcome,
            report.last_stage_reached,
            report.session_id,
        )
        return report

    # Discovery and connection

    def _discover(self) -> sched.Process:
        self._move(states.EvccState.DISCOVERING)
        sock = self.host.bind()
        security = (
            sdp.Security.SECURED_WITH_TLS if self.config.tls else sdp.Security.PLAIN_TCP
        )
        request = v2gtp.frame(
            v2gtp.PayloadType.SDP_REQUEST,
            sdp.encode_sdp_request(sdp.SdpRequest(security, sdp.Transport.TCP)),
        )
        try:
            for attempt in range(SDP_ATTEMPTS):
                yield from sock.sendto(
                    request, addresses.BROADCAST_NET, self.config.sdp_port
                )
                deadline = self.scheduler.now + SDP_INTERVAL
                while self.scheduler.now < deadline:
                    try:
                        datagram = yield from sock.recv(deadline - self.scheduler.now)
                    except net_exc.WaitTimeout:
                        break
                    try:
                        header, payload = v2gtp.decode_v2gtp(datagram.payload)
                        if header.payload_type is v2gtp.PayloadType.SDP_RESPONSE:
                            return sdp.decode_sdp_response(payload)
                    except wire_exc.WireException as e:
                        LOG.debug("%s: bad SDP response: %s", self.host.name, e)
                LOG.debug("%s: SDP attempt %d unanswered", self.host.name, attempt + 1)
        finally:
            sock.close()
        raise self._end(
            Outcome.FAILED_DISCOVERY_TIMEOUT, f"{SDP_ATTEMPTS} SDP requests unanswered"
        )

    def _connect(self, response: sdp.SdpResponse) -> sched.Process:
        report = self.report
        address = addresses.NetAddress(response.secc_address)
        report.peer_address = str(address)
        report.peer_port = response.secc_port
        advertised_tls = response.security is sdp.Security.SECURED_WITH_TLS
        if advertised_tls and not self.config.tls:
            raise self._end(
                Outcome.FAILED_HANDSHAKE, "SECC requires a secured channel"
            )

        self._move(states.EvccState.CONNECTING)
        try:
            stream = yield from self.host.connect(address, response.secc_port)
        except net_exc.NetsimException as e:
            raise self._end(Outcome.FAILED_TRANSPORT, str(e))

        if not (self.config.tls and advertised_tls):
            return stream

        self._move(states.EvccState.HANDSHAKING)
        binding = handshake.EndpointBinding(
            client_address=stream.local_net.value,
            client_port=stream.local_port,
            server_address=stream.remote_net.value,
            server_port=stream.remote_port,
        )
        try:
            secure = yield from sc_channel.connect_secure(
                stream, self.config.trust_anchor, binding, self.rng
            )
        except sc_exc.HandshakeFailure as e:
            report.failure_reason = e.reason.value
            raise self._end(Outcome.FAILED_HANDSHAKE, e.detail)
        report.secured = True
        return secure

    # Charge sequence

    def _exchange(
        self,
        channel: transport.MessageChannel,
        body: models.Request,
        session_id: models.SessionId | None = None,
    ) -> sched.Process:
        report = self.report
        stage = sequence.validate_transition(
            None if self._stage is Stage.NONE else self._stage, body, self._branch
        )
        self._move(states.for_stage(states.EvccState, stage))
        message = models.V2GMessage(session_id or self._session_id, body)
        try:
            channel.send(message)
        except net_exc.NetsimException as e:
            raise self._end(Outcome.FAILED_TRANSPORT, str(e))
        report.messages_sent += 1
        report.transcript.append(
            ctl_report.TranscriptEntry(constants.Direction.OUT, message.kind, stage)
        )

        try:
            response = yield from channel.receive(RESPONSE_TIMEOUT)
        except (net_exc.NetsimException, ctl_exc.ChannelClosed) as e:
            raise self._end(Outcome.FAILED_TRANSPORT, str(e))
        except common_exc.V2GException as e:
            raise self._end(Outcome.FAILED_SEQUENCE, str(e))
        report.messages_received += 1
        report.transcript.append(
            ctl_report.TranscriptEntry(constants.Direction.IN, response.kind, stage)
        )

        expected = models.response_type(body)
        if not isinstance(response.body, expected):
            raise self._end(
                Outcome.FAILED_SEQUENCE,
                f"expected {expected.kind()}, got {response.kind}",
            )
        code = response.body.response_code
        report.response_code = code
        self._stage = stage
        if not code.is_ok:
            if stage is not Stage.SESSION_STOP:
                report.last_stage_reached = stage
            raise self._end(ctl_report.RESPONSE_OUTCOMES[code], code.value)
        report.last_stage_reached = stage
        return response

    def _charging_profile(self) -> tuple[int, ...]:
        iterations = self.config.charging_loop_iterations
        accuracy = self.config.voltage_accuracy
        base = round(self.config.energy_request / iterations)
        return tuple(
            round(base * self.rng.uniform(1 - accuracy, 1 + accuracy))
            for _ in range(iterations)
        )

    def _run_session(self, channel: transport.MessageChannel) -> sched.Process:
        config = self.config
        report = self.report
        dc = self._branch is models.ChargingBranch.DC

        response = yield from self._exchange(
            channel, models.SupportedAppProtocolReq(config.app_protocols)
        )
        report.schema_id = response.body.schema_id

        response = yield from self._exchange(
            channel,
            models.SessionSetupReq(config.evcc_id or self.host.link_address.value),
            session_id=config.session_id,
        )
        self._session_id = response.session_id
        report.session_id = response.session_id

        response = yield from self._exchange(channel, models.ServiceDiscoveryReq())
        report.evse_energy_transfer_modes = response.body.energy_transfer_modes
        offered = response.body.payment_options
        if not offered:
            raise self._end(
                Outcome.FAILED_SERVICE_SELECTION, "no payment option offered"
            )
        option = (
            models.PaymentOption.EXTERNAL_PAYMENT
            if models.PaymentOption.EXTERNAL_PAYMENT in offered
            else offered[0]
        )
        yield from self._exchange(channel, models.PaymentServiceSelectionReq(option))
        yield from self._exchange(channel, models.AuthorizationReq())
        yield from self._exchange(
            channel,
            models.ChargeParameterDiscoveryReq(
                requested_energy_transfer_mode=config.energy_transfer_mode_requested,
                max_voltage=config.max_voltage,
                max_current=config.max_current,
                energy_request=config.energy_request,
            ),
        )
        if dc:
            yield from self._exchange(channel, models.CableCheckReq())
            yield from self._exchange(
                channel, models.PreChargeReq(target_voltage=config.max_voltage)
            )
        yield from self._exchange(
            channel,
            models.PowerDeliveryReq(
                models.ChargeProgress.START, charging_profile=self._charging_profile()
            ),
        )

        for _ in range(config.charging_loop_iterations):
            if dc:
                loop_body: models.Request = models.CurrentDemandReq(
                    target_voltage=config.max_voltage,
                    target_current=config.max_current,
                )
            else:
                loop_body = models.ChargingStatusReq()
            response = yield from self._exchange(channel, loop_body)
            meter = response.body.meter_info
            if meter is not None:
                if (
                    report.meter_final is not None
                    and meter.meter_reading < report.meter_final.meter_reading
                ):
                    raise self._end(Outcome.FAILED_SEQUENCE, "meter went backwards")
                report.meter_final = meter
            if response.body.receipt_required and meter is not None:
                yield from self._exchange(channel, models.MeteringReceiptReq(meter))

        yield from self._exchange(
            channel, models.PowerDeliveryReq(models.ChargeProgress.STOP)
        )
        if dc:
            yield from self._exchange(channel, models.WeldingDetectionReq())
        report.termination_type = models.TerminationType.TERMINATE
        yield from self._exchange(
            channel, models.SessionStopReq(models.TerminationType.TERMINATE)
        )


def ev_charge(
    config: ctl_config.EvConfig,
    host: net_host.Host,
    rng: random.Random | None = None,
) -> sched.Process:
    """Simulated process returning a ChargeSessionReport."""
    return (yield from Evcc(host, config, rng).charge())
