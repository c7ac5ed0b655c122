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

"""The attacker: a promiscuous host fed by switch flow rules or spoofed
neighbor advertisements.

Datagrams between victims are re-emitted from the MitM's own link, streams
are terminated by a transparent proxy and re-originated towards the SECC.
Every V2GTP frame on the way passes through `MitmNode.intercept`.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
import typing as tp

from gcl_v2g.attacks import exceptions as attack_exc
from gcl_v2g.attacks import scenarios
from gcl_v2g.codec import exceptions as codec_exc
from gcl_v2g.common import constants
from gcl_v2g.messages import docs
from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.messages import models
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import host as net_host
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.netsim import switch as net_switch
from gcl_v2g.securechannel import records
from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import sdp
from gcl_v2g.wire import v2gtp

LOG = logging.getLogger(__name__)

REDIRECT_PRIORITY = 100

Kind = scenarios.ScenarioKind


class DecisionKind(str, enum.Enum):
    FORWARD = "Forward"
    DROP = "Drop"
    REPLACE = "Replace"
    INJECT = "Inject"


@dataclasses.dataclass(frozen=True)
class InterceptorDecision:
    kind: DecisionKind
    payload: bytes = b""
    extra: tuple[bytes, ...] = ()

    @classmethod
    def forward(cls) -> InterceptorDecision:
        return cls(DecisionKind.FORWARD)

    @classmethod
    def drop(cls) -> InterceptorDecision:
        return cls(DecisionKind.DROP)

    @classmethod
    def replace(cls, payload: bytes) -> InterceptorDecision:
        return cls(DecisionKind.REPLACE, payload=payload)

    @classmethod
    def inject(cls, *extra: bytes) -> InterceptorDecision:
        return cls(DecisionKind.INJECT, extra=extra)

    def emit(self, original: bytes) -> tuple[bytes, ...]:
        """Payloads to send on in place of `original`."""
        if self.kind is DecisionKind.DROP:
            return ()
        if self.kind is DecisionKind.REPLACE:
            return (self.payload,)
        if self.kind is DecisionKind.INJECT:
            return (original, *self.extra)
        return (original,)


class Channel(str, enum.Enum):
    DATAGRAM = "datagram"
    STREAM = "stream"
    # Raw stream segments seen by the frame hook.
    SEGMENT = "segment"


class PayloadClass(str, enum.Enum):
    SDP_REQUEST = "SdpRequest"
    SDP_RESPONSE = "SdpResponse"
    V2G_MESSAGE = "V2GMessage"
    HANDSHAKE = "Handshake"
    OTHER = "Other"


@dataclasses.dataclass(frozen=True)
class Interception:
    channel: Channel
    to_secc: bool
    payload: bytes
    src_net: addresses.NetAddress | None = None
    dst_net: addresses.NetAddress | None = None


@dataclasses.dataclass(frozen=True)
class Classified:
    payload_class: PayloadClass
    value: tp.Any = None


def classify(payload: bytes) -> Classified:
    """Sort an intercepted payload; DecodeFailure for undecodable V2G messages."""
    try:
        header, body = v2gtp.decode_v2gtp(payload)
    except wire_exc.WireException:
        if payload[:1] and payload[0] in tuple(records.RecordType):
            return Classified(PayloadClass.HANDSHAKE)
        return Classified(PayloadClass.OTHER)

    try:
        if header.payload_type is v2gtp.PayloadType.SDP_REQUEST:
            return Classified(PayloadClass.SDP_REQUEST, sdp.decode_sdp_request(body))
        if header.payload_type is v2gtp.PayloadType.SDP_RESPONSE:
            return Classified(PayloadClass.SDP_RESPONSE, sdp.decode_sdp_response(body))
        return Classified(PayloadClass.V2G_MESSAGE, docs.from_exi(body))
    except (
        wire_exc.WireException,
        codec_exc.CodecException,
        msg_exc.MessagesException,
    ) as e:
        raise attack_exc.DecodeFailure(reason=str(e))


@dataclasses.dataclass
class MitmStats:
    intercepted: int = 0
    modified: int = 0
    dropped: int = 0
    injected: int = 0
    forwarded: int = 0
    decode_failures: int = 0

    def account(self, decision: InterceptorDecision) -> None:
        self.intercepted += 1
        if decision.kind is DecisionKind.REPLACE:
            self.modified += 1
        elif decision.kind is DecisionKind.DROP:
            self.dropped += 1
        elif decision.kind is DecisionKind.INJECT:
            self.injected += 1
        else:
            self.forwarded += 1

    def to_dict(self) -> dict[str, int]:
        return {
            "intercepted": self.intercepted,
            "modified": self.modified,
            "dropped": self.dropped,
            "injected": self.injected,
            "forwarded": self.forwarded,
            "decodeFailures": self.decode_failures,
        }


Interceptor = tp.Callable[["MitmNode", Interception], "InterceptorDecision | None"]


class MitmNode:
    """Attack logic bound to one host.

    A custom `interceptor` is consulted first; returning None leaves the
    decision to the scenario.
    """

    def __init__(
        self,
        host: net_host.Host,
        scenario: scenarios.AttackScenario | None = None,
        victims: tp.Iterable[net_host.Host] = (),
        interceptor: Interceptor | None = None,
    ) -> None:
        self.host = host
        self.scenario = scenario or scenarios.AttackScenario()
        self.victims: list[net_host.Host] = list(victims)
        self.interceptor = interceptor
        self.stats = MitmStats()
        self.observed_session_id: models.SessionId | None = None
        self.attached_switch: str | None = None
        self.spoofing = False
        # SECC endpoints announced over SDP, keyed by the SECC's address.
        self.secc_endpoints: dict[
            addresses.NetAddress, tuple[addresses.NetAddress, int]
        ] = {}
        self._last_endpoint: tuple[addresses.NetAddress, int] | None = None
        self._listener: net_host.Listener | None = None

    @property
    def name(self) -> str:
        return self.host.name

    @property
    def own_link(self) -> addresses.LinkAddress:
        return self.host.link_address

    @property
    def own_net(self) -> addresses.NetAddress:
        return self.host.net_address

    @property
    def proxy_port(self) -> int:
        return self.scenario.intercept_port

    @property
    def active(self) -> bool:
        return self.attached_switch is not None or self.spoofing

    @property
    def scheduler(self) -> sched.EventScheduler:
        return self.host.scheduler

    def _nets(self, role: str) -> set[addresses.NetAddress]:
        return {v.net_address for v in self.victims if v.role == role}

    @property
    def ev_nets(self) -> set[addresses.NetAddress]:
        return self._nets("ev")

    @property
    def se_nets(self) -> set[addresses.NetAddress]:
        return self._nets("se")

    def is_victim_pair(
        self, src: addresses.NetAddress | None, dst: addresses.NetAddress | None
    ) -> bool:
        nets = self.ev_nets | self.se_nets
        return src in nets and dst in nets and src != dst

    def activate(self) -> None:
        if self._listener is not None:
            return
        self.host.promiscuous = True
        self.host.frame_hook = self._on_frame
        self._listener = self.host.listen(
            self.proxy_port, transparent=True, accept_filter=self._accepts
        )
        self.scheduler.spawn(self._proxy_forever(), f"{self.name} proxy")
        LOG.info(
            "MitM %s active with %s on port %d",
            self.name,
            self.scenario.kind,
            self.proxy_port,
        )

    # Decisions

    def intercept(self, interception: Interception) -> InterceptorDecision:
        decision = self._decide(interception)
        self.stats.account(decision)
        return decision

    def _decide(self, interception: Interception) -> InterceptorDecision:
        if self.interceptor is not None:
            decision = self.interceptor(self, interception)
            if decision is not None:
                return decision

        if interception.channel is Channel.SEGMENT:
            if self.scenario.kind is Kind.BLACKHOLE:
                return InterceptorDecision.drop()
            return InterceptorDecision.forward()

        try:
            classified = classify(interception.payload)
        except attack_exc.DecodeFailure as e:
            LOG.debug("MitM %s: %s", self.name, e)
            self.stats.decode_failures += 1
            return InterceptorDecision.forward()

        if classified.payload_class is PayloadClass.SDP_RESPONSE:
            return self._on_sdp_response(classified.value)
        if classified.payload_class is PayloadClass.V2G_MESSAGE:
            return self._on_message(classified.value)
        return InterceptorDecision.forward()

    def _on_sdp_response(self, response: sdp.SdpResponse) -> InterceptorDecision:
        address = addresses.NetAddress(response.secc_address)
        self.secc_endpoints[address] = (address, response.secc_port)
        self._last_endpoint = (address, response.secc_port)
        if self.scenario.kind is not Kind.SDP_PORT_REWRITE:
            return InterceptorDecision.forward()
        rewritten = dataclasses.replace(response, secc_port=self.proxy_port)
        if self.scenario.rewrite_address:
            rewritten = dataclasses.replace(rewritten, secc_address=self.own_net.value)
        LOG.info(
            "MitM %s: SECC [%s]:%d announced as [%s]:%d",
            self.name,
            address,
            response.secc_port,
            addresses.NetAddress(rewritten.secc_address),
            rewritten.secc_port,
        )
        return InterceptorDecision.replace(
            v2gtp.frame(
                v2gtp.PayloadType.SDP_RESPONSE, sdp.encode_sdp_response(rewritten)
            )
        )

    def _on_message(self, message: models.V2GMessage) -> InterceptorDecision:
        if isinstance(message.body, models.SessionSetupRes):
            self.observed_session_id = message.session_id
        if self.scenario.kind is Kind.PASSTHROUGH_LOGGER:
            LOG.info("MitM %s: %s", self.name, docs.to_xml(message))
            return InterceptorDecision.forward()
        if self.scenario.kind is Kind.BLACKHOLE:
            return InterceptorDecision.drop()

        rewritten = scenarios.rewrite_message(
            self.scenario, message, self.observed_session_id
        )
        if rewritten is None or rewritten == message:
            return InterceptorDecision.forward()
        LOG.info("MitM %s: rewrote %s", self.name, message.kind)
        return InterceptorDecision.replace(
            v2gtp.frame(v2gtp.PayloadType.EXI_V2G_MESSAGE, docs.to_exi(rewritten))
        )

    # Frame level

    def _on_frame(self, frame: frames.Frame) -> bool:
        """Frame hook; True means the frame was consumed."""
        kind = frame.kind
        if kind is frames.FrameKind.NEIGHBOR_SOLICITATION:
            if self.spoofing:
                self._spoof(frame)
            return False
        if not self.is_victim_pair(frame.src_net, frame.dst_net):
            return False

        if kind is frames.FrameKind.DATAGRAM:
            if frame.dst_net.is_multicast:
                return False
            self.scheduler.spawn(
                self._relay_datagram(frame), f"{self.name} datagram relay"
            )
            return True

        blackhole = self.scenario.kind is Kind.BLACKHOLE
        if kind is frames.FrameKind.STREAM_SEGMENT and blackhole:
            decision = self.intercept(
                Interception(
                    Channel.SEGMENT,
                    frame.dst_net in self.se_nets,
                    frame.payload,
                    frame.src_net,
                    frame.dst_net,
                )
            )
            return decision.kind is DecisionKind.DROP
        return False

    def _spoof(self, frame: frames.Frame) -> None:
        target = frames.solicited(frame)
        if not self.is_victim_pair(frame.src_net, target):
            return
        LOG.debug("MitM %s: claiming %s towards %s", self.name, target, frame.src_net)
        self.host.send_frame(
            frames.neighbor_advertisement(
                self.own_link, frame.src_link, target, frame.src_net
            )
        )

    def _relay_datagram(self, frame: frames.Frame) -> sched.Process:
        decision = self.intercept(
            Interception(
                Channel.DATAGRAM,
                frame.dst_net in self.se_nets,
                frame.payload,
                frame.src_net,
                frame.dst_net,
            )
        )
        outgoing = decision.emit(frame.payload)
        if not outgoing:
            return
        try:
            link = yield from self.host.resolve(frame.dst_net)
        except net_exc.ResolveTimeout:
            LOG.debug("MitM %s: %s unreachable", self.name, frame.dst_net)
            return
        for payload in outgoing:
            self.host.send_frame(
                frame.replace(src_link=self.own_link, dst_link=link, payload=payload)
            )

    # Stream proxy

    def _accepts(self, frame: frames.Frame) -> bool:
        return frame.src_net in self.ev_nets and (
            frame.dst_net in self.se_nets or frame.dst_net == self.own_net
        )

    def _upstream_for(self, down) -> tuple[addresses.NetAddress, int]:
        if down.local_net == self.own_net:
            if self._last_endpoint is None:
                raise net_exc.ConnectionRefused(
                    address=str(down.local_net), port=down.local_port
                )
            return self._last_endpoint
        return self.secc_endpoints.get(
            down.local_net, (down.local_net, down.local_port)
        )

    def _proxy_forever(self) -> sched.Process:
        while True:
            down = yield from self._listener.accept()
            self.scheduler.spawn(self._proxy(down), f"{self.name} proxy {down}")

    def _proxy(self, down) -> sched.Process:
        try:
            address, port = self._upstream_for(down)
            up = yield from self.host.connect(address, port)
        except net_exc.NetsimException as e:
            LOG.info("MitM %s: upstream for %s failed: %s", self.name, down, e)
            down.abort()
            return
        LOG.debug("MitM %s: proxying %s <-> %s", self.name, down, up)
        yield sched.gather(
            self.scheduler,
            [
                self.scheduler.spawn(self._relay(down, up, True), f"{down} up"),
                self.scheduler.spawn(self._relay(up, down, False), f"{up} down"),
            ],
        )

    def _relay(self, source, sink, to_secc: bool) -> sched.Process:
        buffer = bytearray()
        raw = False
        while True:
            try:
                data = yield from source.read()
            except net_exc.NetsimException:
                sink.abort()
                return
            if not data:
                sink.close()
                return
            if raw:
                self._pass(sink, bytes(data), to_secc)
                continue
            buffer.extend(data)
            while buffer:
                try:
                    _, _, consumed = v2gtp.decode_v2gtp_prefix(bytes(buffer))
                except wire_exc.Truncated:
                    break
                except wire_exc.WireException:
                    # Sealed records or foreign traffic; relay verbatim from now on.
                    raw = True
                    self.stats.decode_failures += 1
                    self._pass(sink, bytes(buffer), to_secc)
                    buffer.clear()
                    break
                chunk = bytes(buffer[:consumed])
                del buffer[:consumed]
                self._pass(sink, chunk, to_secc)

    def _pass(self, sink, payload: bytes, to_secc: bool) -> None:
        decision = self.intercept(Interception(Channel.STREAM, to_secc, payload))
        for out in decision.emit(payload):
            try:
                sink.write(out)
            except net_exc.NetsimException:
                return


def mitm_attach(
    sim,
    switch_name: str,
    mitm: MitmNode,
    sdp_ports: tp.Mapping[str, int] | None = None,
) -> None:
    """Divert victim SDP answers and SECC-bound streams to the MitM's port.

    `sdp_ports` maps SECC host names to their SDP port when it is not the
    default one.
    """
    sdp_ports = sdp_ports or {}
    try:
        switch = sim.switch(switch_name)
    except KeyError:
        raise attack_exc.UnknownSwitch(name=switch_name)
    mitm_port = switch.port_to(mitm.host)
    if mitm_port is None:
        raise attack_exc.MitmNotLinked(mitm=mitm.name, switch=switch_name)

    if not mitm.victims:
        mitm.victims = [
            h
            for h in sim.hosts()
            if h.role in ("ev", "se") and switch.port_to(h) is not None
        ]
    evs = [v for v in mitm.victims if v.role == "ev"]
    ses = [v for v in mitm.victims if v.role == "se"]
    redirect = net_switch.redirect_to_port(mitm_port)

    for ev in evs:
        ev_port = switch.port_to(ev)
        for se in ses:
            se_port = switch.port_to(se)
            se_sdp_port = sdp_ports.get(se.name, constants.V2G_SDP_PORT)
            if ev_port is not None:
                switch.add_rule(
                    net_switch.FlowRule(
                        REDIRECT_PRIORITY,
                        net_switch.FlowMatch(
                            in_port=ev_port,
                            dst_link=se.link_address,
                            kind=frames.FrameKind.STREAM_SEGMENT,
                            dst_port=mitm.proxy_port,
                        ),
                        redirect,
                        cookie=mitm.name,
                    )
                )
            if se_port is not None:
                switch.add_rule(
                    net_switch.FlowRule(
                        REDIRECT_PRIORITY,
                        net_switch.FlowMatch(
                            in_port=se_port,
                            dst_link=ev.link_address,
                            kind=frames.FrameKind.DATAGRAM,
                            src_port=se_sdp_port,
                        ),
                        redirect,
                        cookie=mitm.name,
                    )
                )

    mitm.attached_switch = switch_name
    mitm.activate()


def spoof_neighbors(mitm: MitmNode) -> None:
    """Answer solicitations between victims with the MitM's own link address."""
    if not mitm.victims:
        mitm.victims = [
            h for h in mitm.host.sim.hosts() if h.role in ("ev", "se")
        ]
    mitm.spoofing = True
    mitm.activate()
