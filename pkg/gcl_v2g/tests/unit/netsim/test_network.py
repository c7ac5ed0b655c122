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

import pytest

from gcl_v2g.common import constants
from gcl_v2g.netsim import addresses
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.netsim import host as net_host
from gcl_v2g.netsim import network
from gcl_v2g.tests.unit.netsim.conftest import host
from gcl_v2g.tests.unit.netsim.conftest import run_process
from gcl_v2g.tests.unit.netsim.conftest import switch


class TestBuildNetwork:
    def test_ports_and_addresses(self, lan):
        sw = lan.switch("sw")
        a = lan.host("a")

        assert sorted(sw.ports) == [1, 2, 3]
        assert list(a.ports) == [net_host.INTERFACE_PORT]
        assert a.link_address == addresses.LinkAddress.derive("a")
        assert a.net_address == addresses.NetAddress.derive("a")

    def test_link_listed_on_both_sides_is_created_once(self):
        sim = network.build_network([host("a", "sw"), switch("sw", "a")])

        assert len(sim.links) == 1

    def test_link_latency(self):
        sim = network.build_network(
            [
                network.NodeSpec(
                    "a", network.NodeKind.HOST, [network.LinkSpec("sw", 0)]
                ),
                host("b", "sw"),
                switch("sw"),
            ]
        )

        latencies = {
            frozenset({link.a.name, link.b.name} - {"sw"}): link.latency
            for link in sim.links
        }
        assert latencies == {frozenset({"a"}): 0, frozenset({"b"}): constants.MSEC}

    def test_duplicate_name(self):
        with pytest.raises(net_exc.DuplicateName):
            network.build_network([host("a"), host("a")])

    def test_dangling_link(self):
        with pytest.raises(net_exc.DanglingLink):
            network.build_network([host("a", "nowhere")])

    def test_self_link(self):
        with pytest.raises(net_exc.InvalidTopology):
            network.build_network([switch("sw", "sw")])

    def test_second_link_on_a_host(self):
        with pytest.raises(net_exc.InvalidTopology):
            network.build_network(
                [host("a", "sw1", "sw2"), switch("sw1"), switch("sw2")]
            )

    def test_address_collision(self):
        address = addresses.NetAddress.parse("fe80::1")
        specs = [
            network.NodeSpec("a", net_address=address),
            network.NodeSpec("b", net_address=address),
        ]

        with pytest.raises(net_exc.AddressCollision):
            network.build_network(specs)

    def test_unknown_node_lookup(self, lan):
        with pytest.raises(KeyError):
            lan.host("sw")
        with pytest.raises(KeyError):
            lan.switch("a")


class TestNeighborDiscovery:
    def test_resolve_caches_the_honest_answer(self, lan):
        a, b = lan.host("a"), lan.host("b")

        link = run_process(lan, a.resolve(b.net_address))

        assert link == b.link_address
        assert a.cached(b.net_address) == b.link_address
        # Solicitations do not teach the solicited host.
        assert b.cached(a.net_address) is None

    def test_concurrent_resolutions_share_one_solicitation(self, lan):
        a, b = lan.host("a"), lan.host("b")
        lan.spawn(a.resolve(b.net_address))
        lan.spawn(a.resolve(b.net_address))
        lan.run()

        solicitations = [
            r
            for r in lan.capture
            if r.node == "a"
            and r.frame.kind is frames.FrameKind.NEIGHBOR_SOLICITATION
        ]
        assert len(solicitations) == 1

    def test_unknown_address_times_out(self, lan):
        a = lan.host("a")
        process = lan.spawn(a.resolve(addresses.NetAddress.parse("fe80::dead")))
        lan.run()

        assert isinstance(process.exception(), net_exc.ResolveTimeout)
        assert lan.now >= net_host.SOLICITATIONS * net_host.SOLICITATION_INTERVAL

    def test_entry_expires(self, lan):
        a, b = lan.host("a"), lan.host("b")
        run_process(lan, a.resolve(b.net_address))

        lan.scheduler.call_later(net_host.NEIGHBOR_LIFETIME, lambda: None)
        lan.run()

        assert a.cached(b.net_address) is None


class TestDatagrams:
    def test_unicast(self, lan):
        a, b = lan.host("a"), lan.host("b")
        server = b.bind(7000)
        client = a.bind()

        def exchange():
            yield from client.sendto(b"ping", b.net_address, 7000)
            return (yield from server.recv(constants.SEC))

        datagram = run_process(lan, exchange())

        assert datagram.payload == b"ping"
        assert datagram.src_net == a.net_address
        assert datagram.src_port == client.port

    def test_multicast_reaches_every_listener(self, lan):
        a, b, c = lan.host("a"), lan.host("b"), lan.host("c")
        sockets = [b.bind(7000), c.bind(7000)]
        client = a.bind()
        run_process(lan, client.sendto(b"hello", addresses.BROADCAST_NET, 7000))

        received = [run_process(lan, s.recv(0)) for s in sockets]

        assert [d.payload for d in received] == [b"hello", b"hello"]

    def test_recv_timeout(self, lan):
        sock = lan.host("a").bind(7000)
        process = lan.spawn(sock.recv(10 * constants.MSEC))
        lan.run()

        assert isinstance(process.exception(), net_exc.WaitTimeout)

    def test_payload_too_large(self, lan):
        a, b = lan.host("a"), lan.host("b")
        process = lan.spawn(
            a.bind().sendto(
                bytes(frames.MAX_DATAGRAM_PAYLOAD + 1), b.net_address, 7000
            )
        )
        lan.run()

        assert isinstance(process.exception(), net_exc.PayloadTooLarge)

    def test_port_in_use(self, lan):
        a = lan.host("a")
        a.bind(7000)

        with pytest.raises(net_exc.PortInUse):
            a.bind(7000)

    def test_closed_port_can_be_bound_again(self, lan):
        a = lan.host("a")
        a.bind(7000).close()

        assert a.bind(7000).port == 7000
