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

import os

import pytest

from gcl_v2g.common import constants
from gcl_v2g.netsim import capture
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.netsim import frames
from gcl_v2g.tests.unit.netsim.conftest import run_process


@pytest.fixture
def records(lan):
    a, b = lan.host("a"), lan.host("b")
    b.bind(7000)
    run_process(lan, a.bind().sendto(b"ping", b.net_address, 7000))
    return lan.capture


class TestCapture:
    def test_every_hop_is_recorded(self, records):
        datagrams = [
            (r.node, r.direction)
            for r in records
            if r.frame.kind is frames.FrameKind.DATAGRAM
        ]

        assert datagrams == [
            ("a", constants.Direction.OUT),
            ("sw", constants.Direction.IN),
            ("sw", constants.Direction.OUT),
            ("b", constants.Direction.IN),
        ]

    def test_records_are_time_ordered(self, records):
        times = [r.time for r in records]

        assert times == sorted(times)

    def test_round_trip(self, records, tmp_path):
        path = os.path.join(tmp_path, "capture.jsonl")

        capture.export_capture(records, path)

        assert capture.load_capture(path) == records

    def test_empty_capture_is_just_a_header(self):
        data = capture.dumps([])

        assert data.count(b"\n") == 1
        assert capture.loads(data) == []

    def test_bad_header(self):
        with pytest.raises(net_exc.IoFailure):
            capture.loads(b'{"format":"other","version":1}\n')

    def test_missing_file(self, tmp_path):
        with pytest.raises(net_exc.IoFailure):
            capture.load_capture(os.path.join(tmp_path, "missing.jsonl"))

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(net_exc.IoFailure):
            capture.export_capture([], os.path.join(tmp_path, "no", "such.jsonl"))

    def test_pcap_export(self, records, tmp_path):
        path = os.path.join(tmp_path, "capture.pcap")

        capture.export_pcap(records, path)
        packets = capture.read_pcap(path)

        assert [data for _, data in packets] == [
            r.frame.to_bytes() for r in records
        ]
        assert packets[-1][0] == pytest.approx(records[-1].time / constants.SEC)
