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

import pytest

from gcl_v2g.wire import exceptions as wire_exc
from gcl_v2g.wire import sdp


class TestSdpRequest:
    def test_plain_tcp(self):
        req = sdp.SdpRequest(sdp.Security.PLAIN_TCP)

        assert sdp.encode_sdp_request(req) == b"\x10\x00"

    def test_secured_with_tls(self):
        req = sdp.SdpRequest(sdp.Security.SECURED_WITH_TLS)

        assert sdp.encode_sdp_request(req) == b"\x00\x00"

    def test_decode(self):
        assert sdp.decode_sdp_request(b"\x10\x00") == sdp.SdpRequest(
            sdp.Security.PLAIN_TCP, sdp.Transport.TCP
        )

    def test_bad_length(self):
        with pytest.raises(wire_exc.BadLength):
            sdp.decode_sdp_request(b"\x10")

    def test_unknown_security(self):
        with pytest.raises(wire_exc.UnknownSecurityByte):
            sdp.decode_sdp_request(b"\x20\x00")

    def test_unknown_transport(self):
        with pytest.raises(wire_exc.UnknownTransportByte):
            sdp.decode_sdp_request(b"\x10\x11")


class TestSdpResponse:
    def test_encode(self):
        res = sdp.SdpResponse(bytes(16), 15118, sdp.Security.PLAIN_TCP)

        assert sdp.encode_sdp_response(res) == bytes(16) + b"\x3b\x0e\x10\x00"

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(500):
            res = sdp.SdpResponse(
                rng.randbytes(16),
                rng.randint(1, 0xFFFF),
                rng.choice(list(sdp.Security)),
            )

            assert sdp.decode_sdp_response(sdp.encode_sdp_response(res)) == res

    def test_bad_length(self):
        with pytest.raises(wire_exc.BadLength):
            sdp.decode_sdp_response(bytes(19))

    def test_zero_port(self):
        with pytest.raises(wire_exc.ZeroPort):
            sdp.decode_sdp_response(bytes(16) + b"\x00\x00\x10\x00")


class TestSdpFuzz:
    def test_random_inputs(self):
        rng = random.Random(7)
        for _ in range(100_000):
            data = rng.randbytes(rng.choice([2, 20, rng.randint(0, 64)]))
            for decode, encode in (
                (sdp.decode_sdp_request, sdp.encode_sdp_request),
                (sdp.decode_sdp_response, sdp.encode_sdp_response),
            ):
                try:
                    value = decode(data)
                except wire_exc.WireException:
                    continue
                assert encode(value) == data
