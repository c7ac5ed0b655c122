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

import unittest

from oslo_config import cfg
from oslo_config import types as oslo_types

from gcl_v2g.common.oslo.types import EnergyTransferModeType
from gcl_v2g.common.oslo.types import HexBytesType
from gcl_v2g.common.oslo.types import LinkAddressType
from gcl_v2g.common.oslo.types import NetAddressType
from gcl_v2g.messages import models
from gcl_v2g.netsim import addresses


class TestEnergyTransferModeType(unittest.TestCase):
    def setUp(self):
        self.t = EnergyTransferModeType()

    def test_accepts_none(self):
        self.assertIsNone(self.t(None))

    def test_parses_wire_spelling(self):
        self.assertIs(
            self.t("DC_extended"), models.EnergyTransferMode.DC_EXTENDED
        )

    def test_accepts_enum_instance(self):
        mode = models.EnergyTransferMode.AC_THREE_PHASE
        self.assertIs(self.t(mode), mode)

    def test_unknown_mode_raises(self):
        with self.assertRaises(ValueError):
            self.t("DC_warp")

    def test_list_of_modes(self):
        t = oslo_types.List(item_type=self.t)
        self.assertEqual(
            t("AC_single_phase,DC_extended"),
            [
                models.EnergyTransferMode.AC_SINGLE_PHASE,
                models.EnergyTransferMode.DC_EXTENDED,
            ],
        )


class TestHexBytesType(unittest.TestCase):
    def test_parses_hex(self):
        self.assertEqual(HexBytesType()("00ff10"), b"\x00\xff\x10")

    def test_accepts_prefix(self):
        self.assertEqual(HexBytesType(2)("0xABCD"), b"\xab\xcd")

    def test_accepts_bytes(self):
        self.assertEqual(HexBytesType(1)(b"\x01"), b"\x01")

    def test_size_is_enforced(self):
        with self.assertRaises(ValueError):
            HexBytesType(8)("0011")

    def test_invalid_hex_raises(self):
        with self.assertRaises(ValueError):
            HexBytesType()("zz")

    def test_invalid_type_raises(self):
        with self.assertRaises(ValueError):
            HexBytesType()(123)  # type: ignore[arg-type]


class TestAddressTypes(unittest.TestCase):
    def test_net_address(self):
        parsed = NetAddressType()("fe80::1")
        self.assertIsInstance(parsed, addresses.NetAddress)
        self.assertEqual(str(parsed), "fe80::1")

    def test_link_address(self):
        parsed = LinkAddressType()("02:00:00:00:00:01")
        self.assertEqual(parsed.value, bytes([2, 0, 0, 0, 0, 1]))

    def test_invalid_addresses_raise(self):
        with self.assertRaises(ValueError):
            NetAddressType()("10.0.0.300")
        with self.assertRaises(ValueError):
            LinkAddressType()("02:00:00:00:01")

    def test_cli_parsing(self):
        conf = cfg.ConfigOpts()
        conf.register_cli_opt(cfg.Opt("address", type=NetAddressType()))
        conf(["--address", "fe80::2"], default_config_files=[])
        self.assertEqual(conf.address, addresses.NetAddress.parse("fe80::2"))

    def test_default_none_allowed(self):
        conf = cfg.ConfigOpts()
        conf.register_cli_opt(cfg.Opt("address", type=NetAddressType()))
        conf([], default_config_files=[])
        self.assertIsNone(conf.address)
