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

from oslo_config import types as oslo_types

from gcl_v2g.messages import models
from gcl_v2g.netsim import addresses


class EnergyTransferModeType(oslo_types.String):
    """Energy transfer mode spelled as on the wire, e.g. ``AC_three_phase``."""

    def __init__(self):
        super().__init__(
            type_name="energy transfer mode",
            choices=[mode.value for mode in models.EnergyTransferMode],
        )

    def __call__(self, value):  # type: ignore[override]
        if value is None:
            return None
        if isinstance(value, models.EnergyTransferMode):
            return value
        return models.EnergyTransferMode(super().__call__(value))

    def __repr__(self) -> str:
        return "EnergyTransferMode"


class HexBytesType(oslo_types.String):
    """Hex string of a fixed number of bytes; separators are not allowed."""

    def __init__(self, size=None):
        super().__init__(type_name="hex bytes")
        self.size = size

    def __call__(self, value):  # type: ignore[override]
        if value is None:
            return None
        if isinstance(value, bytes):
            data = value
        elif isinstance(value, str):
            text = value[2:] if value.lower().startswith("0x") else value
            data = bytes.fromhex(text)
        else:
            raise ValueError(f"Invalid hex bytes type: {type(value).__name__}")
        if self.size is not None and len(data) != self.size:
            raise ValueError(f"Expected {self.size} bytes, got {len(data)}")
        return data

    def __repr__(self) -> str:
        return "HexBytes"


class NetAddressType(oslo_types.String):
    def __init__(self):
        super().__init__(type_name="network address")

    def __call__(self, value):  # type: ignore[override]
        if value is None:
            return None
        if isinstance(value, addresses.NetAddress):
            return value
        if isinstance(value, str):
            return addresses.NetAddress.parse(value)
        raise ValueError(f"Invalid network address type: {type(value).__name__}")

    def __repr__(self) -> str:
        return "NetAddress"


class LinkAddressType(oslo_types.String):
    def __init__(self):
        super().__init__(type_name="link address")

    def __call__(self, value):  # type: ignore[override]
        if value is None:
            return None
        if isinstance(value, addresses.LinkAddress):
            return value
        if isinstance(value, str):
            return addresses.LinkAddress.parse(value)
        raise ValueError(f"Invalid link address type: {type(value).__name__}")

    def __repr__(self) -> str:
        return "LinkAddress"

