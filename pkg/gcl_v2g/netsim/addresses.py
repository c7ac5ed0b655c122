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
import ipaddress

import xxhash

LINK_ADDRESS_SIZE = 6
NET_ADDRESS_SIZE = 16

_LINK_LOCAL_PREFIX = bytes.fromhex("fe80000000000000")


@dataclasses.dataclass(frozen=True, order=True)
class LinkAddress:
    value: bytes

    def __post_init__(self) -> None:
        if len(self.value) != LINK_ADDRESS_SIZE:
            raise ValueError(f"Link address must be {LINK_ADDRESS_SIZE} bytes")

    def __str__(self) -> str:
        return ":".join(f"{b:02x}" for b in self.value)

    @classmethod
    def parse(cls, value: str) -> LinkAddress:
        parts = value.split(":")
        if len(parts) != LINK_ADDRESS_SIZE or any(len(p) != 2 for p in parts):
            raise ValueError(f"Invalid link address {value!r}")
        return cls(bytes(int(p, 16) for p in parts))

    @classmethod
    def derive(cls, name: str) -> LinkAddress:
        """Locally administered unicast address derived from a node name."""
        digest = xxhash.xxh64(name.encode()).digest()
        return cls(b"\x02" + digest[: LINK_ADDRESS_SIZE - 1])

    @property
    def is_multicast(self) -> bool:
        return bool(self.value[0] & 0x01)


@dataclasses.dataclass(frozen=True, order=True)
class NetAddress:
    value: bytes

    def __post_init__(self) -> None:
        if len(self.value) != NET_ADDRESS_SIZE:
            raise ValueError(f"Network address must be {NET_ADDRESS_SIZE} bytes")

    def __str__(self) -> str:
        return str(ipaddress.IPv6Address(self.value))

    @classmethod
    def parse(cls, value: str) -> NetAddress:
        return cls(ipaddress.IPv6Address(value).packed)

    @classmethod
    def derive(cls, name: str) -> NetAddress:
        """Link-local address with an interface id hashed from a node name."""
        return cls(_LINK_LOCAL_PREFIX + xxhash.xxh64(name.encode()).digest())

    @property
    def is_multicast(self) -> bool:
        return self.value[0] == 0xFF


# All-nodes group of the link domain and its link-layer mapping.
BROADCAST_NET = NetAddress.parse("ff02::1")
BROADCAST_LINK = LinkAddress.parse("33:33:00:00:00:01")


def link_for_group(address: NetAddress) -> LinkAddress:
    return LinkAddress(b"\x33\x33" + address.value[-4:])
