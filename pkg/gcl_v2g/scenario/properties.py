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

"""Node property keys of topology files and their conversion to configs.

Keys keep their dotted spelling, values are parsed with oslo.config types.
"""

from __future__ import annotations

import os
import random
import typing as tp

from oslo_config import types as oslo_types

from gcl_v2g.common.oslo import types as v2g_types
from gcl_v2g.controllers import config as ctl_config
from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.messages import models
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import identity as sc_identity

GENERATE = "generate"
ROOT_NAME = "gcl-v2g-root"

_PORT = oslo_types.Port()

ADDRESS_PROPERTIES: dict[str, tuple[str, tp.Any]] = {
    "link.address": ("link_address", v2g_types.LinkAddressType()),
    "net.address": ("net_address", v2g_types.NetAddressType()),
}

EV_PROPERTIES: dict[str, tuple[str, tp.Any]] = {
    "voltage.accuracy": ("voltage_accuracy", oslo_types.Float(min=0, max=1)),
    "tls": ("tls", oslo_types.Boolean()),
    "session.id": ("session_id", v2g_types.HexBytesType(models.SESSION_ID_SIZE)),
    "network.interface": ("network_interface", oslo_types.String()),
    "energy.transfermode.requested": (
        "energy_transfer_mode_requested",
        v2g_types.EnergyTransferModeType(),
    ),
    "charging.loop.iterations": (
        "charging_loop_iterations",
        oslo_types.Integer(min=1),
    ),
    "tls.trust.anchor": ("trust_anchor", oslo_types.String()),
    "evcc.id": ("evcc_id", v2g_types.HexBytesType(models.EVCC_ID_SIZE)),
    "sdp.port": ("sdp_port", _PORT),
    "energy.request": ("energy_request", oslo_types.Integer(min=0)),
    **ADDRESS_PROPERTIES,
}

SE_PROPERTIES: dict[str, tuple[str, tp.Any]] = {
    "free.service": ("free_service", oslo_types.Boolean()),
    "network.interface": ("network_interface", oslo_types.String()),
    "energy.transfermodes.supported": (
        "energy_transfer_modes_supported",
        oslo_types.List(item_type=v2g_types.EnergyTransferModeType()),
    ),
    "evse.id": ("evse_id", oslo_types.String()),
    "sdp.port": ("sdp_port", _PORT),
    "v2g.port": ("v2g_port", _PORT),
    "tls.identity": ("tls_identity", oslo_types.String()),
    "tls.required": ("tls_required", oslo_types.Boolean()),
    "metering.receipt": ("metering_receipt", oslo_types.Boolean()),
    "payment.options": (
        "payment_options",
        oslo_types.List(
            item_type=oslo_types.String(
                choices=[option.value for option in models.PaymentOption]
            )
        ),
    ),
    **ADDRESS_PROPERTIES,
}

PROPERTIES: dict[str, dict[str, tuple[str, tp.Any]]] = {
    "ev": EV_PROPERTIES,
    "se": SE_PROPERTIES,
    "mitm": ADDRESS_PROPERTIES,
    "host": ADDRESS_PROPERTIES,
    "switch": {},
}


def normalize_list(raw: str) -> str:
    return ",".join(item.strip() for item in raw.split(",") if item.strip())


def convert(kind: str, node: str, key: str, raw: str) -> tuple[str, tp.Any]:
    """Parse one property into (config field, value)."""
    try:
        field, value_type = PROPERTIES[kind][key]
    except KeyError:
        raise scn_exc.UnknownPropertyKey(node=node, key=key)
    if isinstance(value_type, oslo_types.List):
        raw = normalize_list(raw)
    try:
        return field, value_type(raw)
    except ValueError as e:
        raise scn_exc.ConstraintViolation(
            where=f"node {node}", reason=f"{key}={raw}: {e}"
        )


class Pki:
    """Deterministic root and node identities for `generate` values."""

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._root: sc_identity.Identity | None = None
        self._issued: dict[str, sc_identity.Identity] = {}

    @property
    def root(self) -> sc_identity.Identity:
        if self._root is None:
            self._root = sc_identity.generate_identity(
                ROOT_NAME, None, random.Random(f"{self.seed}/{ROOT_NAME}")
            )
        return self._root

    def anchor(self) -> sc_identity.TrustAnchor:
        return self.root.as_anchor()

    def identity(self, name: str) -> sc_identity.Identity:
        if name not in self._issued:
            self._issued[name] = sc_identity.generate_identity(
                name, self.root, random.Random(f"{self.seed}/{name}")
            )
        return self._issued[name]


def _resolve_path(value: str, base_dir: str) -> str:
    return value if os.path.isabs(value) else os.path.join(base_dir, value)


def _node_values(
    kind: str, node: str, properties: tp.Iterable[tuple[str, str]]
) -> dict[str, tp.Any]:
    values = dict(convert(kind, node, key, raw) for key, raw in properties)
    for field, _ in ADDRESS_PROPERTIES.values():
        values.pop(field, None)
    return values


def ev_config(
    node: str,
    properties: tp.Iterable[tuple[str, str]],
    pki: Pki,
    base_dir: str = ".",
) -> ctl_config.EvConfig:
    values = _node_values("ev", node, properties)
    if values.get("session_id") is not None:
        values["session_id"] = models.SessionId(values["session_id"])
    anchor = values.pop("trust_anchor", None)
    try:
        if anchor == GENERATE:
            values["trust_anchor"] = pki.anchor()
        elif anchor:
            values["trust_anchor"] = sc_identity.load_anchor(
                _resolve_path(anchor, base_dir)
            )
        return ctl_config.EvConfig(**values)
    except (ctl_exc.InvalidConfig, sc_exc.InvalidIdentityFile, ValueError) as e:
        raise scn_exc.ConstraintViolation(where=f"node {node}", reason=str(e))


def se_config(
    node: str,
    properties: tp.Iterable[tuple[str, str]],
    pki: Pki,
    base_dir: str = ".",
) -> ctl_config.SeConfig:
    values = _node_values("se", node, properties)
    if "energy_transfer_modes_supported" in values:
        values["energy_transfer_modes_supported"] = tuple(
            values["energy_transfer_modes_supported"]
        )
    if "payment_options" in values:
        values["payment_options"] = tuple(
            models.PaymentOption(option) for option in values["payment_options"]
        )
    identity = values.pop("tls_identity", None)
    try:
        if identity == GENERATE:
            values["tls_identity"] = pki.identity(node)
        elif identity:
            values["tls_identity"] = sc_identity.load_identity(
                _resolve_path(identity, base_dir)
            )
        return ctl_config.SeConfig(**values)
    except (ctl_exc.InvalidConfig, sc_exc.InvalidIdentityFile, ValueError) as e:
        raise scn_exc.ConstraintViolation(where=f"node {node}", reason=str(e))
