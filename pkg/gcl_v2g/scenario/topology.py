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

"""Topology files.

An INI file with a ``[topology]`` section, one ``[node <name>]`` section per
node and an optional ``[scenario]`` section selecting the attack::

    [topology]
    seed = 7
    duration = 60
    expect = FailedNegotiation

    [node ev1]
    kind = ev
    links = sw1
    energy.transfermode.requested = AC_three_phase

    [node sw1]
    kind = switch
    links = se1, attacker@2

A link is ``peer`` or ``peer@latency`` with the latency in simulated
milliseconds. ``expect`` is one outcome for every EV or a list of
``ev:outcome`` pairs; without it every EV is expected to complete.
"""

from __future__ import annotations

import configparser
import dataclasses
import enum
import os
import re
import typing as tp

from oslo_config import types as oslo_types

from gcl_v2g.attacks import exceptions as attack_exc
from gcl_v2g.attacks import scenarios
from gcl_v2g.common import constants
from gcl_v2g.common import utils
from gcl_v2g.controllers import config as ctl_config
from gcl_v2g.controllers.report import Outcome
from gcl_v2g.messages import models
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import properties

TOPOLOGY_SECTION = "topology"
SCENARIO_SECTION = "scenario"
NODE_PREFIX = "node "

DEFAULT_DURATION = 600  # simulated seconds
DEFAULT_PKI_SEED = 0
ALL_EVS = "*"

_SECTION_RE = re.compile(r"^\s*\[(?P<name>[^\]]+)\]")

_TOPOLOGY_KEYS: dict[str, tp.Any] = {
    "seed": oslo_types.Integer(min=0),
    "duration": oslo_types.Float(min=0),
    "parallel": oslo_types.Boolean(),
    "expect": oslo_types.String(),
    "pki.seed": oslo_types.Integer(min=0),
}

_SCENARIO_KEYS: dict[str, tp.Any] = {
    "kind": oslo_types.String(choices=[k.value for k in scenarios.ScenarioKind]),
    "mitm": oslo_types.String(),
    "switch": oslo_types.String(),
    "spoof": oslo_types.Boolean(),
    "victims": oslo_types.List(),
    "new.port": oslo_types.Port(),
    "rewrite.address": oslo_types.Boolean(),
    "major": oslo_types.Integer(min=0),
    "minor": oslo_types.Integer(min=0),
    "add": oslo_types.List(),
    "remove": oslo_types.List(),
    "forged.kind": oslo_types.String(choices=sorted(scenarios.FORGEABLE_KINDS)),
    "use.observed.session": oslo_types.Boolean(),
}


class NodeKind(str, enum.Enum):
    EV = "ev"
    SE = "se"
    SWITCH = "switch"
    MITM = "mitm"
    HOST = "host"


@dataclasses.dataclass(frozen=True)
class LinkDecl:
    peer: str
    # usec
    latency: int | None = None

    def to_dict(self) -> dict[str, tp.Any]:
        return {"peer": self.peer, "latency": self.latency}


@dataclasses.dataclass(frozen=True)
class NodeDecl:
    name: str
    kind: NodeKind
    links: tuple[LinkDecl, ...] = ()
    properties: tuple[tuple[str, str], ...] = ()
    config: tp.Any = dataclasses.field(default=None, compare=False)

    def address(self, key: str) -> tp.Any:
        for name, raw in self.properties:
            if name == key:
                return properties.ADDRESS_PROPERTIES[key][1](raw)
        return None

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "links": [link.to_dict() for link in self.links],
            "properties": dict(self.properties),
        }


@dataclasses.dataclass(frozen=True)
class ScenarioDecl:
    scenario: scenarios.AttackScenario
    mitm: str
    switch: str | None = None
    spoof: bool = False
    victims: tuple[str, ...] = ()
    raw: tuple[tuple[str, str], ...] = ()


@dataclasses.dataclass(frozen=True)
class TopologySpec:
    nodes: tuple[NodeDecl, ...]
    scenario: ScenarioDecl | None = None
    seed: int = constants.DEFAULT_SEED
    duration: int = DEFAULT_DURATION * constants.SEC
    parallel: bool = False
    expect: dict[str, Outcome] = dataclasses.field(default_factory=dict)
    pki_seed: int = DEFAULT_PKI_SEED
    path: str = "<memory>"

    def node(self, name: str) -> NodeDecl:
        for decl in self.nodes:
            if decl.name == name:
                return decl
        raise KeyError(name)

    def of_kind(self, kind: NodeKind) -> list[NodeDecl]:
        return [decl for decl in self.nodes if decl.kind is kind]

    @property
    def evs(self) -> list[NodeDecl]:
        return self.of_kind(NodeKind.EV)

    @property
    def ses(self) -> list[NodeDecl]:
        return self.of_kind(NodeKind.SE)

    def expected(self, ev: str) -> Outcome:
        return self.expect.get(ev, self.expect.get(ALL_EVS, Outcome.COMPLETED))

    def to_dict(self) -> dict[str, tp.Any]:
        """Canonical form; specDigest is computed over it."""
        return {
            "seed": self.seed,
            "duration": self.duration,
            "parallel": self.parallel,
            "expect": {name: str(o) for name, o in sorted(self.expect.items())},
            "pkiSeed": self.pki_seed,
            "nodes": [decl.to_dict() for decl in self.nodes],
            "scenario": dict(self.scenario.raw) if self.scenario else None,
        }

    @property
    def digest(self) -> str:
        return utils.calculate_hash(self.to_dict())

    def with_seed(self, seed: int) -> TopologySpec:
        return dataclasses.replace(self, seed=seed)


def _section_lines(text: str) -> dict[str, int]:
    lines = {}
    for number, line in enumerate(text.splitlines(), start=1):
        match = _SECTION_RE.match(line)
        if match:
            lines.setdefault(match.group("name").strip(), number)
    return lines


def _read(text: str, path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        interpolation=None,
        strict=True,
        delimiters=("=",),
        comment_prefixes=("#", ";"),
        inline_comment_prefixes=("#",),
    )
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        parser.read_string(text, source=path)
    except configparser.DuplicateSectionError as e:
        raise scn_exc.ConstraintViolation(
            where=f"{path}:{e.lineno}", reason=f"duplicate section [{e.section}]"
        )
    except configparser.DuplicateOptionError as e:
        raise scn_exc.ParseError(
            path=path, line=e.lineno or 0, reason=f"duplicate key {e.option}"
        )
    except configparser.MissingSectionHeaderError as e:
        raise scn_exc.ParseError(
            path=path, line=e.lineno, reason="key outside of any section"
        )
    except configparser.ParsingError as e:
        line, content = e.errors[0]
        raise scn_exc.ParseError(
            path=path, line=line, reason=f"cannot parse {content.strip()}"
        )
    return parser


def _typed(where: str, key: str, value_type: tp.Any, raw: str) -> tp.Any:
    if isinstance(value_type, oslo_types.List):
        raw = properties.normalize_list(raw)
    try:
        return value_type(raw)
    except ValueError as e:
        raise scn_exc.ConstraintViolation(where=where, reason=f"{key}={raw}: {e}")


def _parse_links(where: str, raw: str) -> tuple[LinkDecl, ...]:
    links = []
    for item in properties.normalize_list(raw).split(","):
        if not item:
            continue
        peer, _, latency = item.partition("@")
        if not latency:
            links.append(LinkDecl(peer))
            continue
        value = _typed(where, "links", oslo_types.Float(min=0), latency)
        links.append(LinkDecl(peer, int(value * constants.MSEC)))
    return tuple(links)


def _parse_expect(
    where: str, raw: str, evs: tp.Sequence[str]
) -> dict[str, Outcome]:
    def outcome(value: str) -> Outcome:
        try:
            return Outcome(value.strip())
        except ValueError:
            raise scn_exc.ConstraintViolation(
                where=where, reason=f"expect names an unknown outcome {value}"
            )

    raw = raw.strip()
    if not raw:
        return {}
    if ":" not in raw:
        return {ALL_EVS: outcome(raw)}
    expect = {}
    for item in properties.normalize_list(raw).split(","):
        ev, _, value = item.partition(":")
        if ev not in evs:
            raise scn_exc.ConstraintViolation(
                where=where, reason=f"expect names unknown EV {ev}"
            )
        expect[ev] = outcome(value)
    return expect


def _modes(
    where: str, values: tp.Sequence[str]
) -> tuple[models.EnergyTransferMode, ...]:
    mode_type = properties.SE_PROPERTIES["energy.transfermodes.supported"][1]
    return tuple(_typed(where, "modes", mode_type.item_type, v) for v in values)


def _payment_options(
    where: str, values: tp.Sequence[str]
) -> tuple[models.PaymentOption, ...]:
    try:
        return tuple(models.PaymentOption(v) for v in values)
    except ValueError as e:
        raise scn_exc.ConstraintViolation(where=where, reason=str(e))


def _parse_scenario(
    where: str,
    section: configparser.SectionProxy,
    nodes: tp.Sequence[NodeDecl],
) -> ScenarioDecl:
    values: dict[str, tp.Any] = {}
    for key, raw in section.items():
        if key not in _SCENARIO_KEYS:
            raise scn_exc.UnknownPropertyKey(node=SCENARIO_SECTION, key=key)
        values[key] = _typed(where, key, _SCENARIO_KEYS[key], raw)

    if "kind" not in values:
        raise scn_exc.ConstraintViolation(where=where, reason="kind is required")
    kind = scenarios.ScenarioKind(values["kind"])

    by_name = {decl.name: decl for decl in nodes}
    mitms = [decl.name for decl in nodes if decl.kind is NodeKind.MITM]
    mitm = values.get("mitm") or (mitms[0] if mitms else None)
    if mitm is None or mitm not in mitms:
        raise scn_exc.ConstraintViolation(
            where=where, reason="the scenario needs a mitm node"
        )
    for victim in values.get("victims", ()):
        decl = by_name.get(victim)
        if decl is None or decl.kind not in (NodeKind.EV, NodeKind.SE):
            raise scn_exc.ConstraintViolation(
                where=where, reason=f"victim {victim} is not an ev or se node"
            )

    switch = values.get("switch")
    spoof = values.get("spoof", False)
    if switch is None and not spoof:
        switch = _switch_of(by_name[mitm], nodes)
    if switch is not None and (
        switch not in by_name or by_name[switch].kind is not NodeKind.SWITCH
    ):
        raise scn_exc.ConstraintViolation(where=where, reason=f"no switch {switch}")

    params: dict[str, tp.Any] = {"kind": kind}
    if "new.port" in values:
        params["new_port"] = values["new.port"]
    if "rewrite.address" in values:
        params["rewrite_address"] = values["rewrite.address"]
    if "major" in values:
        params["major"] = values["major"]
    if "minor" in values:
        params["minor"] = values["minor"]
    if "forged.kind" in values:
        params["forged_kind"] = values["forged.kind"]
    if "use.observed.session" in values:
        params["use_observed_session"] = values["use.observed.session"]
    if kind is scenarios.ScenarioKind.SERVICE_LIST_TAMPER:
        params["add_modes"] = _modes(where, values.get("add", ()))
        params["remove_modes"] = _modes(where, values.get("remove", ()))
    elif kind is scenarios.ScenarioKind.PAYMENT_OPTION_TAMPER:
        params["remove_payment_options"] = _payment_options(
            where, values.get("remove", ())
        )
    try:
        scenario = scenarios.AttackScenario(**params)
    except attack_exc.InvalidScenario as e:
        raise scn_exc.ConstraintViolation(where=where, reason=str(e))

    return ScenarioDecl(
        scenario=scenario,
        mitm=mitm,
        switch=switch,
        spoof=spoof,
        victims=tuple(values.get("victims", ())),
        raw=tuple(section.items()),
    )


def _switch_of(mitm: NodeDecl, nodes: tp.Sequence[NodeDecl]) -> str | None:
    """The switch the MitM is linked to, whichever side declares the link."""
    for link in mitm.links:
        for decl in nodes:
            if decl.name == link.peer and decl.kind is NodeKind.SWITCH:
                return decl.name
    for decl in nodes:
        if decl.kind is NodeKind.SWITCH and any(
            link.peer == mitm.name for link in decl.links
        ):
            return decl.name
    return None


def _default_seed() -> int:
    value = os.environ.get(constants.SEED_ENV_VAR)
    if not value:
        return constants.DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise scn_exc.ConstraintViolation(
            where=constants.SEED_ENV_VAR, reason=f"not an integer: {value}"
        )


def loads_topology(
    text: str, path: str = "<memory>", seed: int | None = None
) -> TopologySpec:
    parser = _read(text, path)
    lines = _section_lines(text)
    base_dir = os.path.dirname(os.path.abspath(path))

    def where(section: str) -> str:
        return f"{path}:{lines.get(section, 0)} [{section}]"

    for section in parser.sections():
        if section not in (TOPOLOGY_SECTION, SCENARIO_SECTION) and not (
            section.startswith(NODE_PREFIX) and section[len(NODE_PREFIX) :].strip()
        ):
            raise scn_exc.ParseError(
                path=path,
                line=lines.get(section, 0),
                reason=f"unknown section [{section}]",
            )

    settings: dict[str, tp.Any] = {}
    if parser.has_section(TOPOLOGY_SECTION):
        for key, raw in parser.items(TOPOLOGY_SECTION):
            if key not in _TOPOLOGY_KEYS:
                raise scn_exc.UnknownPropertyKey(node=TOPOLOGY_SECTION, key=key)
            settings[key] = _typed(
                where(TOPOLOGY_SECTION), key, _TOPOLOGY_KEYS[key], raw
            )

    pki = properties.Pki(settings.get("pki.seed", DEFAULT_PKI_SEED))
    nodes = []
    seen: set[str] = set()
    for section in parser.sections():
        if not section.startswith(NODE_PREFIX):
            continue
        name = section[len(NODE_PREFIX) :].strip()
        if name in seen:
            raise scn_exc.ConstraintViolation(
                where=where(section), reason=f"duplicate node name {name}"
            )
        seen.add(name)
        nodes.append(_parse_node(name, parser[section], where(section), pki, base_dir))

    if not nodes:
        raise scn_exc.ConstraintViolation(where=path, reason="no nodes")
    if len([d for d in nodes if d.kind is NodeKind.MITM]) > 1:
        raise scn_exc.ConstraintViolation(where=path, reason="more than one mitm node")
    for decl in nodes:
        for link in decl.links:
            if link.peer not in seen:
                raise scn_exc.ConstraintViolation(
                    where=where(NODE_PREFIX + decl.name),
                    reason=f"link to unknown node {link.peer}",
                )

    scenario = None
    if parser.has_section(SCENARIO_SECTION):
        scenario = _parse_scenario(
            where(SCENARIO_SECTION), parser[SCENARIO_SECTION], nodes
        )

    if seed is None:
        seed = settings.get("seed")
    if seed is None:
        seed = _default_seed()

    return TopologySpec(
        nodes=tuple(nodes),
        scenario=scenario,
        seed=seed,
        duration=int(settings.get("duration", DEFAULT_DURATION) * constants.SEC),
        parallel=settings.get("parallel", False),
        expect=_parse_expect(
            where(TOPOLOGY_SECTION),
            settings.get("expect", ""),
            [d.name for d in nodes if d.kind is NodeKind.EV],
        ),
        pki_seed=pki.seed,
        path=path,
    )


def _parse_node(
    name: str,
    section: configparser.SectionProxy,
    where: str,
    pki: properties.Pki,
    base_dir: str,
) -> NodeDecl:
    items = dict(section.items())
    raw_kind = items.pop("kind", None)
    if raw_kind is None:
        raise scn_exc.ConstraintViolation(where=where, reason="kind is required")
    try:
        kind = NodeKind(raw_kind.strip())
    except ValueError:
        raise scn_exc.ConstraintViolation(
            where=where, reason=f"unknown node kind {raw_kind}"
        )
    links = _parse_links(where, items.pop("links", ""))
    props = tuple(items.items())
    for key, raw in props:
        properties.convert(kind.value, name, key, raw)

    config: ctl_config.EvConfig | ctl_config.SeConfig | None = None
    if kind is NodeKind.EV:
        config = properties.ev_config(name, props, pki, base_dir)
    elif kind is NodeKind.SE:
        config = properties.se_config(name, props, pki, base_dir)
    return NodeDecl(name, kind, links, props, config)


def parse_topology(path: str, seed: int | None = None) -> TopologySpec:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return loads_topology(text, path, seed)
