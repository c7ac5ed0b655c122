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
import logging
import typing as tp

from gcl_v2g.attacks import mitm as attack_mitm
from gcl_v2g.common import constants
from gcl_v2g.common import utils
from gcl_v2g.controllers import evcc
from gcl_v2g.controllers import secc
from gcl_v2g.controllers.report import ChargeSessionReport
from gcl_v2g.controllers.report import Outcome
from gcl_v2g.controllers.report import SeccSessionReport
from gcl_v2g.netsim import capture
from gcl_v2g.netsim import network
from gcl_v2g.netsim import scheduler as sched
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import topology

LOG = logging.getLogger(__name__)

REPORT_FORMAT = "gcl-v2g-report"
REPORT_VERSION = 1

NodeKind = topology.NodeKind


@dataclasses.dataclass
class RunReport:
    seed: int
    spec_digest: str
    per_ev: dict[str, ChargeSessionReport] = dataclasses.field(default_factory=dict)
    expected: dict[str, Outcome] = dataclasses.field(default_factory=dict)
    secc_sessions: dict[str, list[SeccSessionReport]] = dataclasses.field(
        default_factory=dict
    )
    mitm_stats: attack_mitm.MitmStats | None = None
    capture_path: str | None = None
    finished_at: int = 0
    timed_out: bool = False

    @property
    def expectations_met(self) -> bool:
        return not self.timed_out and all(
            report.outcome is self.expected[name]
            for name, report in self.per_ev.items()
        )

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "seed": self.seed,
            "specDigest": self.spec_digest,
            "capturePath": self.capture_path,
            "finishedAt": self.finished_at,
            "timedOut": self.timed_out,
            "expectationsMet": self.expectations_met,
            "perEv": {name: r.to_dict() for name, r in self.per_ev.items()},
            "expected": {name: o.value for name, o in self.expected.items()},
            "seccSessions": {
                name: [s.to_dict() for s in sessions]
                for name, sessions in self.secc_sessions.items()
            },
            "mitmStats": self.mitm_stats.to_dict() if self.mitm_stats else None,
        }


def _node_spec(decl: topology.NodeDecl) -> network.NodeSpec:
    links = [network.LinkSpec(link.peer, link.latency) for link in decl.links]
    if decl.kind is NodeKind.SWITCH:
        return network.NodeSpec(decl.name, network.NodeKind.SWITCH, links)
    return network.NodeSpec(
        decl.name,
        network.NodeKind.HOST,
        links,
        link_address=decl.address("link.address"),
        net_address=decl.address("net.address"),
        role=decl.kind.value,
    )


def build(spec: topology.TopologySpec) -> network.Simulation:
    return network.build_network([_node_spec(d) for d in spec.nodes], spec.seed)


def _arm_mitm(
    sim: network.Simulation, spec: topology.TopologySpec
) -> attack_mitm.MitmNode | None:
    decl = spec.scenario
    if decl is None:
        return None
    mitm = attack_mitm.MitmNode(
        sim.host(decl.mitm),
        decl.scenario,
        victims=[sim.host(name) for name in decl.victims],
    )
    if decl.switch is not None:
        sdp_ports = {d.name: d.config.sdp_port for d in spec.ses}
        attack_mitm.mitm_attach(sim, decl.switch, mitm, sdp_ports)
    if decl.spoof:
        attack_mitm.spoof_neighbors(mitm)
    return mitm


def _charge_in_order(chargers: tp.Sequence[evcc.Evcc]) -> sched.Process:
    for charger in chargers:
        yield from charger.charge()


def simulate(
    spec: topology.TopologySpec, parallel: bool | None = None
) -> tuple[network.Simulation, RunReport]:
    """Run the topology in memory; nothing is written."""
    sim = build(spec)
    mitm = _arm_mitm(sim, spec)
    seccs = {d.name: secc.secc_start(d.config, sim.host(d.name)) for d in spec.ses}
    chargers = [evcc.Evcc(sim.host(d.name), d.config) for d in spec.evs]

    parallel = spec.parallel if parallel is None else parallel
    if parallel:
        done = sched.gather(
            sim.scheduler,
            [sim.spawn(c.charge(), f"charge {c.host.name}") for c in chargers],
        )
    else:
        done = sim.spawn(_charge_in_order(chargers), "charge")

    completed = sim.run_until_complete(done, spec.duration)
    if completed:
        # Let closing handshakes drain so captures end at quiescence.
        sim.run(spec.duration)

    report = RunReport(
        seed=spec.seed,
        spec_digest=spec.digest,
        per_ev={c.host.name: c.report for c in chargers},
        expected={c.host.name: spec.expected(c.host.name) for c in chargers},
        secc_sessions={name: s.sessions for name, s in seccs.items()},
        mitm_stats=mitm.stats if mitm else None,
        finished_at=sim.now,
        timed_out=not completed,
    )
    for name, charge_report in report.per_ev.items():
        LOG.info("EV %s: %s", name, charge_report.outcome)
    return sim, report


def run(
    spec: topology.TopologySpec,
    capture_path: str | None = None,
    report_path: str | None = None,
    pcap_path: str | None = None,
    parallel: bool | None = None,
) -> RunReport:
    """Simulate, write the requested artifacts and return the report.

    Raises SimulationTimeout, carrying the partial report, after writing
    the artifacts when the duration limit stops running sessions.
    """
    sim, report = simulate(spec, parallel)
    report.capture_path = capture_path
    if capture_path:
        capture.export_capture(sim.capture, capture_path)
    if pcap_path:
        capture.export_pcap(sim.capture, pcap_path)
    if report_path:
        utils.dump_json(report_path, report.to_dict())
    if report.timed_out:
        raise scn_exc.SimulationTimeout(
            duration=spec.duration / constants.SEC, report=report
        )
    return report
