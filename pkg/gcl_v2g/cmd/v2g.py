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

import logging
import random
import sys

import orjson
from oslo_config import cfg

from gcl_v2g.attacks import exceptions as attack_exc
from gcl_v2g.attacks import payloads
from gcl_v2g.codec import exceptions as codec_exc
from gcl_v2g.common import config
from gcl_v2g.common import log as infra_log
from gcl_v2g.controllers import exceptions as ctl_exc
from gcl_v2g.messages import exceptions as msg_exc
from gcl_v2g.netsim import capture
from gcl_v2g.netsim import exceptions as net_exc
from gcl_v2g.scenario import exceptions as scn_exc
from gcl_v2g.scenario import runner
from gcl_v2g.scenario import topology
from gcl_v2g.securechannel import exceptions as sc_exc
from gcl_v2g.securechannel import identity as sc_identity
from gcl_v2g.wire import exceptions as wire_exc

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_TOPOLOGY = 2
EXIT_CODEC = 3
EXIT_TIMEOUT = 4
EXIT_IO = 5

STDIO = "-"

LOG = logging.getLogger(__name__)


def add_parsers(subparsers):
    parser = subparsers.add_parser("run", help="Run a topology file")
    parser.add_argument("topology")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--capture", default=None, help="Capture JSON-lines file")
    parser.add_argument("--report", default=None, help="Report JSON file")
    parser.add_argument("--pcap", default=None, help="Capture pcap file")
    parser.add_argument(
        "--parallel",
        action="store_true",
        default=None,
        help="Interleave EV sessions",
    )
    parser.set_defaults(func=do_run)

    parser = subparsers.add_parser("decode", help="EXI to XML")
    parser.add_argument("file", nargs="?", default=STDIO)
    parser.set_defaults(func=do_decode)

    parser = subparsers.add_parser("encode", help="XML to EXI")
    parser.add_argument("file", nargs="?", default=STDIO)
    parser.add_argument("--out", default=STDIO)
    parser.set_defaults(func=do_encode)

    parser = subparsers.add_parser("keygen", help="Generate an identity file")
    parser.add_argument("identity_name", metavar="name")
    parser.add_argument("--out", required=True)
    parser.add_argument("--issuer", default=None, help="Issuer identity file")
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(func=do_keygen)

    parser = subparsers.add_parser("capture-export", help="Capture to pcap")
    parser.add_argument("capture")
    parser.add_argument("--pcap", required=True)
    parser.add_argument("--node", default=None, help="Keep one node's records")
    parser.set_defaults(func=do_capture_export)


cli_opts = [
    cfg.SubCommandOpt(
        "action", title="Commands", handler=add_parsers, help="Available commands"
    ),
    cfg.BoolOpt(
        "error-json",
        default=False,
        help="Print errors as JSON on stdout",
    ),
]

CONF = cfg.CONF
CONF.register_cli_opts(cli_opts)


def _read_input(path: str) -> bytes:
    if path == STDIO:
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write_output(path: str, data: bytes) -> None:
    if path == STDIO:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def do_run(action) -> int:
    spec = topology.parse_topology(action.topology, action.seed)
    report = runner.run(
        spec,
        capture_path=action.capture,
        report_path=action.report,
        pcap_path=action.pcap,
        parallel=action.parallel,
    )
    if action.report is None:
        _write_output(
            STDIO, orjson.dumps(report.to_dict(), option=orjson.OPT_INDENT_2) + b"\n"
        )
    for name, ev_report in report.per_ev.items():
        LOG.info(
            "%s: %s (expected %s)", name, ev_report.outcome, report.expected[name]
        )
    return EXIT_OK if report.expectations_met else EXIT_EXPECTATION


def do_decode(action) -> int:
    xml_text = payloads.decode_payload(_read_input(action.file))
    _write_output(STDIO, xml_text.encode("utf-8") + b"\n")
    return EXIT_OK


def do_encode(action) -> int:
    xml_text = _read_input(action.file).decode("utf-8").strip()
    _write_output(action.out, payloads.encode_payload(xml_text))
    return EXIT_OK


def do_keygen(action) -> int:
    issuer = sc_identity.load_identity(action.issuer) if action.issuer else None
    rng = random.Random(action.seed) if action.seed is not None else None
    generated = sc_identity.generate_identity(action.identity_name, issuer, rng)
    sc_identity.save_identity(action.out, generated)
    LOG.info(
        "Identity %s issued by %s",
        generated.name,
        generated.certificate.issuer_name,
    )
    return EXIT_OK


def do_capture_export(action) -> int:
    records = capture.load_capture(action.capture)
    if action.node is not None:
        records = [r for r in records if r.node == action.node]
    capture.export_pcap(records, action.pcap)
    LOG.info("Exported %d records to %s", len(records), action.pcap)
    return EXIT_OK


def exit_code_for(error: Exception) -> int:
    if isinstance(error, scn_exc.SimulationTimeout):
        return EXIT_TIMEOUT
    if isinstance(
        error,
        (
            scn_exc.ScenarioException,
            attack_exc.AttacksException,
            ctl_exc.InvalidConfig,
            net_exc.DuplicateName,
            net_exc.DanglingLink,
            net_exc.AddressCollision,
            net_exc.InvalidTopology,
        ),
    ):
        return EXIT_TOPOLOGY
    if isinstance(
        error,
        (codec_exc.CodecException, wire_exc.WireException, msg_exc.MessagesException),
    ):
        return EXIT_CODEC
    if isinstance(
        error,
        (
            OSError,
            UnicodeDecodeError,
            net_exc.IoFailure,
            sc_exc.InvalidIdentityFile,
        ),
    ):
        return EXIT_IO
    return EXIT_EXPECTATION


def _fail(error: Exception) -> None:
    code = exit_code_for(error)
    if CONF.error_json:
        _write_output(
            STDIO,
            orjson.dumps(
                {
                    "error": type(error).__name__,
                    "message": str(error),
                    "exitCode": code,
                }
            )
            + b"\n",
        )
        sys.exit(code)
    infra_log.die(LOG, f"{type(error).__name__}: {error}", code)


def main():
    # Parse config
    config.parse(sys.argv[1:])

    # Configure logging
    infra_log.configure()

    action = CONF.action
    try:
        code = action.func(action)
    except (
        scn_exc.ScenarioException,
        attack_exc.AttacksException,
        ctl_exc.ControllerException,
        codec_exc.CodecException,
        wire_exc.WireException,
        msg_exc.MessagesException,
        net_exc.NetsimException,
        sc_exc.SecureChannelException,
        OSError,
        UnicodeDecodeError,
    ) as e:
        _fail(e)
        return
    sys.exit(code)


if __name__ == "__main__":
    main()
