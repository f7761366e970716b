"""Command-line interface: ``sentinel <command>``.

Exit codes: 0 success, 2 configuration or codec error, 3 when a run does
not meet its ``--expect`` file.
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

from findmy_sentinel import __version__
from findmy_sentinel.analytics import FleetReport, fleet_report, synthetic_fleet
from findmy_sentinel.codec import encode_advertisement, parse_hexdump
from findmy_sentinel.codec.hexdump import format_frame
from findmy_sentinel.config import settings
from findmy_sentinel.core.exceptions import ExpectationMismatchError, SentinelError
from findmy_sentinel.detection.ios import replay_events
from findmy_sentinel.harness.canonical import CANONICAL, canonical_names, get_canonical
from findmy_sentinel.harness.expectations import load_expectations, verify_expectations
from findmy_sentinel.harness.report import emit_report, fleet_csv_tables, fleet_summary
from findmy_sentinel.harness.runner import ComparisonRow, ScenarioRun, execute_scenario
from findmy_sentinel.harness.scenario import Scenario, load_scenario
from findmy_sentinel.harness.sweep import scan_parameter_sweep
from findmy_sentinel.models.codec import StatusByte
from findmy_sentinel.models.responses import FrameResponse
from findmy_sentinel.persistence.exports import ExportStore, read_fleet_events, read_ta_events
from findmy_sentinel.utils.tui_formatter import TUIFormatter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_MISMATCH = 3


def _scenarios(target: str, seed: int | None, evasion: bool) -> list[Scenario]:
    if target == "canonical":
        names = canonical_names()
    elif target in CANONICAL:
        names = [target]
    else:
        scenario = load_scenario(Path(target))
        return [scenario if seed is None else scenario.model_copy(update={"seed": seed})]
    return [
        get_canonical(name, evasion=evasion) if seed is None else get_canonical(name, seed, evasion)
        for name in names
    ]


def cmd_run(args: argparse.Namespace) -> int:
    expectations = load_expectations(Path(args.expect)) if args.expect else None
    runs: list[ScenarioRun] = [
        execute_scenario(s, args.engine) for s in _scenarios(args.scenario, args.seed, args.evasion)
    ]
    rows: list[ComparisonRow] = [row for run in runs for row in run.rows]
    sys.stdout.write(emit_report(rows, fmt=args.format))

    if args.export_dir:
        store = ExportStore(Path(args.export_dir))
        for run in runs:
            asyncio.run(store.export_run(run, args.engine))

    if expectations is not None:
        verify_expectations(rows, expectations)
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    formatter = TUIFormatter()
    table = []
    for name, factory in CANONICAL.items():
        scenario = factory()
        table.append([name, scenario.position, ", ".join(a.id for a in scenario.accessories)])
    print(formatter.format_table(["Name", "Position", "Trackers"], table))
    return EXIT_OK


def _read_input(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def cmd_decode(args: argparse.Namespace) -> int:
    frames = parse_hexdump(_read_input(args.hexdump), strict=not args.lenient)
    summaries = [FrameResponse.from_advertisement(f) for f in frames]
    if args.format == "json":
        for s in summaries:
            print(s.model_dump_json())
        return EXIT_OK
    print(
        TUIFormatter().format_table(
            ["Address", "Mode", "Category", "Status", "Hint"],
            [
                [
                    s.address,
                    s.mode.value,
                    s.category.value if s.category else "-",
                    f"0x{s.status:02X}" if s.status is not None else "-",
                    f"0x{s.hint:02X}" if s.hint is not None else "-",
                ]
                for s in summaries
            ],
        )
    )
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    key = bytes.fromhex(args.public_key.replace(":", "").replace(" ", ""))
    adv = encode_advertisement(key, StatusByte(raw=int(args.status, 0)), int(args.hint, 0))
    print(format_frame(adv))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    result = scan_parameter_sweep(devices=args.devices, scans=args.scans, seed=args.seed)
    if args.format == "json":
        print(result.model_dump_json(indent=2))
        return EXIT_OK
    headers = ["Duration (s)", *(m.value for m in result.modes)]
    table = [
        [f"{d:g}", *(f"{v:.2f}" for v in row)]
        for d, row in zip(result.durations_s, result.mean_discovered)
    ]
    print(TUIFormatter().format_table(headers, table, title=f"MEAN DEVICES DISCOVERED (of {result.devices})"))
    return EXIT_OK


def cmd_fleet(args: argparse.Namespace) -> int:
    if args.synthetic or args.events is None:
        events = synthetic_fleet(users=args.users, days=args.days, seed=args.seed)
    else:
        events = asyncio.run(read_fleet_events(Path(args.events)))
    report: FleetReport = fleet_report(events)
    if args.format == "csv":
        for name, text in fleet_csv_tables(report).items():
            sys.stdout.write(f"# {name}\n{text}\n")
    elif args.format == "json":
        print(json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2))
    else:
        print(TUIFormatter().format_key_values(fleet_summary(report), title="FLEET REPORT"))
    if args.export_dir:
        asyncio.run(ExportStore(Path(args.export_dir)).export_fleet(report))
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    events = asyncio.run(read_ta_events(Path(args.events)))
    for verdict in replay_events(events):
        print(json.dumps(verdict.model_dump(mode="json"), sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentinel",
        description="Find My codec, tracker simulation and detection-engine comparison",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario through the detection engines")
    run.add_argument("scenario", help="scenario file, canonical name, or 'canonical' for all three")
    run.add_argument("--engine", choices=["airguard", "ios", "both"], default="both")
    run.add_argument("--format", choices=["table", "json", "csv"], default="table")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--expect", help="expectation file; exit 3 when unmet")
    run.add_argument("--export-dir", help="write device stores, verdicts and rows here")
    run.add_argument("--evasion", action="store_true", help="add a 15-minute key rotator")
    run.set_defaults(func=cmd_run)

    scenarios = sub.add_parser("scenarios", help="list canonical scenarios")
    scenarios.set_defaults(func=cmd_scenarios)

    decode = sub.add_parser("decode", help="decode a hex dump ('-' for stdin)")
    decode.add_argument("hexdump")
    decode.add_argument("--format", choices=["table", "json"], default="table")
    decode.add_argument("--lenient", action="store_true", help="skip bad frames")
    decode.set_defaults(func=cmd_decode)

    encode = sub.add_parser("encode", help="encode a separated-state frame")
    encode.add_argument("public_key", help="28-byte public key as hex")
    encode.add_argument("--status", default="0x10")
    encode.add_argument("--hint", default="0x00")
    encode.set_defaults(func=cmd_encode)

    sweep = sub.add_parser("sweep", help="scan duration / scan mode discovery sweep")
    sweep.add_argument("--devices", type=int, default=8)
    sweep.add_argument("--scans", type=int, default=10)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--format", choices=["table", "json"], default="table")
    sweep.set_defaults(func=cmd_sweep)

    fleet = sub.add_parser("fleet", help="fleet analytics over donated events")
    fleet.add_argument("events", nargs="?", help="JSON-lines events file")
    fleet.add_argument("--synthetic", action="store_true")
    fleet.add_argument("--users", type=int, default=500)
    fleet.add_argument("--days", type=int, default=42)
    fleet.add_argument("--seed", type=int, default=0)
    fleet.add_argument("--format", choices=["table", "json", "csv"], default="table")
    fleet.add_argument("--export-dir")
    fleet.set_defaults(func=cmd_fleet)

    replay = sub.add_parser("replay", help="replay a recorded iOS event stream")
    replay.add_argument("events", help="JSON-lines TaEvent file")
    replay.set_defaults(func=cmd_replay)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, settings.log_level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return int(args.func(args))
    except ExpectationMismatchError as e:
        for mismatch in e.details["mismatches"]:
            print(f"mismatch: {mismatch}", file=sys.stderr)
        return EXIT_MISMATCH
    except SentinelError as e:
        print(f"error [{e.code}]: {e.message}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
