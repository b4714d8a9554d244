"""Command-line interface.

Subcommands::

    teamnets validate  --config cfg.json
    teamnets stc       --config cfg.json --out out/
    teamnets census    --config cfg.json --out out/
    teamnets correlate --config cfg.json --out out/ [--format ...]
    teamnets report    --config cfg.json --out out/ [--format ...]
                       [--exclude-teams a,b] [--exclude-sprints 1] [--seed N]

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import PipelineConfig, load_config
from .errors import InputError, ValidationError
from .ingestion import Diagnostics, parse_chat_export, parse_feedback, parse_outcomes, \
    parse_repo_activity, parse_work_logs
from .network import build_network, derive_comm_events, sprint_window, write_edge_list
from .report import FORMATS, emit, run_pipeline
from .stc import weekly_team_scores, write_weekly_scores
from .triad import relative_census, triad_census


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teamnets",
        description="Team communication mining: STC scores, triad censuses, reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("validate", "parse all inputs and print an integrity report"),
        ("stc", "compute weekly STC series"),
        ("census", "compute sprint censuses and edge lists"),
        ("correlate", "compute correlation tables"),
        ("report", "run the full pipeline"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="pipeline config file")
        cmd.add_argument("--out", help="output directory")
        cmd.add_argument(
            "--format",
            choices=FORMATS,
            default="delimited-table",
            help="output format (default: delimited-table)",
        )
        cmd.add_argument(
            "--exclude-teams",
            default=None,
            help="comma-separated team ids to exclude from census correlation variants",
        )
        cmd.add_argument(
            "--exclude-sprints",
            default=None,
            help="comma-separated sprint ids to exclude in addition to the config",
        )
        cmd.add_argument(
            "--seed",
            type=int,
            default=None,
            help="seed for randomized tooling shipped alongside (recorded, not used here)",
        )
    return parser


def _apply_overrides(config: PipelineConfig, args) -> PipelineConfig:
    if args.exclude_sprints:
        try:
            extra = [int(s) for s in args.exclude_sprints.split(",") if s]
        except ValueError:
            raise InputError(f"--exclude-sprints must be integers: {args.exclude_sprints!r}")
        config.calendar = config.calendar.with_excluded(extra)
    if args.exclude_teams is not None:
        wanted = tuple(sorted(t for t in args.exclude_teams.split(",") if t))
        known = set(config.team_ids())
        unknown = [t for t in wanted if t not in known]
        if unknown:
            raise ValidationError(f"--exclude-teams references unknown team(s): {unknown}")
        config.exclude_teams = wanted
    return config


def _require_out(args) -> Path:
    if not args.out:
        raise InputError(f"--out is required for the {args.command} subcommand")
    return Path(args.out)


def _cmd_validate(config: PipelineConfig) -> int:
    diag = Diagnostics()
    failures = 0
    for team_cfg in config.teams:
        team = team_cfg.team_id
        try:
            log = parse_chat_export(
                team_cfg.chat_export, team_cfg.roster, config.excluded_handles, diag
            )
            repo = parse_repo_activity(team_cfg.repo_activity, team_cfg.roster, diag)
            events = derive_comm_events(log, team_cfg.roster, config.calendar, diag)
            print(
                f"team {team}: {len(log.messages)} messages, "
                f"{len(repo.commits)} commits, {len(repo.merge_requests)} merge requests, "
                f"{len(events)} communication events"
            )
        except ValidationError as exc:
            failures += 1
            print(f"team {team}: VALIDATION FAILURE: {exc}", file=sys.stderr)
    if config.outcomes_path:
        parse_outcomes(config.outcomes_path, config.calendar, diag)
    if config.feedback_path:
        parse_feedback(config.feedback_path, config.calendar, diag)
    if config.work_logs_path:
        parse_work_logs(config.work_logs_path, diag)
    for key in sorted(diag.counts):
        print(f"  {key}: {diag.counts[key]}")
    for note in diag.notes:
        print(f"  note: {note}")
    return 1 if failures else 0


def _cmd_stc(config: PipelineConfig, out: Path) -> int:
    out.mkdir(parents=True, exist_ok=True)
    cal = config.calendar
    included = set(cal.included_sprints())
    weeks = [w for w in cal.week_ids() if cal.sprint_of_week(w) in included]
    scores = {}
    for team_cfg in config.teams:
        log = parse_chat_export(team_cfg.chat_export, team_cfg.roster, config.excluded_handles)
        repo = parse_repo_activity(team_cfg.repo_activity, team_cfg.roster)
        events = derive_comm_events(log, team_cfg.roster, cal)
        scores[team_cfg.team_id] = weekly_team_scores(
            repo, events, team_cfg.roster, cal, weeks, config.self_dependency
        )
    path = out / "stc_weekly.csv"
    write_weekly_scores(scores, path)
    print(f"wrote {path}")
    return 0


def _cmd_census(config: PipelineConfig, out: Path) -> int:
    out.mkdir(parents=True, exist_ok=True)
    cal = config.calendar
    rows = ["team,sprint,rel_0_edges,rel_1_edges,rel_2_edges,rel_3_edges"]
    for team_cfg in config.teams:
        log = parse_chat_export(team_cfg.chat_export, team_cfg.roster, config.excluded_handles)
        events = derive_comm_events(log, team_cfg.roster, cal)
        for sprint in cal.included_sprints():
            net = build_network(events, team_cfg.roster, sprint_window(cal, sprint))
            edge_path = out / f"edges_{team_cfg.team_id}_sprint{sprint}.tsv"
            write_edge_list(net, edge_path)
            rel = relative_census(triad_census(net))
            cells = ",".join(f"{v:.6f}" for v in rel.freqs)
            rows.append(f"{team_cfg.team_id},{sprint},{cells}")
    path = out / "census_sprint.csv"
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {path}")
    return 0


def _cmd_report(config: PipelineConfig, out: Path, fmt: str, full: bool) -> int:
    report = run_pipeline(config)
    written = emit(report, fmt, out)
    if not full:
        # correlate: keep only the correlation tables
        keep = {p for p in written if "correlations" in p.name or p.name == "report.json"}
        for p in written:
            if p not in keep:
                p.unlink()
        written = sorted(keep)
    for p in written:
        print(f"wrote {p}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.command == "validate":
            return _cmd_validate(config)
        if args.command == "stc":
            return _cmd_stc(config, _require_out(args))
        if args.command == "census":
            return _cmd_census(config, _require_out(args))
        if args.command == "correlate":
            return _cmd_report(config, _require_out(args), args.format, full=False)
        return _cmd_report(config, _require_out(args), args.format, full=True)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
