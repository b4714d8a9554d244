"""Season-level orchestration: run every analysis and emit result tables.

The pipeline parses all configured inputs, derives communication events,
computes weekly STC scores and sprint censuses per team, correlates them
with delivery outcomes, compares increasing- against decreasing-trend teams,
flags anomalous teams, and can write everything as delimited tables or
structured JSON. Output ordering is bit-stable: teams alphabetical, sprints
and weeks ascending, fixed float formatting.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .config import AnomalyThresholds, PipelineConfig
from .errors import InputError, ValidationError
from .ingestion import (
    Diagnostics,
    FeedbackRecord,
    parse_chat_export,
    parse_feedback,
    parse_outcomes,
    parse_repo_activity,
    parse_work_logs,
)
from .network import build_network, derive_comm_events, sprint_window, week_window
from .stats import mann_whitney_u, p_stars, pearson
from .stc import weekly_team_scores, year_summary
from .triad import mean_weekly_relative_census, relative_census, triad_census

__all__ = [
    "CorrelationCell",
    "TeamSummary",
    "AnomalyFlag",
    "UTestSummary",
    "AnalysisReport",
    "run_pipeline",
    "detect_anomalies",
    "emit",
    "report_to_dict",
    "report_from_dict",
    "load_report",
]

KIND_HIGH_STC_LOW_DELIVERY = "high-stc-low-delivery"
KIND_LOW_STC_HIGH_PAIRING = "low-stc-high-pairing"

Census = tuple[float, float, float, float]


@dataclass(frozen=True)
class CorrelationCell:
    """One table cell: r with sample size, p-value and significance stars."""

    label: str
    r: float | None
    n: int
    p: float | None
    stars: str


@dataclass(frozen=True)
class TeamSummary:
    team_id: str
    pair_programming_hours: float | None
    mean_stc: float | None
    stories_passed_total: int | None
    mean_team_score: float | None
    trend_slope: float | None


@dataclass(frozen=True)
class AnomalyFlag:
    team_id: str
    kind: str
    stc_rank: int
    evidence_metric: str
    evidence_rank: int


@dataclass(frozen=True)
class UTestSummary:
    increasing_teams: tuple[str, ...]
    decreasing_teams: tuple[str, ...]
    u: float | None
    p: float | None
    method: str


@dataclass(frozen=True)
class AnalysisReport:
    teams: tuple[str, ...]
    weeks: tuple[int, ...]
    sprints: tuple[int, ...]
    stc_weekly: dict[str, dict[int, float | None]]
    stc_sprint_mean: dict[str, dict[int, float | None]]
    sprint_census: dict[str, dict[int, Census | None]]
    mean_weekly_census: dict[str, dict[int, Census | None]]
    stc_table: tuple[CorrelationCell, ...]
    census_sprint_table: tuple[CorrelationCell, ...]
    census_mean_weekly_table: tuple[CorrelationCell, ...]
    census_sprint_table_excluding: tuple[CorrelationCell, ...]
    census_mean_weekly_table_excluding: tuple[CorrelationCell, ...]
    excluded_teams: tuple[str, ...]
    lagged_table: tuple[CorrelationCell, ...]
    team_summaries: tuple[TeamSummary, ...]
    anomalies: tuple[AnomalyFlag, ...]
    trend_utest: UTestSummary
    diagnostics: dict[str, int]
    notes: tuple[str, ...]


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def _try_cell(label: str, pairs: Sequence[tuple[float, float]]) -> CorrelationCell:
    xs = [a for a, _ in pairs]
    ys = [b for _, b in pairs]
    try:
        res = pearson(xs, ys)
    except ValueError:
        return CorrelationCell(label=label, r=None, n=len(pairs), p=None, stars="")
    return CorrelationCell(
        label=label, r=res.r, n=res.n, p=res.p_two_tailed, stars=p_stars(res.p_two_tailed)
    )


def _census_cells(
    census: Mapping[str, Mapping[int, Census | None]],
    outcome_values: Mapping[tuple[str, int], float | None],
    outcome_label: str,
    teams: Sequence[str],
    sprints: Sequence[int],
) -> list[CorrelationCell]:
    cells = []
    for k in range(4):
        pairs = []
        for team in teams:
            for sprint in sprints:
                rel = census.get(team, {}).get(sprint)
                out = outcome_values.get((team, sprint))
                if rel is None or out is None:
                    continue
                pairs.append((rel[k], out))
        cells.append(_try_cell(f"rel_{k}_edges~{outcome_label}", pairs))
    return cells


def run_pipeline(config: PipelineConfig) -> AnalysisReport:
    """Execute the full analysis for every configured team."""
    diag = Diagnostics()
    cal = config.calendar
    sprints = cal.included_sprints()
    sprint_set = set(sprints)
    weeks = tuple(w for w in cal.week_ids() if cal.sprint_of_week(w) in sprint_set)

    if config.outcomes_path is None:
        raise InputError("missing input: no outcomes table configured")
    if config.feedback_path is None:
        raise InputError("missing input: no peer-feedback table configured")
    outcomes = parse_outcomes(config.outcomes_path, cal, diag)
    feedback = parse_feedback(config.feedback_path, cal, diag)
    work_hours = (
        parse_work_logs(config.work_logs_path, diag) if config.work_logs_path else {}
    )

    teams = config.team_ids()
    person_team: dict[str, str] = {}
    stc_weekly: dict[str, dict[int, float | None]] = {}
    sprint_census: dict[str, dict[int, Census | None]] = {}
    mean_weekly_census: dict[str, dict[int, Census | None]] = {}

    for team_cfg in config.teams:
        roster = team_cfg.roster
        team = roster.team_id
        for person in roster.members:
            person_team[person] = team
        log = parse_chat_export(
            team_cfg.chat_export, roster, config.excluded_handles, diag
        )
        repo = parse_repo_activity(team_cfg.repo_activity, roster, diag)
        events = derive_comm_events(log, roster, cal, diag)
        stc_weekly[team] = weekly_team_scores(
            repo, events, roster, cal, weeks, config.self_dependency, diag
        )
        sprint_census[team] = {}
        mean_weekly_census[team] = {}
        for sprint in sprints:
            if len(roster.members) < 3:
                diag.bump("censuses_skipped_small_roster")
                sprint_census[team][sprint] = None
                mean_weekly_census[team][sprint] = None
                continue
            net = build_network(events, roster, sprint_window(cal, sprint))
            sprint_census[team][sprint] = relative_census(triad_census(net)).freqs
            weekly_rel = [
                relative_census(triad_census(build_network(events, roster, week_window(w))))
                for w in cal.sprint_weeks(sprint)
            ]
            mean_weekly_census[team][sprint] = mean_weekly_relative_census(weekly_rel).freqs

    stc_sprint_mean: dict[str, dict[int, float | None]] = {}
    for team in teams:
        stc_sprint_mean[team] = {}
        for sprint in sprints:
            defined = [
                stc_weekly[team][w]
                for w in cal.sprint_weeks(sprint)
                if stc_weekly[team].get(w) is not None
            ]
            stc_sprint_mean[team][sprint] = (
                math.fsum(defined) / len(defined) if defined else None
            )

    outcome_by = {(o.team_id, o.sprint_id): o for o in outcomes}
    pct_passed: dict[tuple[str, int], float | None] = {}
    score_of: dict[tuple[str, int], float | None] = {}
    for team in teams:
        for sprint in sprints:
            rec = outcome_by.get((team, sprint))
            if rec is None:
                pct_passed[(team, sprint)] = None
                score_of[(team, sprint)] = None
                continue
            if rec.story_points_committed == 0:
                diag.bump("sprints_zero_committed_points")
                pct_passed[(team, sprint)] = None
            else:
                pct_passed[(team, sprint)] = (
                    rec.story_points_passed / rec.story_points_committed
                )
            score_of[(team, sprint)] = rec.team_score

    comm_rating = _mean_comm_ratings(feedback, person_team, teams, sprints)

    stc_table = (
        _paired_cell(
            "pct_story_points_passed~mean_sprint_stc",
            pct_passed,
            stc_sprint_mean,
            teams,
            sprints,
        ),
        _paired_cell(
            "mean_peer_comm_rating~mean_sprint_stc",
            comm_rating,
            stc_sprint_mean,
            teams,
            sprints,
        ),
        _paired_cell(
            "mean_peer_comm_rating~pct_story_points_passed",
            comm_rating,
            pct_passed,
            teams,
            sprints,
            flat_second=True,
        ),
    )

    census_sprint_table = tuple(
        _census_cells(sprint_census, pct_passed, "pct_story_points_passed", teams, sprints)
        + _census_cells(sprint_census, score_of, "team_score", teams, sprints)
    )
    census_mw_table = tuple(
        _census_cells(
            mean_weekly_census, pct_passed, "pct_story_points_passed", teams, sprints
        )
        + _census_cells(mean_weekly_census, score_of, "team_score", teams, sprints)
    )

    summaries = []
    for team in teams:
        summary = year_summary(stc_weekly[team])
        rec = next((o for o in outcomes if o.team_id == team), None)
        pair_from_outcomes = rec.pair_programming_hours if rec else None
        pair_from_logs = work_hours.get(team)
        if (
            pair_from_outcomes is not None
            and pair_from_logs is not None
            and pair_from_outcomes != pair_from_logs
        ):
            diag.note(
                f"team {team}: pair hours differ between outcomes table "
                f"({pair_from_outcomes:g}) and work logs ({pair_from_logs:g}); "
                f"using the outcomes value"
            )
        pair_hours = pair_from_outcomes if pair_from_outcomes is not None else pair_from_logs
        scores = [
            score_of[(team, s)] for s in sprints if score_of[(team, s)] is not None
        ]
        summaries.append(
            TeamSummary(
                team_id=team,
                pair_programming_hours=pair_hours,
                mean_stc=summary.mean_stc,
                stories_passed_total=rec.stories_passed_total if rec else None,
                mean_team_score=math.fsum(scores) / len(scores) if scores else None,
                trend_slope=summary.trend.slope if summary.trend else None,
            )
        )
    team_summaries = tuple(summaries)

    rankable = [
        s
        for s in team_summaries
        if s.pair_programming_hours is not None
        and s.mean_stc is not None
        and s.stories_passed_total is not None
    ]
    notes: list[str] = []
    if len(rankable) >= 3:
        anomalies = tuple(detect_anomalies(rankable, config.anomaly))
    else:
        anomalies = ()
        notes.append(
            f"anomaly detection skipped: only {len(rankable)} team(s) with complete metrics"
        )

    excluded = config.exclude_teams or tuple(sorted(f.team_id for f in anomalies))
    remaining = tuple(t for t in teams if t not in excluded)
    census_sprint_excl = tuple(
        _census_cells(
            sprint_census, pct_passed, "pct_story_points_passed", remaining, sprints
        )
        + _census_cells(sprint_census, score_of, "team_score", remaining, sprints)
    )
    census_mw_excl = tuple(
        _census_cells(
            mean_weekly_census, pct_passed, "pct_story_points_passed", remaining, sprints
        )
        + _census_cells(mean_weekly_census, score_of, "team_score", remaining, sprints)
    )

    lagged_table: tuple[CorrelationCell, ...] = ()
    if config.include_lagged_table:
        lagged_pairs = []
        for team in teams:
            for i, sprint in enumerate(sprints[:-1]):
                rating = comm_rating.get((team, sprint))
                nxt = pct_passed.get((team, sprints[i + 1]))
                if rating is not None and nxt is not None:
                    lagged_pairs.append((rating, nxt))
        year_pairs = []
        by_team_score = {s.team_id: s.mean_team_score for s in team_summaries}
        for team in teams:
            for sprint in sprints:
                rating = comm_rating.get((team, sprint))
                final = by_team_score.get(team)
                if rating is not None and final is not None:
                    year_pairs.append((rating, final))
        lagged_table = (
            _try_cell("next_sprint_pct_passed~mean_peer_comm_rating", lagged_pairs),
            _try_cell("mean_team_score_year~mean_peer_comm_rating", year_pairs),
        )

    utest = _trend_utest(team_summaries, notes)

    return AnalysisReport(
        teams=teams,
        weeks=weeks,
        sprints=sprints,
        stc_weekly=stc_weekly,
        stc_sprint_mean=stc_sprint_mean,
        sprint_census=sprint_census,
        mean_weekly_census=mean_weekly_census,
        stc_table=stc_table,
        census_sprint_table=census_sprint_table,
        census_mean_weekly_table=census_mw_table,
        census_sprint_table_excluding=census_sprint_excl,
        census_mean_weekly_table_excluding=census_mw_excl,
        excluded_teams=tuple(excluded),
        lagged_table=lagged_table,
        team_summaries=team_summaries,
        anomalies=anomalies,
        trend_utest=utest,
        diagnostics=dict(sorted(diag.counts.items())),
        notes=tuple(notes + diag.notes),
    )


def _paired_cell(
    label: str,
    first: Mapping[tuple[str, int], float | None],
    second,
    teams: Sequence[str],
    sprints: Sequence[int],
    flat_second: bool = False,
) -> CorrelationCell:
    pairs = []
    for team in teams:
        for sprint in sprints:
            a = first.get((team, sprint))
            b = second.get((team, sprint)) if flat_second else second[team].get(sprint)
            if a is not None and b is not None:
                pairs.append((b, a))
    return _try_cell(label, pairs)


def _mean_comm_ratings(
    feedback: Iterable[FeedbackRecord],
    person_team: Mapping[str, str],
    teams: Sequence[str],
    sprints: Sequence[int],
) -> dict[tuple[str, int], float | None]:
    sums: dict[tuple[str, int], list[int]] = {}
    for rec in feedback:
        team = person_team.get(rec.rater)
        if team is None:
            continue
        sums.setdefault((team, rec.sprint_id), []).append(rec.communication_rating)
    out: dict[tuple[str, int], float | None] = {}
    for team in teams:
        for sprint in sprints:
            ratings = sums.get((team, sprint))
            out[(team, sprint)] = (
                math.fsum(ratings) / len(ratings) if ratings else None
            )
    return out


def _trend_utest(summaries: Sequence[TeamSummary], notes: list[str]) -> UTestSummary:
    increasing: list[str] = []
    decreasing: list[str] = []
    stories: dict[str, int] = {}
    for s in summaries:
        if s.trend_slope is None:
            notes.append(f"team {s.team_id}: no STC trend (fewer than 2 defined weeks)")
            continue
        if s.stories_passed_total is None:
            notes.append(f"team {s.team_id}: no stories-passed total; excluded from U test")
            continue
        stories[s.team_id] = s.stories_passed_total
        (increasing if s.trend_slope > 0 else decreasing).append(s.team_id)
    if not increasing or not decreasing:
        return UTestSummary(
            increasing_teams=tuple(increasing),
            decreasing_teams=tuple(decreasing),
            u=None,
            p=None,
            method="undefined",
        )
    res = mann_whitney_u(
        [float(stories[t]) for t in increasing], [float(stories[t]) for t in decreasing]
    )
    return UTestSummary(
        increasing_teams=tuple(increasing),
        decreasing_teams=tuple(decreasing),
        u=res.u,
        p=res.p_two_tailed,
        method=res.method,
    )


# ---------------------------------------------------------------------------
# Anomaly detection
# ---------------------------------------------------------------------------


def _dense_rank_desc(values: Mapping[str, float]) -> dict[str, int]:
    distinct = sorted(set(values.values()), reverse=True)
    rank_of = {v: i + 1 for i, v in enumerate(distinct)}
    return {team: rank_of[v] for team, v in values.items()}


def detect_anomalies(
    summaries: Sequence[TeamSummary],
    thresholds: AnomalyThresholds = AnomalyThresholds(),
) -> list[AnomalyFlag]:
    """Flag teams whose STC rank contradicts their delivery or pairing rank.

    Ranks are dense and descending by value. With T teams, the top band is
    ranks <= ceil(top_fraction * T) and the bottom band is ranks >=
    T - ceil(band * T) + 1. A team in the STC top band whose stories-passed
    rank falls in the bottom band is flagged high-stc-low-delivery; a team
    in the STC bottom band whose pair-programming-hours rank falls in the
    top band is flagged low-stc-high-pairing.
    """
    if len(summaries) < 3:
        raise ValidationError(f"anomaly detection needs >= 3 teams, got {len(summaries)}")
    for s in summaries:
        if s.mean_stc is None or s.stories_passed_total is None or s.pair_programming_hours is None:
            raise ValidationError(f"team {s.team_id} is missing a ranked metric")
    t_count = len(summaries)
    stc_rank = _dense_rank_desc({s.team_id: s.mean_stc for s in summaries})
    stories_rank = _dense_rank_desc(
        {s.team_id: float(s.stories_passed_total) for s in summaries}
    )
    pair_rank = _dense_rank_desc(
        {s.team_id: s.pair_programming_hours for s in summaries}
    )
    top_band = math.ceil(thresholds.top_fraction * t_count)
    bottom_band = math.ceil(thresholds.bottom_fraction * t_count)
    flags: list[AnomalyFlag] = []
    for s in sorted(summaries, key=lambda s: s.team_id):
        team = s.team_id
        if stc_rank[team] <= top_band and stories_rank[team] >= t_count - bottom_band + 1:
            flags.append(
                AnomalyFlag(
                    team_id=team,
                    kind=KIND_HIGH_STC_LOW_DELIVERY,
                    stc_rank=stc_rank[team],
                    evidence_metric="stories_passed",
                    evidence_rank=stories_rank[team],
                )
            )
        if stc_rank[team] >= t_count - top_band + 1 and pair_rank[team] <= top_band:
            flags.append(
                AnomalyFlag(
                    team_id=team,
                    kind=KIND_LOW_STC_HIGH_PAIRING,
                    stc_rank=stc_rank[team],
                    evidence_metric="pair_programming_hours",
                    evidence_rank=pair_rank[team],
                )
            )
    return flags


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

FORMATS = ("delimited-table", "structured-data")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _cell_rows(cells: Iterable[CorrelationCell], extra: dict | None = None):
    for cell in cells:
        row = {
            "pair": cell.label,
            "r": cell.r,
            "n": cell.n,
            "p": cell.p,
            "stars": cell.stars,
        }
        if extra:
            row.update(extra)
        yield row


def _tables(report: AnalysisReport) -> dict[str, tuple[list[str], list[dict]]]:
    excluded = ",".join(report.excluded_teams)
    cell_cols = ["pair", "r", "n", "p", "stars"]
    excl_cols = cell_cols + ["excluded_teams"]
    tables: dict[str, tuple[list[str], list[dict]]] = {
        "stc_correlations": (cell_cols, list(_cell_rows(report.stc_table))),
        "census_sprint_correlations": (
            cell_cols,
            list(_cell_rows(report.census_sprint_table)),
        ),
        "census_mean_weekly_correlations": (
            cell_cols,
            list(_cell_rows(report.census_mean_weekly_table)),
        ),
        "census_sprint_correlations_excluding": (
            excl_cols,
            list(
                _cell_rows(
                    report.census_sprint_table_excluding, {"excluded_teams": excluded}
                )
            ),
        ),
        "census_mean_weekly_correlations_excluding": (
            excl_cols,
            list(
                _cell_rows(
                    report.census_mean_weekly_table_excluding, {"excluded_teams": excluded}
                )
            ),
        ),
        "team_summary": (
            [
                "team",
                "pair_programming_hours",
                "mean_stc_score",
                "stories_passed",
                "mean_team_score",
                "stc_trend_slope",
            ],
            [
                {
                    "team": s.team_id,
                    "pair_programming_hours": s.pair_programming_hours,
                    "mean_stc_score": s.mean_stc,
                    "stories_passed": s.stories_passed_total,
                    "mean_team_score": s.mean_team_score,
                    "stc_trend_slope": s.trend_slope,
                }
                for s in report.team_summaries
            ],
        ),
        "trend_utest": (
            ["increasing_teams", "decreasing_teams", "u", "p", "method"],
            [
                {
                    "increasing_teams": ",".join(report.trend_utest.increasing_teams),
                    "decreasing_teams": ",".join(report.trend_utest.decreasing_teams),
                    "u": report.trend_utest.u,
                    "p": report.trend_utest.p,
                    "method": report.trend_utest.method,
                }
            ],
        ),
        "anomalies": (
            ["team", "kind", "stc_rank", "evidence_metric", "evidence_rank"],
            [
                {
                    "team": f.team_id,
                    "kind": f.kind,
                    "stc_rank": f.stc_rank,
                    "evidence_metric": f.evidence_metric,
                    "evidence_rank": f.evidence_rank,
                }
                for f in report.anomalies
            ],
        ),
    }
    if report.lagged_table:
        tables["lagged_correlations"] = (cell_cols, list(_cell_rows(report.lagged_table)))
    return tables


def _series(report: AnalysisReport) -> dict[str, tuple[list[str], list[dict]]]:
    series: dict[str, tuple[list[str], list[dict]]] = {}
    census_cols = ["sprint"] + [f"rel_{k}_edges" for k in range(4)] + [
        f"mean_weekly_rel_{k}_edges" for k in range(4)
    ]
    for team in report.teams:
        series[f"series_stc_{team}"] = (
            ["week", "stc_score"],
            [
                {"week": w, "stc_score": report.stc_weekly[team].get(w)}
                for w in report.weeks
            ],
        )
        rows = []
        for sprint in report.sprints:
            rel = report.sprint_census[team].get(sprint)
            mw = report.mean_weekly_census[team].get(sprint)
            row: dict = {"sprint": sprint}
            for k in range(4):
                row[f"rel_{k}_edges"] = rel[k] if rel else None
                row[f"mean_weekly_rel_{k}_edges"] = mw[k] if mw else None
            rows.append(row)
        series[f"series_census_{team}"] = (census_cols, rows)
    return series


def emit(report: AnalysisReport, format: str, out_dir: Path | str) -> list[Path]:
    """Write tables and per-team series files; returns the paths written."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise InputError(f"output directory not writable: {out}: {exc}") from None

    files: dict[str, tuple[list[str], list[dict]]] = {}
    files.update(_tables(report))
    files.update(_series(report))
    written: list[Path] = []
    for name in sorted(files):
        columns, rows = files[name]
        if format == "delimited-table":
            path = out / f"{name}.csv"
            with path.open("w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([_fmt(row[c]) for c in columns])
        else:
            path = out / f"{name}.json"
            path.write_text(
                json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        written.append(path)
    if format == "structured-data":
        path = out / "report.json"
        path.write_text(
            json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# Structured round trip
# ---------------------------------------------------------------------------


def _cells_to_list(cells: Iterable[CorrelationCell]) -> list[dict]:
    return [
        {"label": c.label, "r": c.r, "n": c.n, "p": c.p, "stars": c.stars} for c in cells
    ]


def _cells_from_list(data: Iterable[dict]) -> tuple[CorrelationCell, ...]:
    return tuple(
        CorrelationCell(label=d["label"], r=d["r"], n=d["n"], p=d["p"], stars=d["stars"])
        for d in data
    )


def _census_map_to_dict(data: Mapping[str, Mapping[int, Census | None]]) -> dict:
    return {
        team: {str(s): (list(v) if v is not None else None) for s, v in sorted(inner.items())}
        for team, inner in sorted(data.items())
    }


def _census_map_from_dict(data: dict) -> dict[str, dict[int, Census | None]]:
    return {
        team: {int(s): (tuple(v) if v is not None else None) for s, v in inner.items()}
        for team, inner in data.items()
    }


def _score_map_to_dict(data: Mapping[str, Mapping[int, float | None]]) -> dict:
    return {
        team: {str(k): v for k, v in sorted(inner.items())}
        for team, inner in sorted(data.items())
    }


def _score_map_from_dict(data: dict) -> dict[str, dict[int, float | None]]:
    return {team: {int(k): v for k, v in inner.items()} for team, inner in data.items()}


def report_to_dict(report: AnalysisReport) -> dict:
    return {
        "teams": list(report.teams),
        "weeks": list(report.weeks),
        "sprints": list(report.sprints),
        "stc_weekly": _score_map_to_dict(report.stc_weekly),
        "stc_sprint_mean": _score_map_to_dict(report.stc_sprint_mean),
        "sprint_census": _census_map_to_dict(report.sprint_census),
        "mean_weekly_census": _census_map_to_dict(report.mean_weekly_census),
        "stc_table": _cells_to_list(report.stc_table),
        "census_sprint_table": _cells_to_list(report.census_sprint_table),
        "census_mean_weekly_table": _cells_to_list(report.census_mean_weekly_table),
        "census_sprint_table_excluding": _cells_to_list(
            report.census_sprint_table_excluding
        ),
        "census_mean_weekly_table_excluding": _cells_to_list(
            report.census_mean_weekly_table_excluding
        ),
        "excluded_teams": list(report.excluded_teams),
        "lagged_table": _cells_to_list(report.lagged_table),
        "team_summaries": [
            {
                "team_id": s.team_id,
                "pair_programming_hours": s.pair_programming_hours,
                "mean_stc": s.mean_stc,
                "stories_passed_total": s.stories_passed_total,
                "mean_team_score": s.mean_team_score,
                "trend_slope": s.trend_slope,
            }
            for s in report.team_summaries
        ],
        "anomalies": [
            {
                "team_id": f.team_id,
                "kind": f.kind,
                "stc_rank": f.stc_rank,
                "evidence_metric": f.evidence_metric,
                "evidence_rank": f.evidence_rank,
            }
            for f in report.anomalies
        ],
        "trend_utest": {
            "increasing_teams": list(report.trend_utest.increasing_teams),
            "decreasing_teams": list(report.trend_utest.decreasing_teams),
            "u": report.trend_utest.u,
            "p": report.trend_utest.p,
            "method": report.trend_utest.method,
        },
        "diagnostics": dict(report.diagnostics),
        "notes": list(report.notes),
    }


def report_from_dict(data: dict) -> AnalysisReport:
    utest = data["trend_utest"]
    return AnalysisReport(
        teams=tuple(data["teams"]),
        weeks=tuple(data["weeks"]),
        sprints=tuple(data["sprints"]),
        stc_weekly=_score_map_from_dict(data["stc_weekly"]),
        stc_sprint_mean=_score_map_from_dict(data["stc_sprint_mean"]),
        sprint_census=_census_map_from_dict(data["sprint_census"]),
        mean_weekly_census=_census_map_from_dict(data["mean_weekly_census"]),
        stc_table=_cells_from_list(data["stc_table"]),
        census_sprint_table=_cells_from_list(data["census_sprint_table"]),
        census_mean_weekly_table=_cells_from_list(data["census_mean_weekly_table"]),
        census_sprint_table_excluding=_cells_from_list(
            data["census_sprint_table_excluding"]
        ),
        census_mean_weekly_table_excluding=_cells_from_list(
            data["census_mean_weekly_table_excluding"]
        ),
        excluded_teams=tuple(data["excluded_teams"]),
        lagged_table=_cells_from_list(data["lagged_table"]),
        team_summaries=tuple(
            TeamSummary(
                team_id=s["team_id"],
                pair_programming_hours=s["pair_programming_hours"],
                mean_stc=s["mean_stc"],
                stories_passed_total=s["stories_passed_total"],
                mean_team_score=s["mean_team_score"],
                trend_slope=s["trend_slope"],
            )
            for s in data["team_summaries"]
        ),
        anomalies=tuple(
            AnomalyFlag(
                team_id=f["team_id"],
                kind=f["kind"],
                stc_rank=f["stc_rank"],
                evidence_metric=f["evidence_metric"],
                evidence_rank=f["evidence_rank"],
            )
            for f in data["anomalies"]
        ),
        trend_utest=UTestSummary(
            increasing_teams=tuple(utest["increasing_teams"]),
            decreasing_teams=tuple(utest["decreasing_teams"]),
            u=utest["u"],
            p=utest["p"],
            method=utest["method"],
        ),
        diagnostics=dict(data["diagnostics"]),
        notes=tuple(data["notes"]),
    )


def load_report(path: Path | str) -> AnalysisReport:
    """Re-parse a structured report.json written by emit()."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load report from {path}: {exc}") from None
    return report_from_dict(data)
