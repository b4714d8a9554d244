"""Parsing of raw team artifacts into the validated domain model.

Input formats
-------------
Chat export (one directory per team workspace):
    <export_root>/<channel>/<YYYY-MM-DD>.json, each file a JSON array of
    message objects with fields ``user`` (raw platform handle), ``ts``
    (decimal seconds as a string, unique per channel), optional
    ``thread_ts`` (the ``ts`` of the thread root) and optional ``subtype``.
    A message whose ``thread_ts`` equals its own ``ts`` is a thread root.

Repo activity (one JSON file per team):
    {"commits": [{"sha", "author", "authored_at"}, ...],
     "merge_requests": [{"id", "created_at", "commits": [sha],
                         "files": [path]}, ...]}
    with ISO-8601 UTC timestamps.

Feedback / outcomes / work logs are delimited tables with header rows; see
``parse_feedback``, ``parse_outcomes`` and ``parse_work_logs`` for columns.

All timestamps are stored timezone-aware in UTC. Week assignment uses
half-open intervals [start, end). Messages from handles outside a team's
identity map (instructors, bots) are dropped and counted in diagnostics
rather than failing the parse.

Parsing is pure per input file and the resulting records are immutable, so
per-team inputs can safely be parsed concurrently.
"""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from .errors import InputError, ValidationError

logger = logging.getLogger(__name__)

# Slack-style event subtypes that do not represent human communication.
EXCLUDED_SUBTYPES = frozenset({"channel_join", "channel_leave", "bot_message"})


def parse_utc(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values and 'Z' suffixes mean UTC."""
    try:
        ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise InputError(f"bad ISO-8601 timestamp {value!r}: {exc}") from None
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_utc(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass
class Diagnostics:
    """Counters and notes accumulated while parsing and deriving events."""

    counts: Counter = field(default_factory=Counter)
    notes: list[str] = field(default_factory=list)

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] += by

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, other: "Diagnostics") -> None:
        self.counts.update(other.counts)
        self.notes.extend(other.notes)


# ---------------------------------------------------------------------------
# Calendar
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Week:
    week_id: int
    start: datetime
    end: datetime


@dataclass(frozen=True)
class Sprint:
    sprint_id: int
    week_ids: tuple[int, ...]


@dataclass(frozen=True)
class SprintCalendar:
    """Ordered, non-overlapping week intervals grouped into sprints."""

    weeks: tuple[Week, ...]
    sprints: tuple[Sprint, ...]
    excluded_sprints: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if not self.weeks:
            raise ValidationError("calendar has no weeks")
        seen_weeks: set[int] = set()
        prev: Week | None = None
        for week in self.weeks:
            if week.week_id < 1:
                raise ValidationError(f"week ids must be >= 1, got {week.week_id}")
            if week.week_id in seen_weeks:
                raise ValidationError(f"duplicate week id {week.week_id}")
            seen_weeks.add(week.week_id)
            if week.end <= week.start:
                raise ValidationError(f"week {week.week_id} has end <= start")
            if prev is not None and week.start < prev.end:
                raise ValidationError(
                    f"week {week.week_id} overlaps or precedes week {prev.week_id}"
                )
            prev = week
        assigned: set[int] = set()
        seen_sprints: set[int] = set()
        for sprint in self.sprints:
            if sprint.sprint_id in seen_sprints:
                raise ValidationError(f"duplicate sprint id {sprint.sprint_id}")
            seen_sprints.add(sprint.sprint_id)
            if not sprint.week_ids:
                raise ValidationError(f"sprint {sprint.sprint_id} has no weeks")
            for wid in sprint.week_ids:
                if wid not in seen_weeks:
                    raise ValidationError(
                        f"sprint {sprint.sprint_id} references unknown week {wid}"
                    )
                if wid in assigned:
                    raise ValidationError(f"week {wid} belongs to more than one sprint")
                assigned.add(wid)
        for sid in self.excluded_sprints:
            if sid not in seen_sprints:
                raise ValidationError(f"excluded sprint {sid} is not in the calendar")

    def assign_week(self, ts: datetime) -> int | None:
        """Week containing ts under [start, end), or None (e.g. break gaps)."""
        for week in self.weeks:
            if week.start <= ts < week.end:
                return week.week_id
        return None

    def week_ids(self) -> tuple[int, ...]:
        return tuple(w.week_id for w in self.weeks)

    def sprint_of_week(self, week_id: int) -> int | None:
        for sprint in self.sprints:
            if week_id in sprint.week_ids:
                return sprint.sprint_id
        return None

    def sprint_weeks(self, sprint_id: int) -> tuple[int, ...]:
        for sprint in self.sprints:
            if sprint.sprint_id == sprint_id:
                return sprint.week_ids
        raise ValidationError(f"unknown sprint {sprint_id}")

    def included_sprints(self) -> tuple[int, ...]:
        return tuple(
            s.sprint_id for s in self.sprints if s.sprint_id not in self.excluded_sprints
        )

    def with_excluded(self, extra: Iterable[int]) -> "SprintCalendar":
        return SprintCalendar(
            weeks=self.weeks,
            sprints=self.sprints,
            excluded_sprints=self.excluded_sprints | frozenset(extra),
        )


def assign_week(ts: datetime, cal: SprintCalendar) -> int | None:
    """Module-level alias for SprintCalendar.assign_week."""
    return cal.assign_week(ts)


# ---------------------------------------------------------------------------
# Domain records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Roster:
    """A team's members plus the raw-handle -> person identity map."""

    team_id: str
    members: frozenset[str]
    identity_map: Mapping[str, str]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValidationError(f"team {self.team_id} has an empty roster")
        unknown = {p for p in self.identity_map.values() if p not in self.members}
        if unknown:
            raise ValidationError(
                f"team {self.team_id}: identity map targets outside roster: {sorted(unknown)}"
            )

    def resolve(self, handle: str) -> str | None:
        return self.identity_map.get(handle)


@dataclass(frozen=True)
class Message:
    message_id: str
    channel_id: str
    author: str  # person_id
    timestamp: datetime
    thread_root: str | None = None


@dataclass(frozen=True)
class MessageLog:
    messages: tuple[Message, ...]


@dataclass(frozen=True)
class Commit:
    sha: str
    author: str  # person_id
    authored_at: datetime


@dataclass(frozen=True)
class MergeRequest:
    mr_id: str
    created_at: datetime
    commit_shas: frozenset[str]
    changed_files: frozenset[str]


@dataclass(frozen=True)
class RepoActivity:
    commits: tuple[Commit, ...]
    merge_requests: tuple[MergeRequest, ...]

    def commits_by_sha(self) -> dict[str, Commit]:
        return {c.sha: c for c in self.commits}


@dataclass(frozen=True)
class FeedbackRecord:
    sprint_id: int
    rater: str
    ratee: str
    communication_rating: int


@dataclass(frozen=True)
class OutcomeRecord:
    team_id: str
    sprint_id: int
    story_points_committed: float
    story_points_passed: float
    team_score: float
    stories_passed_total: int | None = None  # year-level
    pair_programming_hours: float | None = None  # year-level


# ---------------------------------------------------------------------------
# Chat export
# ---------------------------------------------------------------------------


def _load_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos})"
        ) from None


def parse_chat_export(
    export_root: Path | str,
    roster: Roster,
    excluded_handles: Iterable[str] = (),
    diagnostics: Diagnostics | None = None,
) -> MessageLog:
    """Parse a chat workspace export tree into a MessageLog.

    Walks every channel directory and day file, maps raw handles through the
    roster's identity map, and resolves thread roots across the whole
    channel. Bot/app messages, excluded subtypes, and unknown handles are
    dropped with diagnostics. Replies whose thread root was itself dropped
    are kept as plain messages (their root author is not a team member, so
    they carry no reply relation).
    """
    diag = diagnostics if diagnostics is not None else Diagnostics()
    root = Path(export_root)
    if not root.is_dir():
        raise InputError(f"chat export directory not found: {root}")
    excluded = frozenset(excluded_handles)
    kept: list[tuple[str, str, str, datetime, str | None]] = []
    kept_ids: set[str] = set()
    for channel_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        channel = channel_dir.name
        for day_file in sorted(channel_dir.glob("*.json")):
            payload = _load_json(day_file)
            if not isinstance(payload, list):
                raise InputError(f"{day_file}: expected a JSON array of messages")
            for i, obj in enumerate(payload):
                if not isinstance(obj, dict) or "ts" not in obj:
                    raise InputError(f"{day_file}: entry {i} is not a message object")
                diag.bump("messages_seen")
                if obj.get("subtype") in EXCLUDED_SUBTYPES:
                    diag.bump("messages_dropped_subtype")
                    continue
                handle = obj.get("user")
                if not handle or handle in excluded:
                    diag.bump("messages_dropped_excluded_handle")
                    continue
                person = roster.resolve(handle)
                if person is None:
                    diag.bump("messages_dropped_unknown_handle")
                    logger.debug("%s: unknown handle %s", day_file, handle)
                    continue
                ts_raw = obj["ts"]
                try:
                    ts = datetime.fromtimestamp(float(ts_raw), tz=timezone.utc)
                except (TypeError, ValueError):
                    raise InputError(
                        f"{day_file}: entry {i} has invalid ts {ts_raw!r}"
                    ) from None
                mid = f"{channel}/{ts_raw}"
                thread_ts = obj.get("thread_ts")
                thread_ref = (
                    f"{channel}/{thread_ts}" if thread_ts and thread_ts != ts_raw else None
                )
                kept.append((mid, channel, person, ts, thread_ref))
                kept_ids.add(mid)

    messages: list[Message] = []
    for mid, channel, person, ts, thread_ref in kept:
        if thread_ref is not None and thread_ref not in kept_ids:
            diag.bump("replies_to_dropped_root")
            thread_ref = None
        messages.append(
            Message(
                message_id=mid,
                channel_id=channel,
                author=person,
                timestamp=ts,
                thread_root=thread_ref,
            )
        )
    messages.sort(key=lambda m: (m.timestamp, m.message_id))
    _check_thread_order(messages)
    diag.bump("messages_kept", len(messages))
    return MessageLog(messages=tuple(messages))


def _check_thread_order(messages: list[Message]) -> None:
    by_id = {m.message_id: m for m in messages}
    for m in messages:
        if m.thread_root is None:
            continue
        root = by_id[m.thread_root]
        if m.timestamp < root.timestamp:
            raise ValidationError(
                f"message {m.message_id} predates its thread root {m.thread_root}"
            )


# ---------------------------------------------------------------------------
# Repo activity
# ---------------------------------------------------------------------------


def parse_repo_activity(
    path: Path | str,
    roster: Roster,
    diagnostics: Diagnostics | None = None,
) -> RepoActivity:
    """Parse the normalized repo-activity file, enforcing referential integrity.

    Commits from authors outside the identity map are dropped with a
    diagnostic, and their shas removed from merge requests. A merge request
    referencing a sha absent from the raw commit list is an integrity error.
    Merge requests with no changed files are kept but counted; the
    dependency step excludes them.
    """
    diag = diagnostics if diagnostics is not None else Diagnostics()
    p = Path(path)
    if not p.is_file():
        raise InputError(f"repo activity file not found: {p}")
    payload = _load_json(p)
    if not isinstance(payload, dict):
        raise InputError(f"{p}: expected a JSON object")
    for key in ("commits", "merge_requests"):
        if not isinstance(payload.get(key), list):
            raise InputError(f"{p}: missing or invalid top-level array {key!r}")

    raw_shas: set[str] = set()
    commits: list[Commit] = []
    for i, obj in enumerate(payload["commits"]):
        try:
            sha = obj["sha"]
            author = obj["author"]
            authored_at = parse_utc(obj["authored_at"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"{p}: commit entry {i} missing field {exc}") from None
        if sha in raw_shas:
            raise ValidationError(f"{p}: duplicate commit sha {sha}")
        raw_shas.add(sha)
        person = roster.resolve(author) or (author if author in roster.members else None)
        if person is None:
            diag.bump("commits_dropped_unknown_author")
            continue
        commits.append(Commit(sha=sha, author=person, authored_at=authored_at))
    kept_shas = {c.sha for c in commits}

    merge_requests: list[MergeRequest] = []
    seen_mrs: set[str] = set()
    for i, obj in enumerate(payload["merge_requests"]):
        try:
            mr_id = str(obj["id"])
            created_at = parse_utc(obj["created_at"])
            shas = list(obj["commits"])
            files = list(obj["files"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"{p}: merge request entry {i} missing field {exc}") from None
        if mr_id in seen_mrs:
            raise ValidationError(f"{p}: duplicate merge request id {mr_id}")
        seen_mrs.add(mr_id)
        dangling = [s for s in shas if s not in raw_shas]
        if dangling:
            raise ValidationError(
                f"{p}: merge request {mr_id} references unknown commit sha(s): "
                f"{', '.join(sorted(dangling))}"
            )
        linked = frozenset(s for s in shas if s in kept_shas)
        dropped = len(shas) - len(linked)
        if dropped:
            diag.bump("mr_commit_links_dropped", dropped)
        if not files:
            diag.bump("mrs_with_empty_files")
            logger.warning("%s: merge request %s has no changed files", p, mr_id)
        merge_requests.append(
            MergeRequest(
                mr_id=mr_id,
                created_at=created_at,
                commit_shas=linked,
                changed_files=frozenset(files),
            )
        )
    commits.sort(key=lambda c: (c.authored_at, c.sha))
    merge_requests.sort(key=lambda m: (m.created_at, m.mr_id))
    diag.bump("commits_kept", len(commits))
    diag.bump("mrs_kept", len(merge_requests))
    return RepoActivity(commits=tuple(commits), merge_requests=tuple(merge_requests))


# ---------------------------------------------------------------------------
# Delimited tables
# ---------------------------------------------------------------------------


def _read_rows(path: Path, required: tuple[str, ...]):
    if not path.is_file():
        raise InputError(f"table not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise InputError(f"{path}: missing column(s) {', '.join(missing)}")
        # Row numbers are 1-based counting the header as line 1.
        yield from ((i, row) for i, row in enumerate(reader, start=2))


def parse_feedback(
    path: Path | str,
    cal: SprintCalendar,
    diagnostics: Diagnostics | None = None,
) -> list[FeedbackRecord]:
    """Parse peer-feedback rows: sprint_id, rater, ratee, communication_rating.

    Ratings are Likert 1..5; rows for excluded sprints are filtered out.
    """
    diag = diagnostics if diagnostics is not None else Diagnostics()
    p = Path(path)
    records: list[FeedbackRecord] = []
    known_sprints = {s.sprint_id for s in cal.sprints}
    for line, row in _read_rows(p, ("sprint_id", "rater", "ratee", "communication_rating")):
        try:
            sprint_id = int(row["sprint_id"])
            rating = int(row["communication_rating"])
        except ValueError:
            raise ValidationError(f"{p}:line {line}: non-integer sprint or rating") from None
        if sprint_id not in known_sprints:
            raise ValidationError(f"{p}:line {line}: unknown sprint {sprint_id}")
        if not 1 <= rating <= 5:
            raise ValidationError(
                f"{p}:line {line}: communication rating {rating} out of range [1, 5]"
            )
        rater, ratee = row["rater"], row["ratee"]
        if rater == ratee:
            raise ValidationError(f"{p}:line {line}: rater equals ratee ({rater})")
        if sprint_id in cal.excluded_sprints:
            diag.bump("feedback_rows_excluded_sprint")
            continue
        records.append(
            FeedbackRecord(
                sprint_id=sprint_id, rater=rater, ratee=ratee, communication_rating=rating
            )
        )
    diag.bump("feedback_rows_kept", len(records))
    return records


_OUTCOME_COLS = (
    "team_id",
    "sprint_id",
    "story_points_committed",
    "story_points_passed",
    "team_score",
)


def parse_outcomes(
    path: Path | str,
    cal: SprintCalendar,
    diagnostics: Diagnostics | None = None,
) -> list[OutcomeRecord]:
    """Parse per-sprint outcomes.

    Required columns: team_id, sprint_id, story_points_committed,
    story_points_passed, team_score. Optional year-level columns
    stories_passed_total and pair_programming_hours may be blank but must be
    consistent across a team's rows. Rows for excluded sprints are filtered.
    """
    diag = diagnostics if diagnostics is not None else Diagnostics()
    p = Path(path)
    records: list[OutcomeRecord] = []
    known_sprints = {s.sprint_id for s in cal.sprints}
    year_level: dict[str, tuple[int | None, float | None]] = {}
    for line, row in _read_rows(p, _OUTCOME_COLS):
        team = row["team_id"]
        try:
            sprint_id = int(row["sprint_id"])
            committed = float(row["story_points_committed"])
            passed = float(row["story_points_passed"])
            score = float(row["team_score"])
        except ValueError:
            raise ValidationError(f"{p}:line {line}: non-numeric outcome value") from None
        if sprint_id not in known_sprints:
            raise ValidationError(f"{p}:line {line}: unknown sprint {sprint_id}")
        if committed < 0 or passed < 0:
            raise ValidationError(f"{p}:line {line}: negative story points")
        if passed > committed:
            raise ValidationError(
                f"{p}:line {line}: story points passed ({passed:g}) exceeds "
                f"committed ({committed:g})"
            )
        stories_raw = (row.get("stories_passed_total") or "").strip()
        hours_raw = (row.get("pair_programming_hours") or "").strip()
        stories = int(stories_raw) if stories_raw else None
        hours = float(hours_raw) if hours_raw else None
        if hours is not None and hours < 0:
            raise ValidationError(f"{p}:line {line}: negative pair programming hours")
        if team in year_level:
            prev = year_level[team]
            cur = (stories if stories is not None else prev[0],
                   hours if hours is not None else prev[1])
            if (stories is not None and prev[0] is not None and stories != prev[0]) or (
                hours is not None and prev[1] is not None and hours != prev[1]
            ):
                raise ValidationError(
                    f"{p}:line {line}: year-level values for team {team} disagree "
                    f"with earlier rows"
                )
            year_level[team] = cur
        else:
            year_level[team] = (stories, hours)
        if sprint_id in cal.excluded_sprints:
            diag.bump("outcome_rows_excluded_sprint")
            continue
        records.append(
            OutcomeRecord(
                team_id=team,
                sprint_id=sprint_id,
                story_points_committed=committed,
                story_points_passed=passed,
                team_score=score,
                stories_passed_total=stories,
                pair_programming_hours=hours,
            )
        )
    # Backfill year-level values onto every kept row for the team.
    filled = [
        OutcomeRecord(
            team_id=r.team_id,
            sprint_id=r.sprint_id,
            story_points_committed=r.story_points_committed,
            story_points_passed=r.story_points_passed,
            team_score=r.team_score,
            stories_passed_total=year_level[r.team_id][0],
            pair_programming_hours=year_level[r.team_id][1],
        )
        for r in records
    ]
    diag.bump("outcome_rows_kept", len(filled))
    return filled


def parse_work_logs(
    path: Path | str,
    diagnostics: Diagnostics | None = None,
) -> dict[str, float]:
    """Sum pair-programming hours per team from a granular work log.

    Required columns: team_id, hours. Any extra columns (person_id, week_id,
    activity) are ignored for the totals.
    """
    diag = diagnostics if diagnostics is not None else Diagnostics()
    p = Path(path)
    totals: dict[str, float] = {}
    for line, row in _read_rows(p, ("team_id", "hours")):
        try:
            hours = float(row["hours"])
        except ValueError:
            raise ValidationError(f"{p}:line {line}: non-numeric hours") from None
        if hours < 0:
            raise ValidationError(f"{p}:line {line}: negative hours")
        totals[row["team_id"]] = totals.get(row["team_id"], 0.0) + hours
        diag.bump("work_log_rows")
    return totals


# ---------------------------------------------------------------------------
# Whole-dataset serialization (round-trippable domain model)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TeamData:
    roster: Roster
    messages: MessageLog
    repo: RepoActivity


@dataclass(frozen=True)
class Dataset:
    calendar: SprintCalendar
    teams: Mapping[str, TeamData]
    feedback: tuple[FeedbackRecord, ...]
    outcomes: tuple[OutcomeRecord, ...]
    pair_hours: Mapping[str, float]


def dataset_to_dict(ds: Dataset) -> dict:
    return {
        "calendar": {
            "weeks": [
                {"week_id": w.week_id, "start": format_utc(w.start), "end": format_utc(w.end)}
                for w in ds.calendar.weeks
            ],
            "sprints": [
                {"sprint_id": s.sprint_id, "weeks": list(s.week_ids)}
                for s in ds.calendar.sprints
            ],
            "excluded_sprints": sorted(ds.calendar.excluded_sprints),
        },
        "teams": {
            team_id: {
                "roster": {
                    "members": sorted(td.roster.members),
                    "identity_map": dict(sorted(td.roster.identity_map.items())),
                },
                "messages": [
                    {
                        "message_id": m.message_id,
                        "channel_id": m.channel_id,
                        "author": m.author,
                        "timestamp": format_utc(m.timestamp),
                        "thread_root": m.thread_root,
                    }
                    for m in td.messages.messages
                ],
                "commits": [
                    {"sha": c.sha, "author": c.author, "authored_at": format_utc(c.authored_at)}
                    for c in td.repo.commits
                ],
                "merge_requests": [
                    {
                        "id": m.mr_id,
                        "created_at": format_utc(m.created_at),
                        "commits": sorted(m.commit_shas),
                        "files": sorted(m.changed_files),
                    }
                    for m in td.repo.merge_requests
                ],
            }
            for team_id, td in sorted(ds.teams.items())
        },
        "feedback": [
            {
                "sprint_id": f.sprint_id,
                "rater": f.rater,
                "ratee": f.ratee,
                "communication_rating": f.communication_rating,
            }
            for f in ds.feedback
        ],
        "outcomes": [
            {
                "team_id": o.team_id,
                "sprint_id": o.sprint_id,
                "story_points_committed": o.story_points_committed,
                "story_points_passed": o.story_points_passed,
                "team_score": o.team_score,
                "stories_passed_total": o.stories_passed_total,
                "pair_programming_hours": o.pair_programming_hours,
            }
            for o in ds.outcomes
        ],
        "pair_hours": dict(sorted(ds.pair_hours.items())),
    }


def dataset_from_dict(data: dict) -> Dataset:
    cal = calendar_from_dict(data["calendar"])
    teams: dict[str, TeamData] = {}
    for team_id, td in data["teams"].items():
        roster = Roster(
            team_id=team_id,
            members=frozenset(td["roster"]["members"]),
            identity_map=dict(td["roster"]["identity_map"]),
        )
        messages = MessageLog(
            messages=tuple(
                Message(
                    message_id=m["message_id"],
                    channel_id=m["channel_id"],
                    author=m["author"],
                    timestamp=parse_utc(m["timestamp"]),
                    thread_root=m["thread_root"],
                )
                for m in td["messages"]
            )
        )
        repo = RepoActivity(
            commits=tuple(
                Commit(sha=c["sha"], author=c["author"], authored_at=parse_utc(c["authored_at"]))
                for c in td["commits"]
            ),
            merge_requests=tuple(
                MergeRequest(
                    mr_id=m["id"],
                    created_at=parse_utc(m["created_at"]),
                    commit_shas=frozenset(m["commits"]),
                    changed_files=frozenset(m["files"]),
                )
                for m in td["merge_requests"]
            ),
        )
        teams[team_id] = TeamData(roster=roster, messages=messages, repo=repo)
    feedback = tuple(
        FeedbackRecord(
            sprint_id=f["sprint_id"],
            rater=f["rater"],
            ratee=f["ratee"],
            communication_rating=f["communication_rating"],
        )
        for f in data["feedback"]
    )
    outcomes = tuple(
        OutcomeRecord(
            team_id=o["team_id"],
            sprint_id=o["sprint_id"],
            story_points_committed=o["story_points_committed"],
            story_points_passed=o["story_points_passed"],
            team_score=o["team_score"],
            stories_passed_total=o["stories_passed_total"],
            pair_programming_hours=o["pair_programming_hours"],
        )
        for o in data["outcomes"]
    )
    return Dataset(
        calendar=cal,
        teams=teams,
        feedback=feedback,
        outcomes=outcomes,
        pair_hours=dict(data["pair_hours"]),
    )


def calendar_from_dict(data: dict) -> SprintCalendar:
    try:
        weeks = tuple(
            Week(week_id=int(w["week_id"]), start=parse_utc(w["start"]), end=parse_utc(w["end"]))
            for w in data["weeks"]
        )
        sprints = tuple(
            Sprint(sprint_id=int(s["sprint_id"]), week_ids=tuple(int(w) for w in s["weeks"]))
            for s in data["sprints"]
        )
        excluded = frozenset(int(s) for s in data.get("excluded_sprints", []))
    except (TypeError, KeyError) as exc:
        raise InputError(f"calendar section missing field {exc}") from None
    return SprintCalendar(weeks=weeks, sprints=sprints, excluded_sprints=excluded)


def save_dataset(ds: Dataset, path: Path | str) -> None:
    Path(path).write_text(
        json.dumps(dataset_to_dict(ds), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_dataset(path: Path | str) -> Dataset:
    return dataset_from_dict(_load_json(Path(path)))
