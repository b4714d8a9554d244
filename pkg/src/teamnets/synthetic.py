"""Deterministic synthetic-season generator.

Writes a complete input tree (chat exports, repo activity, feedback,
outcomes, work logs, config) for a configurable number of teams and weeks.
Used by the performance tests and the demo scripts; everything is driven by
a single seeded RNG, so a given seed always produces byte-identical inputs.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

__all__ = ["make_season"]

_CHANNELS = ("general", "dev", "standup")
_SPRINT_SIZES = (2, 4, 4, 4, 4, 5, 7)  # partitions 30 weeks; first sprint excluded
_BREAK_AFTER_WEEK = 14
_BREAK_DAYS = 28


def _season_weeks(n_weeks: int, start: datetime) -> list[tuple[int, datetime, datetime]]:
    weeks = []
    cursor = start
    for wid in range(1, n_weeks + 1):
        weeks.append((wid, cursor, cursor + timedelta(days=7)))
        cursor += timedelta(days=7)
        if wid == _BREAK_AFTER_WEEK:
            cursor += timedelta(days=_BREAK_DAYS)
    return weeks


def _season_sprints(n_weeks: int) -> list[tuple[int, list[int]]]:
    sprints = []
    next_week = 1
    for sid, size in enumerate(_SPRINT_SIZES, start=1):
        span = list(range(next_week, min(next_week + size, n_weeks + 1)))
        if not span:
            break
        sprints.append((sid, span))
        next_week += size
    # dump any leftover weeks into the last sprint
    if next_week <= n_weeks:
        sprints[-1] = (sprints[-1][0], sprints[-1][1] + list(range(next_week, n_weeks + 1)))
    return sprints


def make_season(
    root: Path | str,
    seed: int = 0,
    n_teams: int = 10,
    members_per_team: int = 8,
    n_weeks: int = 30,
    messages_per_team: int = 5000,
    mrs_per_team: int = 100,
) -> Path:
    """Generate a full synthetic season under ``root``; returns the config path."""
    rng = random.Random(seed)
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    start = datetime(2023, 2, 20, tzinfo=timezone.utc)
    weeks = _season_weeks(n_weeks, start)
    sprints = _season_sprints(n_weeks)
    week_bounds = {wid: (s, e) for wid, s, e in weeks}

    team_ids = [chr(ord("A") + i) for i in range(n_teams)]
    teams_cfg = []
    outcome_rows = ["team_id,sprint_id,story_points_committed,story_points_passed,"
                    "team_score,stories_passed_total,pair_programming_hours"]
    feedback_rows = ["sprint_id,rater,ratee,communication_rating"]
    work_rows = ["team_id,person_id,week_id,hours"]

    for team in team_ids:
        members = [f"{team.lower()}{i + 1}" for i in range(members_per_team)]
        handles = {f"U{team}{i + 1:02d}": m for i, m in enumerate(members)}
        handle_of = {m: h for h, m in handles.items()}
        chat_dir = root / "chat" / team
        _write_chat(rng, chat_dir, members, handle_of, weeks, messages_per_team)
        _write_repo(rng, root / f"repo_{team}.json", members, weeks, week_bounds, mrs_per_team)
        teams_cfg.append(
            {
                "team_id": team,
                "members": members,
                "identity_map": handles,
                "chat_export": f"chat/{team}",
                "repo_activity": f"repo_{team}.json",
            }
        )
        stories_total = rng.randint(20, 55)
        pair_hours = rng.randint(150, 620)
        for sid, _ in sprints:
            committed = rng.randint(18, 45)
            passed = rng.randint(committed // 3, committed)
            score = rng.randint(45, 100)
            outcome_rows.append(
                f"{team},{sid},{committed},{passed},{score},{stories_total},"
            )
            if sid > 1:
                for rater in members:
                    for ratee in members:
                        if rater != ratee and rng.random() < 0.6:
                            feedback_rows.append(
                                f"{sid},{rater},{ratee},{rng.randint(1, 5)}"
                            )
        for _ in range(10):
            member = rng.choice(members)
            wid = rng.randint(1, n_weeks)
            work_rows.append(f"{team},{member},{wid},{pair_hours / 10:.1f}")

    (root / "outcomes.csv").write_text("\n".join(outcome_rows) + "\n", encoding="utf-8")
    (root / "feedback.csv").write_text("\n".join(feedback_rows) + "\n", encoding="utf-8")
    (root / "work_logs.csv").write_text("\n".join(work_rows) + "\n", encoding="utf-8")

    config = {
        "calendar": {
            "weeks": [
                {
                    "week_id": wid,
                    "start": s.isoformat().replace("+00:00", "Z"),
                    "end": e.isoformat().replace("+00:00", "Z"),
                }
                for wid, s, e in weeks
            ],
            "sprints": [{"sprint_id": sid, "weeks": span} for sid, span in sprints],
            "excluded_sprints": [1],
        },
        "teams": teams_cfg,
        "feedback": "feedback.csv",
        "outcomes": "outcomes.csv",
        "work_logs": "work_logs.csv",
        "excluded_handles": ["UBOT"],
        "options": {},
    }
    config_path = root / "config.json"
    config_path.write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    return config_path


def _write_chat(rng, chat_dir, members, handle_of, weeks, n_messages):
    per_day: dict[tuple[str, str], list[dict]] = {}
    open_threads: dict[str, list[tuple[str, str]]] = {c: [] for c in _CHANNELS}
    n_weeks = len(weeks)
    for i in range(n_messages):
        wid, wstart, _ = weeks[min(int(rng.random() * n_weeks), n_weeks - 1)]
        moment = wstart + timedelta(seconds=rng.randint(0, 7 * 24 * 3600 - 1))
        channel = rng.choice(_CHANNELS)
        author = rng.choice(members)
        # the index in the fractional part keeps ids collision-free per channel
        ts = f"{moment.timestamp():.0f}.{i:06d}"
        threads = open_threads[channel]
        msg: dict = {"user": handle_of[author], "ts": ts}
        if threads and rng.random() < 0.55:
            root_ts, _ = rng.choice(threads)
            # replies must not predate their root; skip ordering violations
            if float(root_ts) <= float(ts):
                msg["thread_ts"] = root_ts
        elif rng.random() < 0.35:
            msg["thread_ts"] = ts  # roots carry their own ts
            threads.append((ts, author))
            if len(threads) > 12:
                threads.pop(0)
        day = moment.strftime("%Y-%m-%d")
        per_day.setdefault((channel, day), []).append(msg)
    # a couple of bot lines exercise the exclusion list
    wid, wstart, _ = weeks[0]
    bot_ts = f"{(wstart + timedelta(hours=1)).timestamp():.4f}"
    per_day.setdefault((_CHANNELS[0], wstart.strftime("%Y-%m-%d")), []).append(
        {"user": "UBOT", "ts": bot_ts, "subtype": "bot_message"}
    )
    for (channel, day), msgs in sorted(per_day.items()):
        msgs.sort(key=lambda m: float(m["ts"]))
        day_path = chat_dir / channel / f"{day}.json"
        day_path.parent.mkdir(parents=True, exist_ok=True)
        day_path.write_text(json.dumps(msgs, indent=1) + "\n", encoding="utf-8")


def _write_repo(rng, path, members, weeks, week_bounds, n_mrs):
    files_pool = [f"src/module_{i}.py" for i in range(30)] + [
        f"tests/test_{i}.py" for i in range(15)
    ]
    commits = []
    mrs = []
    sha_counter = 0
    n_weeks = len(weeks)
    for m in range(n_mrs):
        wid = rng.randint(1, n_weeks)
        wstart, wend = week_bounds[wid]
        created = wstart + timedelta(seconds=rng.randint(0, int((wend - wstart).total_seconds()) - 1))
        shas = []
        for _ in range(rng.randint(1, 4)):
            sha_counter += 1
            sha = f"c{sha_counter:06d}"
            author = rng.choice(members)
            # most commits land in the creation week, some a week earlier
            offset = rng.randint(-6 * 24 * 3600, 0) if rng.random() < 0.2 else -rng.randint(0, 3600)
            authored = created + timedelta(seconds=offset)
            commits.append(
                {
                    "sha": sha,
                    "author": author,
                    "authored_at": authored.isoformat().replace("+00:00", "Z"),
                }
            )
            shas.append(sha)
        mrs.append(
            {
                "id": f"MR{m + 1:04d}",
                "created_at": created.isoformat().replace("+00:00", "Z"),
                "commits": shas,
                "files": sorted(rng.sample(files_pool, rng.randint(1, 4))),
            }
        )
    payload = {"commits": commits, "merge_requests": mrs}
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
