from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from teamnets.errors import InputError, ValidationError
from teamnets.ingestion import (
    Dataset,
    Diagnostics,
    Roster,
    Sprint,
    SprintCalendar,
    TeamData,
    Week,
    assign_week,
    dataset_from_dict,
    dataset_to_dict,
    load_dataset,
    parse_chat_export,
    parse_feedback,
    parse_outcomes,
    parse_repo_activity,
    parse_work_logs,
    save_dataset,
)


def utc(*args):
    return datetime(*args, tzinfo=timezone.utc)


def simple_calendar():
    weeks = tuple(
        Week(week_id=i, start=utc(2023, 3, 6 + 7 * (i - 1)), end=utc(2023, 3, 13 + 7 * (i - 1)))
        for i in (1, 2)
    )
    return SprintCalendar(
        weeks=weeks, sprints=(Sprint(1, (1,)), Sprint(2, (2,))), excluded_sprints=frozenset({1})
    )


class TestCalendar:
    def test_assign_week_start_inclusive(self):
        cal = simple_calendar()
        assert assign_week(utc(2023, 3, 6), cal) == 1

    def test_assign_week_end_exclusive(self):
        cal = simple_calendar()
        assert assign_week(utc(2023, 3, 13), cal) == 2  # contiguous weeks
        assert assign_week(utc(2023, 3, 20), cal) is None

    def test_gap_returns_none(self, team7_config):
        # the fixture calendar has a two-week break after week 3
        assert team7_config.calendar.assign_week(utc(2023, 4, 1)) is None

    def test_overlapping_weeks_rejected(self):
        weeks = (
            Week(1, utc(2023, 3, 6), utc(2023, 3, 14)),
            Week(2, utc(2023, 3, 13), utc(2023, 3, 20)),
        )
        with pytest.raises(ValidationError):
            SprintCalendar(weeks=weeks, sprints=(Sprint(1, (1, 2)),))

    def test_week_in_two_sprints_rejected(self):
        weeks = (Week(1, utc(2023, 3, 6), utc(2023, 3, 13)),)
        with pytest.raises(ValidationError):
            SprintCalendar(weeks=weeks, sprints=(Sprint(1, (1,)), Sprint(2, (1,))))

    def test_empty_sprint_rejected(self):
        weeks = (Week(1, utc(2023, 3, 6), utc(2023, 3, 13)),)
        with pytest.raises(ValidationError):
            SprintCalendar(weeks=weeks, sprints=(Sprint(1, ()),))

    def test_unknown_excluded_sprint_rejected(self):
        weeks = (Week(1, utc(2023, 3, 6), utc(2023, 3, 13)),)
        with pytest.raises(ValidationError):
            SprintCalendar(
                weeks=weeks, sprints=(Sprint(1, (1,)),), excluded_sprints=frozenset({9})
            )


class TestRoster:
    def test_identity_targets_must_be_members(self):
        with pytest.raises(ValidationError):
            Roster(team_id="T", members=frozenset({"a"}), identity_map={"H1": "zz"})

    def test_empty_roster_rejected(self):
        with pytest.raises(ValidationError):
            Roster(team_id="T", members=frozenset(), identity_map={})


def write_channel(root: Path, channel: str, day: str, messages: list[dict]) -> None:
    path = root / channel / f"{day}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(messages), encoding="utf-8")


@pytest.fixture()
def two_person_roster():
    return Roster(
        team_id="T",
        members=frozenset({"alice", "bob"}),
        identity_map={"UA": "alice", "UB": "bob"},
    )


class TestChatParser:
    def test_minimal_thread(self, tmp_path, two_person_roster):
        write_channel(
            tmp_path,
            "general",
            "2023-03-06",
            [
                {"user": "UB", "ts": "1678100000.0001", "thread_ts": "1678100000.0001"},
                {"user": "UA", "ts": "1678100100.0002", "thread_ts": "1678100000.0001"},
            ],
        )
        log = parse_chat_export(tmp_path, two_person_roster)
        assert len(log.messages) == 2
        root, reply = log.messages
        assert root.thread_root is None
        assert reply.thread_root == root.message_id
        assert reply.author == "alice" and root.author == "bob"

    def test_non_threaded_message(self, tmp_path, two_person_roster):
        write_channel(
            tmp_path, "general", "2023-03-06", [{"user": "UA", "ts": "1678100000.0001"}]
        )
        log = parse_chat_export(tmp_path, two_person_roster)
        assert log.messages[0].thread_root is None

    def test_fixture_counts(self, team7_config, team7_dir):
        manifest = json.loads((team7_dir / "manifest.json").read_text())
        team = team7_config.teams[0]
        diag = Diagnostics()
        log = parse_chat_export(
            team.chat_export, team.roster, team7_config.excluded_handles, diag
        )
        assert len(log.messages) == manifest["messages_kept"] == 120
        roots = {m.thread_root for m in log.messages if m.thread_root is not None}
        assert len(roots) == manifest["distinct_thread_roots"] == 14
        assert diag.counts["messages_seen"] == manifest["raw_messages"]
        assert diag.counts["messages_dropped_unknown_handle"] == 2
        assert diag.counts["messages_dropped_excluded_handle"] == 3
        assert diag.counts["messages_dropped_subtype"] == 2

    def test_identity_mapping_total_over_retained(self, team7_config):
        team = team7_config.teams[0]
        log = parse_chat_export(team.chat_export, team.roster, team7_config.excluded_handles)
        assert all(m.author in team.roster.members for m in log.messages)

    def test_malformed_file_names_file_and_offset(self, tmp_path, two_person_roster):
        bad = tmp_path / "general" / "2023-03-06.json"
        bad.parent.mkdir(parents=True)
        bad.write_text('[{"user": "UA", "ts": }]', encoding="utf-8")
        with pytest.raises(InputError) as err:
            parse_chat_export(tmp_path, two_person_roster)
        message = str(err.value)
        assert "2023-03-06.json" in message
        assert "column" in message

    def test_missing_directory(self, two_person_roster, tmp_path):
        with pytest.raises(InputError):
            parse_chat_export(tmp_path / "nope", two_person_roster)

    def test_reply_before_root_rejected(self, tmp_path, two_person_roster):
        write_channel(
            tmp_path,
            "general",
            "2023-03-06",
            [
                {"user": "UB", "ts": "1678100500.0", "thread_ts": "1678100500.0"},
                {"user": "UA", "ts": "1678100000.0", "thread_ts": "1678100500.0"},
            ],
        )
        with pytest.raises(ValidationError):
            parse_chat_export(tmp_path, two_person_roster)

    def test_reply_to_dropped_root_becomes_plain(self, tmp_path, two_person_roster):
        write_channel(
            tmp_path,
            "general",
            "2023-03-06",
            [
                {"user": "UBOT", "ts": "1678100000.0", "thread_ts": "1678100000.0"},
                {"user": "UA", "ts": "1678100100.0", "thread_ts": "1678100000.0"},
            ],
        )
        diag = Diagnostics()
        log = parse_chat_export(tmp_path, two_person_roster, ("UBOT",), diag)
        assert len(log.messages) == 1
        assert log.messages[0].thread_root is None
        assert diag.counts["replies_to_dropped_root"] == 1


class TestRepoParser:
    def test_trivial(self, tmp_path, two_person_roster):
        payload = {
            "commits": [
                {"sha": "c1", "author": "alice", "authored_at": "2023-03-06T10:00:00Z"},
                {"sha": "c2", "author": "bob", "authored_at": "2023-03-06T11:00:00Z"},
            ],
            "merge_requests": [
                {
                    "id": "M1",
                    "created_at": "2023-03-07T10:00:00Z",
                    "commits": ["c1", "c2"],
                    "files": ["a.py"],
                }
            ],
        }
        path = tmp_path / "repo.json"
        path.write_text(json.dumps(payload))
        repo = parse_repo_activity(path, two_person_roster)
        assert len(repo.merge_requests) == 1
        assert repo.merge_requests[0].commit_shas == frozenset({"c1", "c2"})

    def test_dangling_sha_names_mr(self, tmp_path, two_person_roster):
        payload = {
            "commits": [],
            "merge_requests": [
                {
                    "id": "M7",
                    "created_at": "2023-03-07T10:00:00Z",
                    "commits": ["missing"],
                    "files": ["a.py"],
                }
            ],
        }
        path = tmp_path / "repo.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValidationError) as err:
            parse_repo_activity(path, two_person_roster)
        assert "M7" in str(err.value)

    def test_fixture_totals_match_manifest(self, team7_config, team7_dir):
        manifest = json.loads((team7_dir / "manifest.json").read_text())
        team = team7_config.teams[0]
        diag = Diagnostics()
        repo = parse_repo_activity(team.repo_activity, team.roster, diag)
        assert len(repo.commits) == manifest["commits_kept"] == 40
        assert len(repo.merge_requests) == manifest["merge_requests"] == 12
        assert diag.counts["commits_dropped_unknown_author"] == 1
        assert diag.counts["mr_commit_links_dropped"] == 1
        assert diag.counts["mrs_with_empty_files"] == 1

    def test_empty_files_mr_kept_with_diagnostic(self, team7_config):
        team = team7_config.teams[0]
        repo = parse_repo_activity(team.repo_activity, team.roster)
        m05 = next(m for m in repo.merge_requests if m.mr_id == "M05")
        assert m05.changed_files == frozenset()


class TestTables:
    def test_feedback_roundtrip_row(self, tmp_path):
        path = tmp_path / "fb.csv"
        path.write_text(
            "sprint_id,rater,ratee,communication_rating\n2,A,B,4\n", encoding="utf-8"
        )
        records = parse_feedback(path, simple_calendar())
        assert len(records) == 1
        assert records[0].rater == "A" and records[0].communication_rating == 4

    def test_rating_out_of_bounds_names_row(self, tmp_path):
        path = tmp_path / "fb.csv"
        path.write_text(
            "sprint_id,rater,ratee,communication_rating\n2,A,B,4\n2,B,A,6\n", encoding="utf-8"
        )
        with pytest.raises(ValidationError) as err:
            parse_feedback(path, simple_calendar())
        assert "line 3" in str(err.value)

    def test_self_rating_rejected(self, tmp_path):
        path = tmp_path / "fb.csv"
        path.write_text(
            "sprint_id,rater,ratee,communication_rating\n2,A,A,4\n", encoding="utf-8"
        )
        with pytest.raises(ValidationError):
            parse_feedback(path, simple_calendar())

    def test_excluded_sprints_filtered(self, team7_config, team7_dir):
        diag = Diagnostics()
        records = parse_feedback(team7_dir / "feedback.csv", team7_config.calendar, diag)
        assert {r.sprint_id for r in records} == {2, 3}
        assert len(records) == 4
        assert diag.counts["feedback_rows_excluded_sprint"] == 1

    def test_outcomes_fixture(self, team7_config, team7_dir):
        records = parse_outcomes(team7_dir / "outcomes.csv", team7_config.calendar)
        assert [r.sprint_id for r in records] == [2, 3]  # sprint 1 excluded
        assert all(r.stories_passed_total == 25 for r in records)

    def test_outcomes_passed_exceeds_committed(self, tmp_path):
        path = tmp_path / "o.csv"
        path.write_text(
            "team_id,sprint_id,story_points_committed,story_points_passed,team_score\n"
            "X,2,10,11,70\n",
            encoding="utf-8",
        )
        with pytest.raises(ValidationError) as err:
            parse_outcomes(path, simple_calendar())
        assert "line 2" in str(err.value)

    def test_outcomes_table3_team_g(self, team7_config, team7_dir):
        records = parse_outcomes(team7_dir / "outcomes_table3.csv", team7_config.calendar)
        team_g = next(r for r in records if r.team_id == "G")
        assert team_g.pair_programming_hours == 434
        assert team_g.stories_passed_total == 23

    def test_outcomes_inconsistent_year_level(self, tmp_path):
        path = tmp_path / "o.csv"
        path.write_text(
            "team_id,sprint_id,story_points_committed,story_points_passed,team_score,"
            "stories_passed_total,pair_programming_hours\n"
            "X,1,10,5,70,20,100\nX,2,10,5,70,21,100\n",
            encoding="utf-8",
        )
        with pytest.raises(ValidationError):
            parse_outcomes(path, simple_calendar())

    def test_work_logs_sum_per_team(self, tmp_path):
        path = tmp_path / "wl.csv"
        path.write_text(
            "team_id,person_id,week_id,hours\nX,p1,1,2.5\nX,p2,1,1.5\nY,q1,2,3\n",
            encoding="utf-8",
        )
        assert parse_work_logs(path) == {"X": 4.0, "Y": 3.0}

    def test_work_logs_negative_hours(self, tmp_path):
        path = tmp_path / "wl.csv"
        path.write_text("team_id,hours\nX,-1\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            parse_work_logs(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "fb.csv"
        path.write_text("sprint_id,rater\n1,A\n", encoding="utf-8")
        with pytest.raises(InputError) as err:
            parse_feedback(path, simple_calendar())
        assert "communication_rating" in str(err.value)


class TestRoundTrip:
    def test_dataset_roundtrip(self, team7_config, team7_dir, tmp_path):
        team = team7_config.teams[0]
        cal = team7_config.calendar
        ds = Dataset(
            calendar=cal,
            teams={
                "X": TeamData(
                    roster=team.roster,
                    messages=parse_chat_export(
                        team.chat_export, team.roster, team7_config.excluded_handles
                    ),
                    repo=parse_repo_activity(team.repo_activity, team.roster),
                )
            },
            feedback=tuple(parse_feedback(team7_dir / "feedback.csv", cal)),
            outcomes=tuple(parse_outcomes(team7_dir / "outcomes.csv", cal)),
            pair_hours={"X": 100.0},
        )
        path = tmp_path / "dataset.json"
        save_dataset(ds, path)
        assert load_dataset(path) == ds

    def test_dict_roundtrip_is_identity(self, team7_config):
        team = team7_config.teams[0]
        ds = Dataset(
            calendar=team7_config.calendar,
            teams={
                "X": TeamData(
                    roster=team.roster,
                    messages=parse_chat_export(
                        team.chat_export, team.roster, team7_config.excluded_handles
                    ),
                    repo=parse_repo_activity(team.repo_activity, team.roster),
                )
            },
            feedback=(),
            outcomes=(),
            pair_hours={},
        )
        assert dataset_from_dict(dataset_to_dict(ds)) == ds
