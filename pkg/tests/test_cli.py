from __future__ import annotations

import json
import shutil

from teamnets.cli import main
from teamnets.report import load_report


class TestValidate:
    def test_clean_fixture_exits_zero(self, team7_dir, capsys):
        assert main(["validate", "--config", str(team7_dir / "config.json")]) == 0
        out = capsys.readouterr().out
        assert "120 messages" in out
        assert "40 commits" in out
        assert "37 communication events" in out

    def test_missing_config_is_input_error(self):
        assert main(["validate", "--config", "/nonexistent/config.json"]) == 2

    def test_malformed_chat_file_is_input_error(self, team7_dir, tmp_path, capsys):
        work = tmp_path / "team7"
        shutil.copytree(team7_dir, work)
        day = next((work / "chat" / "general").glob("*.json"))
        day.write_text("{broken", encoding="utf-8")
        assert main(["validate", "--config", str(work / "config.json")]) == 2
        assert day.name in capsys.readouterr().err

    def test_integrity_violation_is_validation_failure(self, team7_dir, tmp_path):
        work = tmp_path / "team7"
        shutil.copytree(team7_dir, work)
        repo = json.loads((work / "repo.json").read_text())
        repo["merge_requests"][0]["commits"].append("nonexistent")
        (work / "repo.json").write_text(json.dumps(repo), encoding="utf-8")
        assert main(["validate", "--config", str(work / "config.json")]) == 1


class TestSubcommands:
    def test_stc_writes_weekly_table(self, team7_dir, tmp_path):
        out = tmp_path / "out"
        assert main(["stc", "--config", str(team7_dir / "config.json"), "--out", str(out)]) == 0
        lines = (out / "stc_weekly.csv").read_text().splitlines()
        assert lines[0] == "team,week,stc_score"
        # weekly rows cover only weeks of included sprints (2, 3, 4)
        assert [l.split(",")[1] for l in lines[1:]] == ["2", "3", "4"]
        week3 = next(l for l in lines[1:] if l.split(",")[1] == "3")
        assert week3.split(",")[2] == "0.333333"

    def test_census_writes_tables_and_edge_lists(self, team7_dir, tmp_path):
        out = tmp_path / "out"
        assert main(["census", "--config", str(team7_dir / "config.json"), "--out", str(out)]) == 0
        census = (out / "census_sprint.csv").read_text().splitlines()
        assert census[0].startswith("team,sprint,rel_0_edges")
        assert len(census) == 3  # sprints 2 and 3 for one team
        edges = (out / "edges_X_sprint2.tsv").read_text().splitlines()
        assert edges == sorted(edges)
        assert all("\t" in line for line in edges)

    def test_report_full_run(self, mini_dir, tmp_path):
        out = tmp_path / "report"
        assert main(["report", "--config", str(mini_dir / "config.json"), "--out", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert "stc_correlations.csv" in names
        assert "team_summary.csv" in names
        assert "series_stc_alpha.csv" in names

    def test_report_structured_round_trips(self, mini_dir, tmp_path):
        out = tmp_path / "report"
        code = main(
            [
                "report",
                "--config",
                str(mini_dir / "config.json"),
                "--format",
                "structured-data",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        report = load_report(out / "report.json")
        assert report.teams == ("alpha", "beta")

    def test_correlate_writes_only_correlation_tables(self, mini_dir, tmp_path):
        out = tmp_path / "corr"
        assert main(["correlate", "--config", str(mini_dir / "config.json"), "--out", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert all("correlations" in n for n in names)
        assert "stc_correlations.csv" in names

    def test_exclude_teams_flag(self, mini_dir, tmp_path):
        out = tmp_path / "excl"
        code = main(
            [
                "report",
                "--config",
                str(mini_dir / "config.json"),
                "--exclude-teams",
                "beta",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        table = (out / "census_sprint_correlations_excluding.csv").read_text()
        assert "beta" in table.splitlines()[1]  # excluded_teams column filled

    def test_exclude_unknown_team_fails_validation(self, mini_dir, tmp_path):
        code = main(
            [
                "report",
                "--config",
                str(mini_dir / "config.json"),
                "--exclude-teams",
                "gamma",
                "--out",
                str(tmp_path / "x"),
            ]
        )
        assert code == 1

    def test_exclude_sprints_flag(self, mini_dir, tmp_path):
        out = tmp_path / "sprints"
        code = main(
            [
                "report",
                "--config",
                str(mini_dir / "config.json"),
                "--exclude-sprints",
                "3",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        stc_series = (out / "series_stc_alpha.csv").read_text().splitlines()
        assert [l.split(",")[0] for l in stc_series[1:]] == ["3", "4"]  # sprint 3 gone

    def test_missing_out_is_input_error(self, mini_dir):
        assert main(["stc", "--config", str(mini_dir / "config.json")]) == 2
