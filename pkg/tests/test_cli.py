import csv
import io
import json
import subprocess
import sys

import pytest

from volatix import analytics, ingest, synthgen
from volatix.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestWhatIf:
    def test_benefit_case(self, capsys):
        code, out, _ = run_cli(capsys, "whatif", "--f", "16.15", "--n", "33", "--c", "209")
        assert code == 0
        lines = dict(line.split(": ") for line in out.strip().splitlines())
        assert lines["classification"] == "benefit"
        assert lines["delta_f"] == "5.67"

    def test_neutral_case(self, capsys):
        code, out, _ = run_cli(capsys, "whatif", "--f", "2", "--n", "100", "--c", "2")
        lines = dict(line.split(": ") for line in out.strip().splitlines())
        assert lines["classification"] == "neutral"
        assert lines["delta_f"] == "0.00"

    def test_penalty_floor_attained(self, capsys):
        code, out, _ = run_cli(
            capsys, "whatif", "--f", "171.83", "--n", "52", "--c", "0", "--format", "json"
        )
        data = json.loads(out)
        assert data["classification"] == "penalty"
        assert data["delta_f"] == "-3.24"
        assert data["delta_f"] == data["penalty_floor"]

    def test_zero_average_relative_undefined(self, capsys):
        code, out, _ = run_cli(capsys, "whatif", "--f", "0", "--n", "10", "--c", "3")
        assert code == 0
        assert "delta_f_rel: undefined" in out

    def test_invalid_numbers_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["whatif", "--f", "abc", "--n", "33", "--c", "209"])
        assert exc.value.code != 0


class TestReport:
    def test_report_fixture(self, capsys, absolute_fixture):
        code, out, err = run_cli(capsys, "report", str(absolute_fixture))
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 10
        ca = next(r for r in rows if r["journal_id"] == "CA-CANCER J CLIN")
        assert ca["delta_f"] == "68.27"

    def test_paper_level_and_aggregate_agree(self, capsys, papers_sample, tmp_path):
        code, journals_out, _ = run_cli(
            capsys, "ingest", str(papers_sample), "--schema", "papers"
        )
        assert code == 0
        corpus_path = tmp_path / "journals.csv"
        corpus_path.write_text(journals_out)
        _, from_papers, _ = run_cli(capsys, "report", str(papers_sample))
        _, from_aggregates, _ = run_cli(capsys, "report", str(corpus_path))
        assert from_papers == from_aggregates

    def test_empty_corpus_empty_output(self, capsys, tmp_path):
        empty = tmp_path / "journals.csv"
        empty.write_text(
            "journal_id,journal_name,total_citations,n_2y,top_paper_citations\n"
        )
        code, out, _ = run_cli(capsys, "report", str(empty))
        assert code == 0
        assert out.splitlines() == [
            "journal_id,f,f_star,c_star,delta_f,delta_f_rel,n_2y"
        ]

    def test_singleton_exclusions_reported_on_stderr(self, capsys, tmp_path):
        path = tmp_path / "journals.csv"
        path.write_text(
            "journal_id,journal_name,total_citations,n_2y,top_paper_citations\n"
            "S,Singleton,4,1,4\nA,Normal,10,5,6\n"
        )
        code, out, err = run_cli(capsys, "report", str(path))
        assert code == 0
        assert '"excluded"' in err
        assert "singleton_journal" in err
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["journal_id"] for r in rows] == ["A"]

    def test_json_format(self, capsys, absolute_fixture):
        code, out, _ = run_cli(capsys, "report", str(absolute_fixture), "--format", "json")
        data = json.loads(out)
        assert len(data) == 10

    def test_missing_file_exit_one(self, capsys):
        code, out, err = run_cli(capsys, "report", "/nonexistent/journals.csv")
        assert code == 1
        assert out == ""
        assert "volatix:" in err


class TestRankAndThresholds:
    def test_rank_deterministic_rerun(self, capsys, absolute_fixture):
        _, first, _ = run_cli(capsys, "rank", str(absolute_fixture), "--key", "abs")
        _, second, _ = run_cli(capsys, "rank", str(absolute_fixture), "--key", "abs")
        assert first == second
        assert first.splitlines()[1].startswith("1,CA-CANCER J CLIN")

    def test_rank_top_beyond_corpus(self, capsys, absolute_fixture):
        _, out, _ = run_cli(
            capsys, "rank", str(absolute_fixture), "--key", "abs", "--top", "500"
        )
        assert len(out.splitlines()) == 11  # header + all 10 journals

    def test_default_absolute_cuts(self, capsys, absolute_fixture):
        _, out, _ = run_cli(capsys, "thresholds", str(absolute_fixture), "--key", "abs")
        lines = out.splitlines()
        assert len(lines) == 13  # header + 12 preset cuts
        assert lines[1].split(",")[0] == "0.1"
        assert lines[-1].split(",")[0] == "50"

    def test_default_relative_cuts_in_percent(self, capsys, relative_fixture):
        _, out, _ = run_cli(capsys, "thresholds", str(relative_fixture), "--key", "rel")
        lines = out.splitlines()
        assert lines[1].split(",")[0] == "10%"
        assert lines[-1].split(",")[0] == "300%"

    def test_explicit_cuts(self, capsys, absolute_fixture):
        _, out, _ = run_cli(
            capsys, "thresholds", str(absolute_fixture), "--key", "abs", "--cuts", "5,10"
        )
        rows = out.splitlines()[1:]
        assert rows[0].split(",")[:2] == ["5", "7"]  # 68.27..5.57 exceed 5
        assert rows[1].split(",")[:2] == ["10", "3"]  # 68.27, 15.80, 13.67

    def test_unsorted_cuts_fail(self, capsys, absolute_fixture):
        code, _, err = run_cli(
            capsys, "thresholds", str(absolute_fixture), "--key", "abs", "--cuts", "5,1"
        )
        assert code == 1
        assert "strictly increasing" in err


class TestSynthAndScatter:
    def test_synth_writes_deterministic_csv(self, capsys, data_dir, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        config = str(data_dir / "synth_config.json")
        assert main(["synth", config, "--seed", "5", "--out", str(out_a)]) == 0
        assert main(["synth", config, "--seed", "5", "--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_seed_override_changes_output(self, capsys, data_dir, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        config = str(data_dir / "synth_config.json")
        main(["synth", config, "--seed", "5", "--out", str(out_a)])
        main(["synth", config, "--seed", "6", "--out", str(out_b)])
        assert out_a.read_bytes() != out_b.read_bytes()

    def test_scatter_out_file(self, capsys, absolute_fixture, tmp_path):
        out = tmp_path / "scatter.csv"
        code = main(["scatter", str(absolute_fixture), "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n_2y,delta_f,delta_f_rel"
        assert len(lines) == 11

    def test_bad_config_exit_one(self, capsys, tmp_path):
        bad = tmp_path / "config.json"
        bad.write_text('{"n_journals": 0}')
        code, _, err = run_cli(capsys, "synth", str(bad))
        assert code == 1


class TestPipelineComposability:
    def test_cli_pipeline_matches_library(self, capsys, tmp_path):
        config = synthgen.SynthConfig(
            n_journals=60,
            size_model=synthgen.LogUniformSizes(2, 80),
            citation_model=synthgen.ZipfTruncated(alpha=1.8, c_max=500),
            seed=77,
        )
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config.as_dict()))
        papers_path = tmp_path / "papers.csv"
        journals_path = tmp_path / "journals.csv"

        assert main(["synth", str(config_path), "--out", str(papers_path)]) == 0
        assert main(
            ["ingest", str(papers_path), "--schema", "papers", "--out", str(journals_path)]
        ) == 0
        _, report_out, _ = run_cli(capsys, "report", str(journals_path))
        _, rank_out, _ = run_cli(
            capsys, "rank", str(journals_path), "--key", "abs", "--top", "5"
        )

        # library path over the same data
        corpus = synthgen.generate_corpus(config, keep_papers=False)
        cleaned, _ = ingest.dedupe_and_filter(corpus)
        reports, _ = analytics.volatility_reports(cleaned)
        buf = io.StringIO()
        analytics.write_reports_csv(reports, buf)
        assert buf.getvalue() == report_out

        table = analytics.rank_by_volatility(reports, analytics.RankKey.ABSOLUTE, 5)
        buf = io.StringIO()
        analytics.write_ranked_csv(table, buf)
        assert buf.getvalue() == rank_out

    def test_thread_env_does_not_change_bytes(self, capsys, absolute_fixture, monkeypatch):
        monkeypatch.setenv("VOLATIX_THREADS", "1")
        _, serial, _ = run_cli(capsys, "report", str(absolute_fixture))
        monkeypatch.setenv("VOLATIX_THREADS", "7")
        _, threaded, _ = run_cli(capsys, "report", str(absolute_fixture))
        assert serial == threaded


def test_module_entry_point_subprocess(absolute_fixture):
    proc = subprocess.run(
        [sys.executable, "-m", "volatix", "rank", str(absolute_fixture), "--top", "1"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert "CA-CANCER J CLIN" in proc.stdout
