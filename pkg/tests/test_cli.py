import pytest

from fogcache.cli import main
from fogcache.experiment import CSV_COLUMNS
from fogcache.graph import load_topology


@pytest.fixture
def line_file(tmp_path):
    path = tmp_path / "line.txt"
    path.write_text("\n".join(f"{i} {i + 1}" for i in range(19)) + "\n")
    return path


class TestTopologyCommands:
    def test_generate_roundtrips(self, tmp_path, capsys):
        out = tmp_path / "topo.txt"
        assert main(["topology", "generate", "--kind", "grid", "--nodes", "9",
                     "--seed", "1", "-o", str(out)]) == 0
        topo = load_topology(out.read_text())
        assert topo.node_count == 9

    def test_generate_to_stdout(self, capsys):
        assert main(["topology", "generate", "--kind", "grid",
                     "--nodes", "4"]) == 0
        header = capsys.readouterr().out.splitlines()[0]
        assert header.startswith("# nodes=4")

    def test_validate_reports_shape(self, line_file, capsys):
        assert main(["topology", "validate", str(line_file)]) == 0
        out = capsys.readouterr().out
        assert "nodes=20" in out and "components=1" in out

    def test_missing_file_is_runtime_error(self, tmp_path):
        assert main(["topology", "validate", str(tmp_path / "nope.txt")]) == 2

    def test_bad_usage_is_config_error(self):
        assert main(["topology", "generate", "--kind", "dodecahedron"]) == 1

    def test_bad_generation_parameters(self):
        assert main(["topology", "generate", "--kind", "geometric",
                     "--nodes", "5", "--density", "0.0"]) == 1


class TestAnalysisCommands:
    def test_centrality_csv(self, line_file, capsys):
        assert main(["centrality", "--kind", "degree",
                     "--topology", str(line_file)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "node_id,kind,raw,normalized"
        assert len(lines) == 21

    def test_cbc_centrality_runs(self, line_file, capsys):
        assert main(["centrality", "--kind", "cbc",
                     "--topology", str(line_file)]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 21

    def test_place_csv(self, line_file, capsys):
        assert main(["place", "--scheme", "cbc", "--topology", str(line_file),
                     "--buffer-items", "2", "--catalog-size", "10"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "node_id,scheme,slot_index,item_rank,portion"
        assert len(lines) > 1

    def test_simulate_row(self, line_file, capsys):
        assert main(["simulate", "--scheme", "no_fog",
                     "--topology", str(line_file), "--interests", "50",
                     "--catalog-size", "10"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        row = lines[1].split(",")
        assert row[1] == "no_fog"
        assert int(row[7]) == 50  # generated

    def test_simulate_lru_scheme(self, line_file, capsys):
        assert main(["simulate", "--scheme", "lru_social_unaware",
                     "--topology", str(line_file), "--interests", "50",
                     "--catalog-size", "10"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 2


class TestExperimentCommand:
    def test_small_experiment_writes_reports(self, line_file, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["experiment", "--topology", str(line_file),
                     "--schemes", "cbc,no_fog", "--alphas", "0.5",
                     "--repetitions", "1", "--interests", "50",
                     "--catalog-size", "10", "--output-dir", str(out_dir)]) == 0
        assert (out_dir / "results.csv").exists()
        assert (out_dir / "summary.txt").exists()
        header = (out_dir / "results.csv").read_text().splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)

    def test_config_file_driven(self, line_file, tmp_path):
        config = tmp_path / "plan.cfg"
        config.write_text(
            f"topologies = {line_file.name}\n"
            "schemes = no_fog\nalphas = 0.5\nrepetitions = 1\n"
            "interests = 30\ncatalog_size = 5\n"
            f"output_dir = {tmp_path / 'results'}\n")
        assert main(["experiment", "--config", str(config)]) == 0
        assert (tmp_path / "results" / "results.csv").exists()

    def test_sweep_alpha_uses_single_scheme(self, line_file, tmp_path):
        out_dir = tmp_path / "sweep"
        assert main(["sweep-alpha", "--scheme", "cbc",
                     "--topology", str(line_file), "--alphas", "0.25,0.75",
                     "--repetitions", "1", "--interests", "30",
                     "--catalog-size", "5", "--output-dir", str(out_dir)]) == 0
        text = (out_dir / "results.csv").read_text()
        assert "cbc" in text and "no_fog" not in text

    def test_unknown_config_key(self, tmp_path):
        config = tmp_path / "plan.cfg"
        config.write_text("wat = 1\n")
        assert main(["experiment", "--config", str(config)]) == 1

    def test_unknown_scheme_flag(self, line_file):
        assert main(["experiment", "--topology", str(line_file),
                     "--schemes", "mystery", "--repetitions", "1",
                     "--interests", "10"]) == 1
