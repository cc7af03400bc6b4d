"""
End-to-end tests of the command line through main().
Run with: pytest tests/test_cli.py -v
"""
import json

import pandas as pd
import pytest

from ucs_hybrid.main import build_parser, main

TRAIN_FLAGS = ["--pop", "6", "--iters", "4", "--seed", "2"]


@pytest.fixture
def synthetic_csv(tmp_path):
    """60 planted records written by the synth command"""
    out = tmp_path / "synth"
    assert main(["synth", "--n", "60", "--seed", "3", "--out", str(out)]) == 0
    return out / "synthetic.csv"


class TestParser:
    """Test the argument surface"""

    def test_subcommands(self):
        parser = build_parser()
        for command in ("train", "sweep", "compare", "predict", "synth", "summarize"):
            args = parser.parse_args([command, "--data", "x.csv"] if command not in ("synth", "summarize") else [command])
            assert callable(args.handler)

    def test_sweep_defaults_to_protocol_sizes(self):
        args = build_parser().parse_args(["sweep", "--data", "x.csv"])
        assert args.sizes == "10,50,100,200,300,400,500"

    def test_unknown_algorithm_is_rejected(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["train", "--data", "x.csv", "--algo", "pso"])
        assert exc_info.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert "ucs_hybrid" in capsys.readouterr().out


@pytest.mark.integration
class TestTrainCommand:
    """Test `train`"""

    def test_writes_outputs(self, synthetic_csv, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["train", "--data", str(synthetic_csv), "--algo", "sbo", "--out", str(out)] + TRAIN_FLAGS) == 0
        for name in ("model.json", "report.csv", "train.csv", "test.csv", "trace_sbo_sp6.csv"):
            assert (out / name).is_file(), name

        trace = pd.read_csv(out / "trace_sbo_sp6.csv")
        assert trace["iteration"].tolist() == [1, 2, 3, 4]
        model = json.loads((out / "model.json").read_text())
        assert model["algorithm"] == "sbo"
        assert model["training_rmse"] == pytest.approx(trace["best_cost"].iloc[-1], abs=1e-9)
        assert len(pd.read_csv(out / "train.csv")) == 48
        assert "ANN-SBO S_P=6 T=4" in capsys.readouterr().out

    def test_outputs_are_byte_identical(self, synthetic_csv, tmp_path):
        for name in ("a", "b"):
            args = ["train", "--data", str(synthetic_csv), "--algo", "hgso", "--out", str(tmp_path / name)]
            assert main(args + TRAIN_FLAGS) == 0
        for name in ("model.json", "report.csv", "train.csv", "test.csv", "trace_hgso_sp6.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name

    def test_missing_data_file(self, tmp_path):
        assert main(["train", "--data", str(tmp_path / "missing.csv"), "--out", str(tmp_path)]) == 5

    def test_invalid_population(self, synthetic_csv, tmp_path):
        args = ["train", "--data", str(synthetic_csv), "--pop", "1", "--out", str(tmp_path)]
        assert main(args) == 2

    def test_bad_csv(self, write_csv, tmp_path):
        path = write_csv("CSC,TSC,CA\n1,2,3\n")
        assert main(["train", "--data", str(path), "--out", str(tmp_path)]) == 2


@pytest.mark.integration
class TestSweepCommand:
    """Test `sweep`"""

    def test_writes_outputs(self, synthetic_csv, tmp_path):
        out = tmp_path / "sweep"
        args = ["sweep", "--data", str(synthetic_csv), "--sizes", "4,6", "--iters", "3", "--seed", "1",
                "--workers", "1", "--out", str(out)]
        assert main(args) == 0
        frame = pd.read_csv(out / "sweep.csv")
        assert frame["S_P"].tolist() == [4, 6]
        best = int(frame.loc[frame["selected"], "S_P"].item())
        other = 6 if best == 4 else 4
        assert (out / "model.json").is_file()
        assert (out / f"model_sp{other}.json").is_file()
        assert (out / "trace_sbo_sp4.csv").is_file() and (out / "trace_sbo_sp6.csv").is_file()

    def test_bad_sizes(self, synthetic_csv, tmp_path):
        assert main(["sweep", "--data", str(synthetic_csv), "--sizes", "4,x", "--out", str(tmp_path)]) == 2


@pytest.mark.integration
class TestCompareCommand:
    """Test `compare`"""

    def test_writes_report_with_footer(self, synthetic_csv, tmp_path, capsys):
        out = tmp_path / "compare"
        args = ["compare", "--data", str(synthetic_csv), "--algos", "sbo,vsa", "--workers", "1",
                "--out", str(out)] + TRAIN_FLAGS
        assert main(args) == 0
        frame = pd.read_csv(out / "report.csv", comment="#")
        assert set(frame["Hybrid"]) == {"ANN-SBO", "ANN-VSA"}
        assert len(frame.columns) == 9
        text = (out / "report.csv").read_text()
        assert "# ranking (testing RMSE): " in text
        assert "Testing RMSE 5.1679" in text
        assert (out / "model_sbo.json").is_file() and (out / "model_vsa.json").is_file()
        printed = capsys.readouterr().out
        assert any(line.startswith("1. ANN-") for line in printed.splitlines())
        assert "dominance:" in printed

    def test_duplicate_algorithms(self, synthetic_csv, tmp_path):
        args = ["compare", "--data", str(synthetic_csv), "--algos", "sbo,SBO", "--out", str(tmp_path)]
        assert main(args) == 2

    def test_single_algorithm(self, synthetic_csv, tmp_path):
        args = ["compare", "--data", str(synthetic_csv), "--algos", "sbo", "--out", str(tmp_path)] + TRAIN_FLAGS
        assert main(args) == 2


class TestPredictCommand:
    """Test `predict`"""

    def test_frozen(self, write_csv, tmp_path):
        path = write_csv("CSC,TSC,CA,DMAX,SPC,FM,WB,SR\n0,0,0,0,0,0,0,0\n")
        output = tmp_path / "pred.csv"
        assert main(["predict", "--frozen", "--data", str(path), "--output", str(output)]) == 0
        assert pd.read_csv(output)["UCS_PRED"].iloc[0] == pytest.approx(-1.8374, abs=5e-4)

    @pytest.mark.integration
    def test_with_trained_model(self, synthetic_csv, tmp_path):
        out = tmp_path / "run"
        assert main(["train", "--data", str(synthetic_csv), "--out", str(out)] + TRAIN_FLAGS) == 0
        args = ["predict", "--model", str(out / "model.json"), "--data", str(out / "test.csv"), "--out", str(out)]
        assert main(args) == 0
        frame = pd.read_csv(out / "predictions.csv")
        assert len(frame) == 12
        assert frame.columns[-1] == "UCS_PRED"

    def test_requires_model(self, synthetic_csv, tmp_path):
        assert main(["predict", "--data", str(synthetic_csv), "--out", str(tmp_path)]) == 2

    def test_model_extension_checked(self, synthetic_csv, tmp_path):
        model = tmp_path / "model.txt"
        model.write_text("{}")
        assert main(["predict", "--model", str(model), "--data", str(synthetic_csv), "--out", str(tmp_path)]) == 2


class TestSynthAndSummarize:
    """Test `synth` and `summarize`"""

    def test_synth_is_deterministic(self, tmp_path):
        for name in ("a", "b"):
            assert main(["synth", "--n", "20", "--seed", "5", "--out", str(tmp_path / name)]) == 0
        assert (tmp_path / "a" / "synthetic.csv").read_bytes() == (tmp_path / "b" / "synthetic.csv").read_bytes()
        assert len(pd.read_csv(tmp_path / "a" / "synthetic.csv")) == 20

    def test_synth_rejects_tiny_n(self, tmp_path):
        assert main(["synth", "--n", "1", "--out", str(tmp_path)]) == 2

    def test_summarize_reference(self, tmp_path, capsys):
        assert main(["summarize", "--reference", "--out", str(tmp_path)]) == 0
        frame = pd.read_csv(tmp_path / "summary.csv")
        assert frame["Parameter"].tolist() == ["CSC", "TSC", "CA", "DMAX", "SPC", "FM", "WB", "SR", "UCS"]
        assert "Summary of 323 records" in capsys.readouterr().out

    def test_summarize_dataset(self, synthetic_csv, tmp_path):
        assert main(["summarize", "--data", str(synthetic_csv), "--out", str(tmp_path)]) == 0
        frame = pd.read_csv(tmp_path / "summary.csv", float_precision="round_trip")
        data = pd.read_csv(synthetic_csv, float_precision="round_trip")
        ucs = frame.set_index("Parameter").loc["UCS"]
        assert ucs["Mean"] == pytest.approx(data["UCS"].mean(), rel=1e-10)
        assert ucs["Maximum"] == data["UCS"].max()

    def test_summarize_needs_a_source(self, tmp_path):
        assert main(["summarize", "--out", str(tmp_path)]) == 2
