"""The ``embed`` command line, driven through main() for exit codes."""

import numpy as np
import pytest

import ddcluster
from imgembed.cli import main
from patterns import pattern_images


@pytest.fixture(scope="module")
def npz_path(tmp_path_factory):
    """A small labeled image array on disk."""
    imgs, labels = pattern_images(n=150, side=16, seed=2)
    path = str(tmp_path_factory.mktemp("arrays") / "patterns.npz")
    np.savez(path, images=imgs, labels=labels)
    return path


class TestUsage:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "--dataset" in capsys.readouterr().out

    def test_out_is_required(self, capsys):
        assert main(["--dataset", "digits16"]) == 1
        assert "embed: error:" in capsys.readouterr().err

    def test_needs_a_source(self, tmp_path, capsys):
        assert main(["--out", str(tmp_path / "e.csv")]) == 1
        assert "exactly one of" in capsys.readouterr().err

    def test_rejects_two_sources(self, npz_path, tmp_path):
        code = main(
            ["--dataset", "digits16", "--input", npz_path,
             "--out", str(tmp_path / "e.csv")]
        )
        assert code == 1

    def test_unknown_dataset(self, tmp_path):
        assert main(["--dataset", "cifar", "--out", str(tmp_path / "e.csv")]) == 1

    def test_bad_epochs(self, npz_path, tmp_path):
        code = main(
            ["--input", npz_path, "--epochs", "0", "--out", str(tmp_path / "e.csv")]
        )
        assert code == 1


class TestDataErrors:
    def test_missing_input_file(self, tmp_path, capsys):
        code = main(
            ["--input", str(tmp_path / "nope.npz"), "--out", str(tmp_path / "e.csv")]
        )
        assert code == 2
        assert "could not read" in capsys.readouterr().err

    def test_npz_without_images_array(self, tmp_path):
        path = str(tmp_path / "bad.npz")
        np.savez(path, pixels=np.zeros((4, 16, 16), dtype=np.float32))
        assert main(["--input", path, "--out", str(tmp_path / "e.csv")]) == 2

    def test_images_too_small_for_encoder(self, tmp_path):
        path = str(tmp_path / "tiny.npy")
        np.save(path, np.zeros((40, 8, 8), dtype=np.float32))
        code = main(
            ["--input", path, "--epochs", "1", "--perplexity", "5",
             "--out", str(tmp_path / "e.csv")]
        )
        assert code == 2


class TestRuns:
    def test_npz_end_to_end(self, npz_path, tmp_path, capsys):
        out = str(tmp_path / "embedding.csv")
        code = main(
            ["--input", npz_path, "--epochs", "1", "--batch-size", "64",
             "--perplexity", "20", "--out", out]
        )
        assert code == 0
        printed = capsys.readouterr().out
        assert "training on 150 images 16x16" in printed
        assert "embedded n=150" in printed
        ps = ddcluster.load_points(out)
        assert ps.n == 150
        assert sorted(set(ps.labels.tolist())) == [0, 1, 2]

    def test_limit_and_binary_format(self, npz_path, tmp_path):
        out = str(tmp_path / "embedding.bin")
        code = main(
            ["--input", npz_path, "--limit", "120", "--epochs", "1",
             "--batch-size", "64", "--perplexity", "20",
             "--format", "binary", "--out", out]
        )
        assert code == 0
        assert open(out, "rb").read(4) == b"DDCP"
        assert ddcluster.load_points(out).n == 120

    def test_npy_input_is_unlabeled(self, tmp_path):
        imgs, _ = pattern_images(n=100, side=16, seed=5)
        path = str(tmp_path / "bare.npy")
        np.save(path, imgs)
        out = str(tmp_path / "embedding.csv")
        code = main(
            ["--input", path, "--epochs", "1", "--batch-size", "64",
             "--perplexity", "15", "--out", out]
        )
        assert code == 0
        assert ddcluster.load_points(out).labels is None
