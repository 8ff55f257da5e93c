"""The exported files must load in the clustering toolkit unchanged."""

import numpy as np
import pytest
from ddcluster import load_points

from imgembed import write_points, write_points_binary, write_points_csv


@pytest.fixture
def coords():
    rng = np.random.default_rng(7)
    return rng.normal(0, 30, (50, 2))


@pytest.fixture
def labels():
    return np.arange(50) % 4


class TestCsv:
    def test_round_trip_bitwise(self, tmp_path, coords, labels):
        path = str(tmp_path / "pts.csv")
        write_points_csv(path, coords, labels)
        ps = load_points(path)
        assert np.array_equal(ps.points, coords)
        assert np.array_equal(ps.labels, labels)

    def test_comment_above_header(self, tmp_path, coords, labels):
        path = str(tmp_path / "pts.csv")
        write_points_csv(path, coords, labels, comment="tsne perplexity=30 seed=0")
        lines = open(path).read().splitlines()
        assert lines[0] == "# tsne perplexity=30 seed=0"
        assert lines[1] == "x,y,label"
        ps = load_points(path)
        assert ps.n == 50 and ps.labels is not None

    def test_multiline_comment(self, tmp_path, coords):
        path = str(tmp_path / "pts.csv")
        write_points_csv(path, coords, comment="one\ntwo")
        lines = open(path).read().splitlines()
        assert lines[:2] == ["# one", "# two"]
        assert load_points(path).n == 50

    def test_unlabeled(self, tmp_path, coords):
        path = str(tmp_path / "pts.csv")
        write_points_csv(path, coords)
        ps = load_points(path)
        assert ps.labels is None
        assert np.array_equal(ps.points, coords)

    def test_label_length_mismatch(self, tmp_path, coords):
        with pytest.raises(ValueError, match="labels"):
            write_points_csv(str(tmp_path / "pts.csv"), coords, [1, 2, 3])

    def test_non_finite_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="finite"):
            write_points_csv(str(tmp_path / "pts.csv"), [[0.0, np.nan]])


class TestBinary:
    def test_round_trip_bitwise(self, tmp_path, coords, labels):
        path = str(tmp_path / "pts.bin")
        write_points_binary(path, coords, labels)
        ps = load_points(path)
        assert np.array_equal(ps.points, coords)
        assert np.array_equal(ps.labels, labels)

    def test_magic_sniffed(self, tmp_path, coords):
        path = str(tmp_path / "pts.bin")
        write_points_binary(path, coords)
        assert open(path, "rb").read(4) == b"DDCP"
        ps = load_points(path, format="auto")
        assert ps.labels is None and ps.n == 50

    def test_unlabeled_flag(self, tmp_path, coords):
        labeled = str(tmp_path / "a.bin")
        bare = str(tmp_path / "b.bin")
        write_points_binary(labeled, coords, np.zeros(50, dtype=np.int64))
        write_points_binary(bare, coords)
        assert load_points(labeled).labels is not None
        assert load_points(bare).labels is None


class TestDispatch:
    def test_format_selects_writer(self, tmp_path, coords):
        csv_path = str(tmp_path / "p.csv")
        bin_path = str(tmp_path / "p.bin")
        write_points(csv_path, coords, format="csv")
        write_points(bin_path, coords, format="binary")
        assert np.array_equal(load_points(csv_path).points, load_points(bin_path).points)

    def test_unknown_format(self, tmp_path, coords):
        with pytest.raises(ValueError, match="unknown format"):
            write_points(str(tmp_path / "p.x"), coords, format="json")

    def test_bad_shape(self, tmp_path):
        with pytest.raises(ValueError, match="2-D"):
            write_points(str(tmp_path / "p.csv"), [1.0, 2.0])
