import numpy as np
import pytest

from ddcluster import PointSet


@pytest.fixture
def plus_blobs():
    """Two plus-sign blobs 10 apart: a center plus 4 satellites at 0.3.

    Point order matters for the frozen expectations: blob A center first
    (index 0), then its satellites, then blob B center (index 5), then its
    satellites.  With ratio 0.1 the pipeline finds exactly the two centers,
    only they are core, and no merge edge exists.
    """
    pts = []
    for cx in (0.0, 10.0):
        pts.append((cx, 0.0))
        pts.extend([(cx + 0.3, 0.0), (cx - 0.3, 0.0), (cx, 0.3), (cx, -0.3)])
    labels = [0] * 5 + [1] * 5
    return PointSet(np.asarray(pts), np.asarray(labels))
