"""External-evaluation metrics: clustering accuracy and NMI.

Ground-truth label -1 means "unlabeled/noise" and those points are dropped
before scoring.  Predicted labels are taken as-is (a predicted -1 is just
another cluster id), so algorithms that emit noise are penalised for it.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment


@dataclass(frozen=True)
class EvalReport:
    """Scores for one prediction against one ground truth.

    ``contingency`` is the k_pred x k_true co-occurrence count matrix over
    the scored points; its entries sum to ``n_scored``.
    """

    acc: float
    nmi: float
    k_pred: int
    k_true: int
    n_scored: int
    contingency: np.ndarray

    def to_json(self) -> str:
        return json.dumps(
            {
                "acc": self.acc,
                "nmi": self.nmi,
                "k_pred": self.k_pred,
                "k_true": self.k_true,
                "n_scored": self.n_scored,
            },
            indent=2,
        )


def _scored(pred, truth):
    pred = np.asarray(pred, dtype=np.int64).ravel()
    truth = np.asarray(truth, dtype=np.int64).ravel()
    if pred.shape != truth.shape:
        raise ValueError(f"length mismatch: {pred.shape[0]} vs {truth.shape[0]}")
    keep = truth >= 0
    if not np.any(keep):
        raise ValueError("no scored points: every truth label is -1")
    return pred[keep], truth[keep]


def contingency(pred, truth) -> np.ndarray:
    """Count matrix over compacted (pred, truth) id pairs.

    Rows follow the sorted distinct predicted labels, columns the sorted
    distinct truth labels, after dropping truth -1 points.
    """
    pred, truth = _scored(pred, truth)
    _, pred_inv = np.unique(pred, return_inverse=True)
    _, truth_inv = np.unique(truth, return_inverse=True)
    table = np.zeros((pred_inv.max() + 1, truth_inv.max() + 1), dtype=np.int64)
    np.add.at(table, (pred_inv, truth_inv), 1)
    return table


def accuracy(pred, truth) -> float:
    """Best-match clustering accuracy.

    The contingency table is zero-padded square and a maximum-weight
    bijection between predicted and truth ids is taken; accuracy is the
    matched count over the number of scored points.
    """
    table = contingency(pred, truth)
    size = max(table.shape)
    padded = np.zeros((size, size), dtype=np.int64)
    padded[: table.shape[0], : table.shape[1]] = table
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum()) / float(table.sum())


def nmi(pred, truth) -> float:
    """Normalized mutual information, I(U;V) / sqrt(H(U) H(V)).

    Natural logarithms; 0 log 0 terms drop.  If both entropies are zero
    (single cluster on both sides) the score is 1.0; if exactly one is
    zero it is 0.0.
    """
    table = contingency(pred, truth).astype(np.float64)
    n = table.sum()
    joint = table / n
    # Marginals come from the exact count sums, divided once: a cluster
    # holding every point must yield p == 1.0 and entropy exactly 0, which
    # summing the divided joint row would miss by an ulp.
    pu = table.sum(axis=1) / n
    pv = table.sum(axis=0) / n

    nz_u = pu > 0
    nz_v = pv > 0
    h_u = -float(np.sum(pu[nz_u] * np.log(pu[nz_u])))
    h_v = -float(np.sum(pv[nz_v] * np.log(pv[nz_v])))
    if h_u == 0.0 and h_v == 0.0:
        return 1.0
    if h_u == 0.0 or h_v == 0.0:
        return 0.0

    nz = joint > 0
    outer = pu[:, None] * pv[None, :]
    info = float(np.sum(joint[nz] * np.log(joint[nz] / outer[nz])))
    return info / math.sqrt(h_u * h_v)


def evaluate(pred, truth) -> EvalReport:
    """Full report: accuracy, NMI, cluster counts, scored-point count."""
    table = contingency(pred, truth)
    return EvalReport(
        acc=accuracy(pred, truth),
        nmi=nmi(pred, truth),
        k_pred=int(table.shape[0]),
        k_true=int(table.shape[1]),
        n_scored=int(table.sum()),
        contingency=table,
    )
