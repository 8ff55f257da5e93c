"""End-to-end embedding: train the autoencoder, encode, reduce to 2-D.

The 10-D representations are reduced with t-SNE (perplexity 30 unless
overridden, defaults otherwise, seeded) and written as a point file the
clustering toolkit loads directly; ground-truth labels ride along when
available, and the reduction settings are recorded in the CSV header
comment.
"""

from dataclasses import dataclass

import numpy as np

from .cae import CaeConfig, TrainResult, encode, train_cae
from .errors import DataError
from .pointfile import write_points

DEFAULT_PERPLEXITY = 30.0


def reduce_2d(features, seed: int = 0, perplexity: float = DEFAULT_PERPLEXITY) -> np.ndarray:
    """t-SNE the (n, d) features down to (n, 2); fixed seed, fixed output."""
    feats = np.asarray(features, dtype=np.float64)
    if feats.ndim != 2:
        raise ValueError(f"features must be 2-D (n, d), got shape {feats.shape}")
    n = feats.shape[0]
    if n <= perplexity:
        raise DataError(
            f"t-SNE needs more samples than its perplexity ({perplexity}), got n={n}"
        )
    from sklearn.manifold import TSNE

    coords = TSNE(
        n_components=2, perplexity=perplexity, random_state=seed
    ).fit_transform(feats)
    return coords.astype(np.float64)


@dataclass
class EmbedSummary:
    """What a pipeline run produced, for logging and CLI output."""

    n: int
    out_path: str
    first_loss: float
    last_loss: float
    trained: TrainResult


def embed_images(
    images,
    labels,
    config: CaeConfig = CaeConfig(),
    out_path: str = "embedding.csv",
    format: str = "csv",
    perplexity: float = DEFAULT_PERPLEXITY,
) -> EmbedSummary:
    """Train, encode, reduce, and export one dataset's 2-D embedding."""
    trained = train_cae(images, config)
    features = encode(images, trained)
    coords = reduce_2d(features, seed=config.seed, perplexity=perplexity)
    comment = (
        f"tsne perplexity={perplexity} seed={config.seed}\n"
        f"cae epochs={config.epochs} batch_size={config.batch_size} "
        f"noise={config.noise} use_da={config.use_da} "
        f"optimizer={config.optimizer} lr={config.lr}"
    )
    write_points(out_path, coords, labels, format=format, comment=comment)
    return EmbedSummary(
        n=coords.shape[0],
        out_path=out_path,
        first_loss=trained.losses[0],
        last_loss=trained.losses[-1],
        trained=trained,
    )
