"""Image embedding pipeline: denoising CAE features reduced to 2-D."""

from .augment import apply_affine, corrupt, random_transform
from .cae import (
    EMBED_DIM,
    CaeConfig,
    ConvAutoencoder,
    TrainResult,
    encode,
    prepare_batch,
    train_cae,
)
from .datasets import DATASET_NAMES, load_array, load_images
from .embed import DEFAULT_PERPLEXITY, EmbedSummary, embed_images, reduce_2d
from .errors import DataError, ImgembedError, ShapeError
from .pointfile import write_points, write_points_binary, write_points_csv

__all__ = [
    "CaeConfig",
    "ConvAutoencoder",
    "DATASET_NAMES",
    "DEFAULT_PERPLEXITY",
    "DataError",
    "EMBED_DIM",
    "EmbedSummary",
    "ImgembedError",
    "ShapeError",
    "TrainResult",
    "apply_affine",
    "corrupt",
    "embed_images",
    "encode",
    "load_array",
    "load_images",
    "prepare_batch",
    "random_transform",
    "reduce_2d",
    "train_cae",
    "write_points",
    "write_points_binary",
    "write_points_csv",
]
