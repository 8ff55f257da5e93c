"""Image dataset loading, scaled to [0,1].

Named datasets: "mnist_test", "fashion", "usps" (test splits, fetched
with torchvision into a cache directory; needs network on first use) and
"digits16" (the bundled scikit-learn digits upscaled to 16x16; works
offline).  Local arrays load from .npy (images only) or .npz with an
``images`` array and an optional ``labels`` array.
"""

import os
from typing import Optional, Tuple

import numpy as np

from .errors import DataError

DATASET_NAMES = ("mnist_test", "usps", "fashion", "digits16")

_DEFAULT_ROOT = os.path.join(os.path.expanduser("~"), ".cache", "imgembed")


def _scale_unit(arr: np.ndarray) -> np.ndarray:
    """Integer pixel data maps from its dtype range; floats must already fit."""
    if np.issubdtype(arr.dtype, np.integer):
        return (arr / 255.0).astype(np.float32)
    out = arr.astype(np.float32)
    if out.size and (out.min() < 0.0 or out.max() > 1.0):
        raise DataError(
            f"float images must be scaled to [0,1], got range [{out.min()}, {out.max()}]"
        )
    return out


def _fetch_torchvision(name: str, root: str):
    import torchvision.datasets as tvd

    classes = {"mnist_test": tvd.MNIST, "fashion": tvd.FashionMNIST, "usps": tvd.USPS}
    try:
        return classes[name](root=root, train=False, download=True)
    except Exception as exc:
        raise DataError(
            f"could not fetch dataset {name!r} into {root}: {exc} "
            "(is the network reachable?)"
        ) from exc


def _load_digits16() -> Tuple[np.ndarray, np.ndarray]:
    from sklearn.datasets import load_digits

    bunch = load_digits()
    # 8x8 with 17 gray levels; nearest-neighbour upsample to 16x16 so the
    # three stride-2 conv layers fit
    imgs = (bunch.images / 16.0).astype(np.float32)
    imgs = np.kron(imgs, np.ones((1, 2, 2), dtype=np.float32))
    return imgs, bunch.target.astype(np.int64)


def load_images(
    name: str, root: Optional[str] = None, limit: Optional[int] = None
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Load a named dataset as ((n, H, W) float32 in [0,1], labels or None)."""
    if name not in DATASET_NAMES:
        raise ValueError(f"unknown dataset {name!r}; expected one of {DATASET_NAMES}")
    if name == "digits16":
        images, labels = _load_digits16()
    else:
        ds = _fetch_torchvision(name, root or _DEFAULT_ROOT)
        data = ds.data
        if hasattr(data, "numpy"):
            data = data.numpy()
        images = _scale_unit(np.asarray(data))
        labels = np.asarray(ds.targets, dtype=np.int64)
    if limit is not None:
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        images, labels = images[:limit], labels[:limit]
    return images, labels


def load_array(path: str, limit: Optional[int] = None) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Load images (and labels, if present) from a local .npy/.npz file."""
    try:
        loaded = np.load(path, allow_pickle=False)
    except (OSError, ValueError) as exc:
        raise DataError(f"could not read {path}: {exc}") from exc
    if isinstance(loaded, np.ndarray):
        images, labels = loaded, None
    else:
        with loaded:
            if "images" not in loaded:
                raise DataError(f"{path}: .npz must contain an 'images' array")
            images = loaded["images"]
            labels = loaded["labels"].astype(np.int64) if "labels" in loaded else None
    if images.ndim != 3:
        raise DataError(f"{path}: images must be (n, H, W), got shape {images.shape}")
    images = _scale_unit(images)
    if labels is not None and labels.shape != (images.shape[0],):
        raise DataError(
            f"{path}: labels shape {labels.shape} does not match {images.shape[0]} images"
        )
    if limit is not None:
        if limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        images = images[:limit]
        labels = labels[:limit] if labels is not None else None
    return images, labels
