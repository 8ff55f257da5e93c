"""Convolutional autoencoder that learns a 10-D image representation.

Encoder: Conv(32, 5x5) -> Conv(64, 5x5) -> Conv(128, 3x3) -> FC(10),
stride 2 on every conv layer; the decoder mirrors it with transposed
convolutions.  Internal layers use ReLU; the input, the 10-D embedding,
and the reconstruction output are not activated.

Training minimizes mean squared reconstruction error.  In denoising mode
the input is a noise-corrupted copy and the target is the clean image;
in data-augmentation mode a randomly shifted and rotated copy is both
input and target.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import torch
from torch import nn

from .augment import corrupt, random_transform
from .errors import ShapeError

EMBED_DIM = 10

# (kernel, padding) per encoder conv; stride is always 2
_CONV_SPECS = [(32, 5, 2), (64, 5, 2), (128, 3, 0)]
MIN_SIDE = 9


@dataclass(frozen=True)
class CaeConfig:
    """Training settings; architecture and embedding width are fixed."""

    epochs: int = 10
    batch_size: int = 256
    noise: float = 0.2
    use_da: bool = False
    max_shift: int = 3
    max_angle: float = 10.0
    seed: int = 0
    lr: float = 1e-3
    optimizer: str = "adam"

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.noise < 0:
            raise ValueError(f"noise must be >= 0, got {self.noise}")
        if self.optimizer != "adam":
            raise ValueError(f"unsupported optimizer {self.optimizer!r}")


def _conv_sizes(side: int) -> List[int]:
    sizes = [side]
    for _, kernel, pad in _CONV_SPECS:
        sizes.append((sizes[-1] + 2 * pad - kernel) // 2 + 1)
    return sizes


class ConvAutoencoder(nn.Module):
    """Mirror-symmetric convolutional autoencoder for one image shape."""

    def __init__(self, height: int, width: int):
        super().__init__()
        if height < MIN_SIDE or width < MIN_SIDE:
            raise ShapeError(
                f"images must be at least {MIN_SIDE}x{MIN_SIDE} for the "
                f"three stride-2 conv layers, got {height}x{width}"
            )
        self.height = height
        self.width = width
        hs = _conv_sizes(height)
        ws = _conv_sizes(width)
        flat = _CONV_SPECS[-1][0] * hs[3] * ws[3]

        enc: List[nn.Module] = []
        in_ch = 1
        for out_ch, kernel, pad in _CONV_SPECS:
            enc += [nn.Conv2d(in_ch, out_ch, kernel, stride=2, padding=pad), nn.ReLU()]
            in_ch = out_ch
        enc += [nn.Flatten(), nn.Linear(flat, EMBED_DIM)]
        self.encoder = nn.Sequential(*enc)

        # output_padding recovers the exact pre-conv size at each step
        dec: List[nn.Module] = [
            nn.Linear(EMBED_DIM, flat),
            nn.ReLU(),
            nn.Unflatten(1, (_CONV_SPECS[-1][0], hs[3], ws[3])),
        ]
        chans = [1] + [c for c, _, _ in _CONV_SPECS]
        for level in (3, 2, 1):
            out_ch, kernel, pad = chans[level - 1], _CONV_SPECS[level - 1][1], _CONV_SPECS[level - 1][2]
            opad = (
                hs[level - 1] - ((hs[level] - 1) * 2 - 2 * pad + kernel),
                ws[level - 1] - ((ws[level] - 1) * 2 - 2 * pad + kernel),
            )
            dec.append(
                nn.ConvTranspose2d(
                    chans[level], out_ch, kernel, stride=2, padding=pad, output_padding=opad
                )
            )
            if level > 1:
                dec.append(nn.ReLU())
        self.decoder = nn.Sequential(*dec)

    def encode(self, x: torch.Tensor) -> torch.Tensor:
        return self.encoder(x)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.decoder(self.encoder(x))


@dataclass
class TrainResult:
    """A trained autoencoder with its per-epoch loss trajectory."""

    model: ConvAutoencoder
    losses: List[float]
    config: CaeConfig


def _validate_images(images) -> torch.Tensor:
    """Coerce to a (n, 1, H, W) float32 tensor, checking the [0,1] scale."""
    arr = np.asarray(images, dtype=np.float32)
    if arr.ndim == 4:
        if arr.shape[1] != 1:
            raise ShapeError(f"expected single-channel images, got {arr.shape[1]} channels")
    elif arr.ndim == 3:
        arr = arr[:, None, :, :]
    else:
        raise ShapeError(f"images must be (n, H, W) or (n, 1, H, W), got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ShapeError("need at least one image")
    if not np.all(np.isfinite(arr)):
        raise ValueError("images must be finite")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError(
            f"images must be scaled to [0,1], got range [{arr.min()}, {arr.max()}]"
        )
    return torch.from_numpy(arr)


def prepare_batch(
    batch: torch.Tensor, config: CaeConfig, generator: Optional[torch.Generator] = None
) -> Tuple[torch.Tensor, torch.Tensor]:
    """Build the (input, target) pair for one training step.

    Data-augmentation mode reconstructs the transformed image from
    itself; denoising mode reconstructs the clean image from a corrupted
    copy.  With augmentation off and zero noise both collapse to plain
    reconstruction of the batch.
    """
    if config.use_da:
        moved = random_transform(batch, config.max_shift, config.max_angle, generator)
        return moved, moved
    return corrupt(batch, config.noise, generator), batch


def train_cae(images, config: CaeConfig = CaeConfig()) -> TrainResult:
    """Train the autoencoder on images scaled to [0,1]; fully seeded."""
    x = _validate_images(images)
    n = x.shape[0]
    torch.manual_seed(config.seed)
    model = ConvAutoencoder(x.shape[2], x.shape[3])
    gen = torch.Generator().manual_seed(config.seed)
    opt = torch.optim.Adam(model.parameters(), lr=config.lr)
    loss_fn = nn.MSELoss()

    model.train()
    losses: List[float] = []
    for _ in range(config.epochs):
        perm = torch.randperm(n, generator=gen)
        total = 0.0
        for start in range(0, n, config.batch_size):
            batch = x[perm[start : start + config.batch_size]]
            inp, target = prepare_batch(batch, config, gen)
            opt.zero_grad()
            loss = loss_fn(model(inp), target)
            loss.backward()
            opt.step()
            total += float(loss.detach()) * batch.shape[0]
        losses.append(total / n)
    model.eval()
    return TrainResult(model=model, losses=losses, config=config)


def encode(images, trained, batch_size: int = 512) -> np.ndarray:
    """Map images to their 10-D representations; deterministic."""
    model = trained.model if isinstance(trained, TrainResult) else trained
    x = _validate_images(images)
    if (x.shape[2], x.shape[3]) != (model.height, model.width):
        raise ShapeError(
            f"images are {x.shape[2]}x{x.shape[3]} but the encoder was "
            f"trained on {model.height}x{model.width}"
        )
    model.eval()
    chunks = []
    with torch.no_grad():
        for start in range(0, x.shape[0], batch_size):
            chunks.append(model.encode(x[start : start + batch_size]).numpy())
    return np.concatenate(chunks, axis=0).astype(np.float64)
