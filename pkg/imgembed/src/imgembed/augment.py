"""Input corruption and random image transforms for autoencoder training.

Two training-time distortions:

* ``corrupt``: additive Gaussian pixel noise (a corrupted copy of the
  input; the reconstruction target stays clean).
* ``random_transform``: per-image random shift of at most ``max_shift``
  pixels in each direction and rotation of at most ``max_angle`` degrees;
  the transformed image serves as both input and target.

Transforms are built as per-sample affine sampling grids, bilinear, with
zero fill outside the original frame.  An integer shift with zero angle
lands on the pixel grid, so pixels move essentially unblurred (bilinear
weights collapse to one cell up to float32 grid rounding).  Zero-limit
transforms return the input unchanged.
"""

import math

import torch


def corrupt(images: torch.Tensor, sigma: float, generator=None) -> torch.Tensor:
    """Additive Gaussian noise with standard deviation ``sigma``."""
    if sigma < 0:
        raise ValueError(f"noise level must be >= 0, got {sigma}")
    if sigma == 0:
        return images
    noise = torch.empty_like(images).normal_(0.0, sigma, generator=generator)
    return images + noise


def apply_affine(images: torch.Tensor, angles_deg: torch.Tensor, shifts_xy: torch.Tensor) -> torch.Tensor:
    """Rotate each image about its center, then shift it, in one resample.

    ``images`` is (n, 1, H, W); ``angles_deg`` is (n,); ``shifts_xy`` is
    (n, 2) in pixels, x = columns rightward, y = rows downward.  Positive
    angles rotate content from the +x axis toward the +y axis (downward).
    """
    n, _, h, w = images.shape
    dtype = images.dtype
    rad = angles_deg.to(dtype) * (math.pi / 180.0)
    cos, sin = torch.cos(rad), torch.sin(rad)
    tx = shifts_xy[:, 0].to(dtype)
    ty = shifts_xy[:, 1].to(dtype)

    # grid_sample maps output coords to input sampling coords, so the
    # grid encodes the inverse of the content transform: undo the shift,
    # then rotate back.  Built in normalized coordinates where a shift of
    # one pixel is 2/W (or 2/H); rotation about the center needs the
    # aspect correction W/H between the two normalized axes.
    theta = torch.zeros(n, 2, 3, dtype=dtype)
    theta[:, 0, 0] = cos
    theta[:, 0, 1] = sin * (h / w)
    theta[:, 1, 0] = -sin * (w / h)
    theta[:, 1, 1] = cos
    theta[:, 0, 2] = -(cos * tx + sin * ty) * (2.0 / w)
    theta[:, 1, 2] = -(-sin * tx + cos * ty) * (2.0 / h)

    grid = torch.nn.functional.affine_grid(theta, list(images.shape), align_corners=False)
    return torch.nn.functional.grid_sample(
        images, grid, mode="bilinear", padding_mode="zeros", align_corners=False
    )


def random_transform(
    images: torch.Tensor,
    max_shift: int = 3,
    max_angle: float = 10.0,
    generator=None,
) -> torch.Tensor:
    """Independent random shift and rotation per image in the batch.

    Shifts are integer pixel offsets drawn uniformly from
    [-max_shift, max_shift] per axis; angles are uniform on
    [-max_angle, max_angle] degrees.
    """
    if max_shift < 0:
        raise ValueError(f"max_shift must be >= 0, got {max_shift}")
    if max_angle < 0:
        raise ValueError(f"max_angle must be >= 0, got {max_angle}")
    if max_shift == 0 and max_angle == 0:
        return images
    n = images.shape[0]
    shifts = torch.randint(-max_shift, max_shift + 1, (n, 2), generator=generator)
    angles = (torch.rand(n, generator=generator) * 2.0 - 1.0) * max_angle
    return apply_affine(images, angles, shifts)
