import pytest
import torch

from imgembed import apply_affine, corrupt, random_transform


def impulse(side=21, row=10, col=5):
    img = torch.zeros(1, 1, side, side)
    img[0, 0, row, col] = 1.0
    return img


class TestCorrupt:
    def test_zero_sigma_is_identity(self):
        x = torch.rand(4, 1, 16, 16)
        assert corrupt(x, 0.0) is x

    def test_noise_statistics(self):
        x = torch.zeros(8, 1, 64, 64)
        g = torch.Generator().manual_seed(0)
        noisy = corrupt(x, 0.2, g)
        assert abs(float(noisy.mean())) < 0.01
        assert float(noisy.std()) == pytest.approx(0.2, rel=0.05)

    def test_seeded_reproducible(self):
        x = torch.rand(4, 1, 16, 16)
        a = corrupt(x, 0.3, torch.Generator().manual_seed(5))
        b = corrupt(x, 0.3, torch.Generator().manual_seed(5))
        assert torch.equal(a, b)

    def test_negative_sigma_rejected(self):
        with pytest.raises(ValueError, match=">= 0"):
            corrupt(torch.rand(1, 1, 16, 16), -0.1)


class TestApplyAffine:
    def test_integer_shift_moves_pixels(self):
        out = apply_affine(impulse(), torch.tensor([0.0]), torch.tensor([[2, 3]]))
        r, c = divmod(int(out[0, 0].argmax()), 21)
        # x shifts columns, y shifts rows
        assert (r, c) == (13, 7)
        assert float(out[0, 0, r, c]) == pytest.approx(1.0, abs=1e-5)

    def test_quarter_turn_direction(self):
        # content right of center moves below center: +x rotates toward +y
        img = impulse(21, 10, 15)
        out = apply_affine(img, torch.tensor([90.0]), torch.tensor([[0, 0]]))
        r, c = divmod(int(out[0, 0].argmax()), 21)
        assert (r, c) == (15, 10)

    def test_zero_transform_close_to_identity(self):
        x = torch.rand(3, 1, 16, 16)
        out = apply_affine(x, torch.zeros(3), torch.zeros(3, 2))
        assert torch.allclose(out, x, atol=1e-5)

    def test_rectangular_shift(self):
        img = torch.zeros(1, 1, 16, 32)
        img[0, 0, 8, 10] = 1.0
        out = apply_affine(img, torch.tensor([0.0]), torch.tensor([[4, 0]]))
        r, c = divmod(int(out[0, 0].argmax()), 32)
        assert (r, c) == (8, 14)

    def test_shifted_out_pixels_fill_zero(self):
        img = impulse(21, 10, 19)
        out = apply_affine(img, torch.tensor([0.0]), torch.tensor([[3, 0]]))
        assert float(out.sum()) == pytest.approx(0.0, abs=1e-6)

    def test_range_preserved(self):
        # bilinear blending of [0,1] values with zero fill stays in [0,1]
        x = torch.rand(5, 1, 16, 16)
        out = apply_affine(
            x, torch.tensor([7.0, -3.0, 10.0, 0.5, -9.0]),
            torch.tensor([[1, -2], [0, 3], [-3, -3], [2, 2], [0, 0]]),
        )
        assert float(out.min()) >= -1e-6
        assert float(out.max()) <= 1.0 + 1e-6


class TestRandomTransform:
    def test_zero_limits_return_input(self):
        x = torch.rand(4, 1, 16, 16)
        assert random_transform(x, max_shift=0, max_angle=0.0) is x

    def test_seeded_reproducible(self):
        x = torch.rand(6, 1, 16, 16)
        a = random_transform(x, generator=torch.Generator().manual_seed(2))
        b = random_transform(x, generator=torch.Generator().manual_seed(2))
        assert torch.equal(a, b)

    def test_per_image_parameters_differ(self):
        # identical inputs, one batch: transforms should not all coincide
        x = torch.rand(1, 1, 16, 16).expand(8, 1, 16, 16).contiguous()
        out = random_transform(x, generator=torch.Generator().manual_seed(0))
        flat = out.reshape(8, -1)
        assert not torch.equal(flat[0].expand_as(flat), flat)

    def test_pure_shift_bounded(self):
        img = impulse(21, 10, 10)
        batch = img.expand(32, 1, 21, 21).contiguous()
        out = random_transform(batch, max_shift=3, max_angle=0.0,
                               generator=torch.Generator().manual_seed(1))
        rows, cols = [], []
        for k in range(32):
            r, c = divmod(int(out[k, 0].argmax()), 21)
            rows.append(r)
            cols.append(c)
        assert all(abs(r - 10) <= 3 for r in rows)
        assert all(abs(c - 10) <= 3 for c in cols)
        # the draw actually uses the range
        assert len(set(zip(rows, cols))) > 1

    def test_negative_limits_rejected(self):
        x = torch.rand(1, 1, 16, 16)
        with pytest.raises(ValueError, match="max_shift"):
            random_transform(x, max_shift=-1)
        with pytest.raises(ValueError, match="max_angle"):
            random_transform(x, max_angle=-1.0)
