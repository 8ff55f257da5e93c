"""Exception types shared across the package."""


class ImgembedError(Exception):
    """Base class for package-specific failures."""


class DataError(ImgembedError):
    """A dataset could not be loaded or is unusable as given."""


class ShapeError(ImgembedError):
    """Input images do not fit the autoencoder architecture."""
