import pytest

from patterns import pattern_images


@pytest.fixture(scope="session")
def patterns():
    return pattern_images()


@pytest.fixture(scope="session")
def digits16():
    from imgembed import load_images

    return load_images("digits16")
