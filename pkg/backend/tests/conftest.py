from collections.abc import Generator

import pytest

from app.core.config import settings
from app.exactq import QVector
from app.sampling import DistributionSpec
from tests.utils.utils import vec


@pytest.fixture(scope="session")
def rademacher() -> DistributionSpec:
    return DistributionSpec.rademacher()


@pytest.fixture(scope="session")
def gaussian() -> DistributionSpec:
    return DistributionSpec.gaussian()


@pytest.fixture
def square() -> list[QVector]:
    return [vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1)]


@pytest.fixture
def segment() -> list[QVector]:
    return [vec(1, 1), vec(-1, -1)]


@pytest.fixture
def outside_pair() -> list[QVector]:
    return [vec(1, 1), vec(2, 1)]


@pytest.fixture
def small_chunks() -> Generator[None, None, None]:
    """Force several chunks per experiment so chunk merging is exercised."""
    previous = settings.CHUNK_SIZE
    settings.CHUNK_SIZE = 7
    yield
    settings.CHUNK_SIZE = previous
