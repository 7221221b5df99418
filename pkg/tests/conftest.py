from functools import lru_cache

import pytest

from osx import kernels
from osx.casestudies import FIXTURE_NAMES, fixture


@lru_cache(maxsize=None)
def cached_fixture(name):
    return fixture(name)


@pytest.fixture(params=FIXTURE_NAMES)
def any_fixture(request):
    return cached_fixture(request.param)


@pytest.fixture
def cross_m():
    return cached_fixture("cross")


@pytest.fixture
def nine():
    return cached_fixture("nine_three_2")


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    prev = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)
