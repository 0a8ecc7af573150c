import pytest

from tidd import Manager


@pytest.fixture
def mgr():
    return Manager()
