import pytest

from venturetower.content import default_pack


@pytest.fixture(scope="session")
def pack():
    return default_pack()
