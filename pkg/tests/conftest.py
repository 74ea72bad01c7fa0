import sys
from pathlib import Path

import pytest

from lmkit import make_chain, make_product

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture
def c3():
    return make_chain(3)


@pytest.fixture
def c3xc3():
    return make_product(make_chain(3), make_chain(3))


@pytest.fixture
def data_dir():
    return DATA
