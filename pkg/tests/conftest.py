import pathlib

import pytest

from semsnap import parse_canvas

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    return parse_canvas((FIXTURES / name).read_text(), base_path=str(FIXTURES))


@pytest.fixture
def fixtures_dir():
    return FIXTURES
