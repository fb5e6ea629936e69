import pytest

from group import close
from presets import PRESETS, preset_group

PRESET_NAMES = sorted(PRESETS)
REFLECTION_PRESETS = ["a1", "a2", "b2", "so3"]


@pytest.fixture(scope = "module")
def segre():
    return preset_group("segre")


@pytest.fixture(scope = "module")
def t3c2():
    return preset_group("t3c2")


@pytest.fixture(scope = "module")
def swap():
    return preset_group("a1")


@pytest.fixture(scope = "module")
def b2():
    return preset_group("b2")


@pytest.fixture(scope = "module")
def a2():
    return preset_group("a2")


@pytest.fixture(scope = "module")
def so3():
    return preset_group("so3")


@pytest.fixture(scope = "module")
def nested():
    """Rank 4: a nuclear line inside a nuclear plane, plus one reflection."""
    return close([[[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                  [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]], name = "nested")


@pytest.fixture(scope = "module")
def klein():
    return close([[[-1, 0, 0], [0, -1, 0], [0, 0, 1]], [[1, 0, 0], [0, -1, 0], [0, 0, -1]]], name = "klein")


@pytest.fixture
def trivial_rank2():
    return close([], rank = 2)


@pytest.fixture
def spec_file(tmp_path):
    def _write(text: str, name: str = "group.txt"):
        path = tmp_path / name
        path.write_text(text, encoding = "utf-8")
        return str(path)
    return _write
