import pytest

from conftest import PRESET_NAMES
from constants import Limits
from presets import preset_group
from verification_runner import VerificationRunner


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_passes(name):
    runner = VerificationRunner(preset_group(name), echo = False)
    assert runner.run()
    assert runner.history
    assert all(ok for _, _, ok, _ in runner.history)


def test_characteristics_dividing_the_order_are_skipped(b2):
    runner = VerificationRunner(b2, characteristics = (0, 2, 5), echo = False)
    assert runner.characteristics == (0, 5)


def test_history_records_each_check(segre):
    runner = VerificationRunner(segre, characteristics = (0,), echo = False)
    runner.run()
    names = [name for name, _, _, _ in runner.history]
    assert names == ["molien audit", "classifier vs jacobian", "upward closure", "origin rule", "local models",
                     "singular support", "nuclear circles", "characteristic independence"]


def test_failed_check_is_recorded(segre):
    runner = VerificationRunner(segre, Limits(relation_bound = 3), characteristics = (0,), echo = False)
    assert not runner.run()
    failed = [name for name, _, ok, _ in runner.history if not ok]
    assert failed == ["classifier vs jacobian"]


def test_echo_prints_results(capsys, t3c2):
    VerificationRunner(t3c2, characteristics = (0,), echo = True).run()
    out = capsys.readouterr().out
    assert "PASS classifier vs jacobian [p=0]" in out


def test_nested_group_passes(nested):
    runner = VerificationRunner(nested, characteristics = (0, 5), echo = False)
    assert runner.run()
