"""Tests for the binary digit-sum bounds check."""

import pytest

from digitwitness.errors import DomainError, UsageError
from digitwitness.oracle.bounds import (
    BoundsReport,
    floor_log,
    stolarsky_check,
    violates_log_floor,
    violates_power_ratio,
)


def test_floor_log_binary():
    assert floor_log(1) == 0
    assert floor_log(7) == 2
    assert floor_log(8) == 3


@pytest.mark.parametrize("n,expected", [(2, 0), (3, 1), (7, 1), (8, 2), (20, 2), (21, 3), (54, 3), (55, 4)])
def test_floor_log_natural(n, expected):
    assert floor_log(n, "e") == expected


def test_floor_log_rejects_unknown_base():
    with pytest.raises(UsageError):
        floor_log(10, "10")
    with pytest.raises(DomainError):
        floor_log(0)


def test_small_range_has_no_violations():
    report = stolarsky_check(16, 2, "2")
    assert report.checked_range == (4, 16)
    assert report.log_floor_violations == []
    assert report.power_ratio_violations == []


def test_log_floor_example():
    # n = 7: s_2(49) = 3 = s_2(7)
    assert not violates_log_floor(7)
    assert not violates_log_floor(7, "e")


@pytest.mark.parametrize("h", [2, 3, 5])
def test_powers_of_two_never_violate(h):
    for k in range(2, 40):
        assert not violates_power_ratio(2 ** k, h)
        assert not violates_power_ratio(2 ** k, h, "e")


def test_reported_violations_recheck():
    report = stolarsky_check(3000, 3, "e")
    for n in report.log_floor_violations:
        assert violates_log_floor(n, "e")
    for n in report.power_ratio_violations:
        assert violates_power_ratio(n, 3, "e")


def test_report_serialization():
    report = BoundsReport((4, 10), 2, "2", [5], [], melfi=7)
    assert report.to_dict() == {
        "checked_range": ["4", "10"],
        "power": 2,
        "log_base": "2",
        "log_floor_violations": ["5"],
        "power_ratio_violations": [],
        "melfi_count": "7",
    }


def test_check_domain():
    with pytest.raises(DomainError):
        stolarsky_check(3)
    with pytest.raises(DomainError):
        stolarsky_check(100, 1)
    with pytest.raises(UsageError):
        stolarsky_check(100, 2, "10")


@pytest.mark.slow
def test_binary_log_floor_holds_to_hundred_thousand():
    report = stolarsky_check(10 ** 5, 2, "2")
    assert report.log_floor_violations == []
