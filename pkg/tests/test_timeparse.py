import calendar
from datetime import datetime, timezone

import pytest

from sensegraph.graph import parse_time_label


def test_iso_date():
    assert parse_time_label("2007-02-20") == datetime(2007, 2, 20, tzinfo=timezone.utc)


def test_iso_datetime():
    assert parse_time_label("2007-02-20T14:30") == \
        datetime(2007, 2, 20, 14, 30, tzinfo=timezone.utc)


def test_iso_datetime_with_offset():
    assert parse_time_label("2007-02-20T14:30+02:00") == \
        datetime(2007, 2, 20, 12, 30, tzinfo=timezone.utc)


@pytest.mark.parametrize("label", [
    "February 20, 2007", "Feb 20, 2007", "feb 20 2007",
    "20 February 2007", "20 Feb 2007", "2/20/2007",
])
def test_alternate_grammars(label):
    assert parse_time_label(label) == datetime(2007, 2, 20, tzinfo=timezone.utc)


@pytest.mark.parametrize("label", [
    "wildlife", "", "   ", "iguana 2007", "Febber 20, 2007",
    "2007-13-01", "not a date", "20/20/2007",
])
def test_non_dates(label):
    assert parse_time_label(label) is None


def test_invalid_calendar_dates_rejected_against_oracle():
    # oracle: the stdlib calendar says which month/day combos exist
    for month in range(0, 15):
        for day in (0, 1, 28, 29, 30, 31, 32, 45):
            label = f"{month}/{day}/2007"
            valid = 1 <= month <= 12 and 1 <= day <= calendar.monthrange(2007, month)[1]
            parsed = parse_time_label(label)
            assert (parsed is not None) == valid, label


def test_missing_time_defaults_to_midnight_utc():
    parsed = parse_time_label("2007-05-19")
    assert (parsed.hour, parsed.minute, parsed.second) == (0, 0, 0)
    assert parsed.tzinfo == timezone.utc


def test_deterministic():
    assert parse_time_label("March 8, 2007") == parse_time_label("March 8, 2007")
