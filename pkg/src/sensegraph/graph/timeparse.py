"""Date-label parsing for time-node classification.

Accepted grammar (deterministic, locale-independent):
  - ISO 8601 date ("2007-02-20") and date-time ("2007-02-20T14:30",
    optional seconds, optional "Z" / UTC offset)
  - "Month D, YYYY" with English month names or 3-letter abbreviations
  - "M/D/YYYY"
  - "D Month YYYY"

Missing time-of-day defaults to 00:00 UTC.
"""

import re
from datetime import datetime, timezone

_MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5,
    "june": 6, "july": 7, "august": 8, "september": 9, "october": 10,
    "november": 11, "december": 12,
}
_MONTH_ABBREV = {name[:3]: num for name, num in _MONTHS.items()}

_ISO_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})"
    r"(?:[T ](\d{2}):(\d{2})(?::(\d{2}))?(Z|[+-]\d{2}:\d{2})?)?$"
)
_MONTH_FIRST_RE = re.compile(r"^([A-Za-z]+)\.?\s+(\d{1,2}),?\s+(\d{4})$")
_DAY_FIRST_RE = re.compile(r"^(\d{1,2})\s+([A-Za-z]+)\.?\s+(\d{4})$")
_SLASH_RE = re.compile(r"^(\d{1,2})/(\d{1,2})/(\d{4})$")


def _month_number(word):
    word = word.lower()
    if word in _MONTHS:
        return _MONTHS[word]
    return _MONTH_ABBREV.get(word)


def _build(year, month, day, hour=0, minute=0, second=0, tz=timezone.utc):
    try:
        return datetime(year, month, day, hour, minute, second, tzinfo=tz)
    except ValueError:
        return None


def parse_time_label(label):
    """Return an aware UTC datetime if `label` denotes a calendar instant,
    else None. Total and deterministic; never raises."""
    text = label.strip()
    if not text:
        return None

    m = _ISO_RE.match(text)
    if m:
        year, month, day = int(m[1]), int(m[2]), int(m[3])
        hour = int(m[4]) if m[4] else 0
        minute = int(m[5]) if m[5] else 0
        second = int(m[6]) if m[6] else 0
        dt = _build(year, month, day, hour, minute, second)
        if dt is None:
            return None
        offset = m[7]
        if offset and offset != "Z":
            sign = 1 if offset[0] == "+" else -1
            oh, om = int(offset[1:3]), int(offset[4:6])
            from datetime import timedelta
            dt = dt.replace(tzinfo=timezone(sign * timedelta(hours=oh, minutes=om)))
            dt = dt.astimezone(timezone.utc)
        return dt

    m = _MONTH_FIRST_RE.match(text)
    if m:
        month = _month_number(m[1])
        if month is None:
            return None
        return _build(int(m[3]), month, int(m[2]))

    m = _DAY_FIRST_RE.match(text)
    if m:
        month = _month_number(m[2])
        if month is None:
            return None
        return _build(int(m[3]), month, int(m[1]))

    m = _SLASH_RE.match(text)
    if m:
        return _build(int(m[3]), int(m[1]), int(m[2]))

    return None
