/** Date-label parsing for time-node classification.
 *
 * Accepted grammar (deterministic, locale-independent):
 *   - ISO 8601 date ("2007-02-20") and date-time ("2007-02-20T14:30",
 *     optional seconds, optional "Z" / UTC offset)
 *   - "Month D, YYYY" with English month names or 3-letter abbreviations
 *   - "M/D/YYYY"
 *   - "D Month YYYY"
 *
 * Missing time-of-day defaults to 00:00 UTC. The result is the canonical
 * snapshot timestamp string "YYYY-MM-DDTHH:MM:SSZ", or null.
 */

const MONTHS: Record<string, number> = {
  january: 1, february: 2, march: 3, april: 4, may: 5, june: 6,
  july: 7, august: 8, september: 9, october: 10, november: 11, december: 12,
};
const MONTH_ABBREV: Record<string, number> = {};
for (const [name, num] of Object.entries(MONTHS)) {
  MONTH_ABBREV[name.slice(0, 3)] = num;
}

const ISO_RE =
  /^(\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2})(?::(\d{2}))?(Z|[+-]\d{2}:\d{2})?)?$/;
const MONTH_FIRST_RE = /^([A-Za-z]+)\.?\s+(\d{1,2}),?\s+(\d{4})$/;
const DAY_FIRST_RE = /^(\d{1,2})\s+([A-Za-z]+)\.?\s+(\d{4})$/;
const SLASH_RE = /^(\d{1,2})\/(\d{1,2})\/(\d{4})$/;

function monthNumber(word: string): number | null {
  const lower = word.toLowerCase();
  return MONTHS[lower] ?? MONTH_ABBREV[lower] ?? null;
}

/** Epoch millis for a validated calendar instant, or null. */
function buildUtc(year: number, month: number, day: number,
                  hour = 0, minute = 0, second = 0): number | null {
  if (hour > 23 || minute > 59 || second > 59) return null;
  const ms = Date.UTC(year, month - 1, day, hour, minute, second);
  const probe = new Date(ms);
  // Date.UTC silently rolls over invalid dates (Feb 30); reject those
  if (probe.getUTCFullYear() !== year || probe.getUTCMonth() !== month - 1
      || probe.getUTCDate() !== day) {
    return null;
  }
  return ms;
}

function isoString(epochMs: number): string {
  return new Date(epochMs).toISOString().replace(/\.\d{3}Z$/, "Z");
}

export function parseTimeLabel(label: string): string | null {
  const text = label.trim();
  if (!text) return null;

  let m = ISO_RE.exec(text);
  if (m) {
    const [year, month, day] = [Number(m[1]), Number(m[2]), Number(m[3])];
    const hour = m[4] ? Number(m[4]) : 0;
    const minute = m[5] ? Number(m[5]) : 0;
    const second = m[6] ? Number(m[6]) : 0;
    let ms = buildUtc(year, month, day, hour, minute, second);
    if (ms === null) return null;
    const offset = m[7];
    if (offset && offset !== "Z") {
      const sign = offset[0] === "+" ? 1 : -1;
      const oh = Number(offset.slice(1, 3));
      const om = Number(offset.slice(4, 6));
      ms -= sign * (oh * 60 + om) * 60_000;
    }
    return isoString(ms);
  }

  m = MONTH_FIRST_RE.exec(text);
  if (m) {
    const month = monthNumber(m[1]);
    if (month === null) return null;
    const ms = buildUtc(Number(m[3]), month, Number(m[2]));
    return ms === null ? null : isoString(ms);
  }

  m = DAY_FIRST_RE.exec(text);
  if (m) {
    const month = monthNumber(m[2]);
    if (month === null) return null;
    const ms = buildUtc(Number(m[3]), month, Number(m[1]));
    return ms === null ? null : isoString(ms);
  }

  m = SLASH_RE.exec(text);
  if (m) {
    const ms = buildUtc(Number(m[3]), Number(m[1]), Number(m[2]));
    return ms === null ? null : isoString(ms);
  }

  return null;
}
