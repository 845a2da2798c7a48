"""Shared record of acceptance verdicts, printed by the conftest summary hook."""

RESULTS = {}


def record(number, title, checks):
    """Store ``[(label, ok, detail)]`` for a criterion and return overall success."""
    ok = all(c[1] for c in checks)
    failed = [f"{label}: {detail}" for label, good, detail in checks if not good]
    RESULTS[number] = (title, ok, failed)
    return ok


def lines():
    out = []
    for number in sorted(RESULTS):
        title, ok, failed = RESULTS[number]
        out.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
        out.extend(f"         {x}" for x in failed)
    return out
