import functools

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def criterion(number: int, title: str):
    """Record the outcome of an acceptance criterion for the end-of-run summary."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs) or ""
            except AssertionError as exc:
                ACCEPTANCE_RESULTS[number] = (title, False, str(exc).splitlines()[0] if str(exc) else "")
                print(f"criterion {number:2d} FAIL  {title}")
                raise
            ACCEPTANCE_RESULTS[number] = (title, True, detail)
            print(f"criterion {number:2d} PASS  {title}")

        return run

    return wrap


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(f"{line}  [{detail}]" if detail else line)
