from hypothesis import settings

# exact enumeration on dense 8-vertex graphs can take a few hundred ms
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for reports in terminalreporter.stats.values()
        for rep in reports
        if getattr(rep, "when", None) == "call"
        for key, value in getattr(rep, "user_properties", ())
        if key == "acceptance"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for text in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(text)
