from hypothesis import settings

# exact arithmetic on random inputs has a long tail; time limits live in the
# acceptance suite instead
settings.register_profile("hilbpow", deadline=None)
settings.load_profile("hilbpow")


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
