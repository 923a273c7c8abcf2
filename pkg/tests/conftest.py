import sys

import pytest

from atc.parsing import parse_theory


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        sys.stderr.write(f"ACCEPTANCE {status}: {name}\n")

COFFEE = """\
theory coffee
atoms token, coffee, hot
actions buy

# statics
static coffee -> hot

# effects of buying
effect ~coffee => [buy] coffee
effect token => [buy] ~token
effect ~token => [buy] false
effect coffee => [buy] coffee
effect hot => [buy] hot

exec token => <buy>
"""

# the same scenario with the executability wrongly unconditioned (implicit
# static law: token)
COFFEE_BROKEN = """\
theory coffee_broken
atoms token, coffee, hot
actions buy

static coffee -> hot
effect ~coffee => [buy] coffee
effect token => [buy] ~token
effect ~token => [buy] false
effect coffee => [buy] coffee
effect hot => [buy] hot
exec true => <buy>
"""

# the initial theory of the revision walkthrough (no token -> [buy] ~token yet)
COFFEE_INITIAL = """\
theory coffee_initial
atoms token, coffee, hot
actions buy

static coffee -> hot
effect ~coffee => [buy] coffee
effect ~token => [buy] false
effect coffee => [buy] coffee
effect hot => [buy] hot
exec token => <buy>
"""


@pytest.fixture(scope="session")
def coffee():
    return parse_theory(COFFEE)


@pytest.fixture(scope="session")
def coffee_broken():
    return parse_theory(COFFEE_BROKEN)


@pytest.fixture(scope="session")
def coffee_initial():
    return parse_theory(COFFEE_INITIAL)
