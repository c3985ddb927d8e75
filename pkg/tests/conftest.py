import random

import pytest

from ncsh.primitives.rsa import LEVEL_BITS, SecurityLevel, keypair_from_primes, rsa_keygen

_KEYS = {}


def keypair(level, which=0):
    """Session-cached key pairs; keygen at L3 takes a couple of seconds."""
    level = SecurityLevel(level)
    if (level, which) not in _KEYS:
        rng = random.Random(f"{level.value}/{which}")
        _KEYS[level, which] = rsa_keygen(LEVEL_BITS[level], rng)
    return _KEYS[level, which]


@pytest.fixture(scope="session")
def keys():
    return keypair


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def l1_pair():
    return keypair(SecurityLevel.L1, 0), keypair(SecurityLevel.L1, 1)


@pytest.fixture(scope="session")
def demo_keys():
    """Bob n=55 and Alice n=85, the worked example's toy keys."""
    return keypair_from_primes(5, 11), keypair_from_primes(5, 17)


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            if "test_acceptance.py::" not in rep.nodeid:
                continue
            name = rep.nodeid.rsplit("::", 1)[-1]
            lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  {name}")
