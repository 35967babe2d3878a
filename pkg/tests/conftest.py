import contextlib
import time

import pytest

from walshcode.galois import field_new


@pytest.fixture(scope="session")
def gf4():
    return field_new(2, 1, 2)


@pytest.fixture(scope="session")
def gf8():
    return field_new(2, 1, 3)


@pytest.fixture(scope="session")
def gf16():
    return field_new(2, 1, 4)


@pytest.fixture(scope="session")
def gf32():
    return field_new(2, 1, 5)


@pytest.fixture(scope="session")
def gf27():
    return field_new(3, 1, 3)


@contextlib.contextmanager
def criterion(num, desc):
    """Wrap one acceptance criterion; prints a single pass/fail line."""
    t0 = time.time()
    try:
        yield
    except BaseException:
        print(f"[acceptance] criterion {num}: FAIL ({time.time() - t0:.2f}s) {desc}")
        raise
    print(f"[acceptance] criterion {num}: PASS ({time.time() - t0:.2f}s) {desc}")
