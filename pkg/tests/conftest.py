import numpy as np
import pytest

from frobhh.zoo import zoo_algebra


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def f2_x2():
    return zoo_algebra("f2_x2")


def naive_rank_mod_p(rows, p):
    """Textbook elimination on Python ints, kept independent of the library."""
    m = [[int(v) % p for v in row] for row in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def poly_mulmod(a, b, modulus, p):
    """Product of coefficient lists (low degree first) reduced by a monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return (prod + [0] * k)[:k]


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    """Record a line for the acceptance summary shown at the end of the run."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def log(line):
        print(line)
        lines.append(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
