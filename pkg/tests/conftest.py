import pytest

from dkl.coxgroup import CoxeterSystem, canonical_word, compose, from_word

import oracles

ACCEPTANCE = []


@pytest.fixture(scope="session")
def D4():
    return CoxeterSystem("D", 4)


@pytest.fixture(scope="session")
def D5():
    return CoxeterSystem("D", 5)


@pytest.fixture(scope="session")
def D6():
    return CoxeterSystem("D", 6)


@pytest.fixture(scope="session")
def D4_elements(D4):
    return list(D4.elements())


@pytest.fixture(scope="session")
def D4_lengths(D4):
    return oracles.bfs_lengths(D4)


@pytest.fixture(scope="session")
def D4_lower_sets(D4, D4_elements):
    """Bruhat lower sets from subwords of one reduced word."""
    return {w: oracles.subword_lower_set(D4, canonical_word(w)) for w in D4_elements}


@pytest.fixture(scope="session")
def D4_kl_oracle(D4, D4_elements, D4_lengths, D4_lower_sets):
    lower = D4_lower_sets
    gens = {s: from_word(D4, [s]) for s in D4.generators}

    def left_mul(x, s):
        return compose(gens[s], x)

    def left_des(x):
        return {s for s in D4.generators
                if D4_lengths[left_mul(x, s).window] < D4_lengths[x.window]}

    return oracles.kl_by_r_polynomials(
        D4_elements, lambda x, w: x.window in lower[w],
        lambda w: D4_lengths[w.window], left_mul, left_des)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num, desc, ok in sorted(ACCEPTANCE, key=lambda r: (r[0], r[1])):
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
