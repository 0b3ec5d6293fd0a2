"""Shared builders and fixtures for the test suite."""

import pytest

from normprop import FiniteGroup, from_generators, parse_cycles


def metacyclic_table(m, n, r, s):
    """Cayley table of <a, b | a^m = 1, b^n = a^s, a^b = a^r>.

    Elements are encoded as b^j * a^i at index j*m + i.
    """
    size = m * n
    rpow = [1 % m]
    for _ in range(n):
        rpow.append((rpow[-1] * r) % m)
    table = [[0] * size for _ in range(size)]
    for j1 in range(n):
        for i1 in range(m):
            row = table[j1 * m + i1]
            for j2 in range(n):
                for i2 in range(m):
                    jj = j1 + j2
                    ii = (i1 * rpow[j2] + i2) % m
                    if jj >= n:
                        jj -= n
                        ii = (ii + s) % m
                    row[j2 * m + i2] = jj * m + ii
    return table


def build_s3():
    return from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)")])


def build_c6():
    return from_generators([parse_cycles("(0 1 2 3 4 5)")])


def build_cn(n):
    return from_generators([parse_cycles("(" + " ".join(str(i) for i in range(n)) + ")")])


def build_q8():
    return FiniteGroup(metacyclic_table(4, 2, 3, 2))


def build_d4():
    return FiniteGroup(metacyclic_table(4, 2, 3, 0))


def build_dihedral(n):
    """Dihedral group of order 2n."""
    return FiniteGroup(metacyclic_table(n, 2, n - 1 if n > 1 else 0, 0))


def build_a4():
    return from_generators([parse_cycles("(0 1 2)"), parse_cycles("(0 1)(2 3)")])


def build_s4():
    return from_generators([parse_cycles("(0 1 2 3)"), parse_cycles("(0 1)")])


def build_sl23():
    """SL(2,3) acting on the eight nonzero vectors of F3 x F3."""
    from normprop import Permutation

    vectors = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    idx = {v: i for i, v in enumerate(vectors)}

    def perm_of(a, b, c, d):
        images = []
        for x, y in vectors:
            images.append(idx[((x * a + y * c) % 3, (x * b + y * d) % 3)])
        return Permutation(tuple(images))

    return from_generators([perm_of(1, 1, 0, 1), perm_of(0, 1, 2, 0)])


@pytest.fixture(scope="session")
def s3():
    return build_s3()


@pytest.fixture(scope="session")
def q8():
    return build_q8()
