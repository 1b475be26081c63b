from __future__ import annotations

import os
import pathlib
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from frobgpd.algebra import MulCandidate, as_frobenius, as_hstar  # noqa: E402
from frobgpd.structures import Groupoid, Semigroupoid, cyclic_group, discrete_groupoid, pair_groupoid  # noqa: E402

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

Z2_TRIPLES = [("e", "e", "e"), ("e", "g", "g"), ("g", "e", "g"), ("g", "g", "e")]


def z2() -> MulCandidate:
    return MulCandidate.from_triples("eg", Z2_TRIPLES)


def diag(atoms="ab") -> MulCandidate:
    return MulCandidate.from_triples(atoms, [(x, x, x) for x in atoms])


def left_zero() -> MulCandidate:
    return MulCandidate.from_triples("ab", [(x, y, x) for x in "ab" for y in "ab"])


def left_zero_semigroupoid() -> Semigroupoid:
    return Semigroupoid.one_object("ab", {(x, y): x for x in "ab" for y in "ab"})


def z2_frob():
    return as_frobenius(z2())


def z2_hstar():
    return as_hstar(z2())


def z3_frob():
    A = ["e", "g", "h"]
    return as_frobenius(MulCandidate.from_triples(A, [(A[i], A[j], A[(i + j) % 3]) for i in range(3) for j in range(3)]))


def random_groupoid(rng: random.Random, max_morphisms: int = 6) -> Groupoid:
    """A disjoint union of connected groupoids (cyclic vertex group times a pair groupoid)."""
    while True:
        parts = []
        budget = rng.randint(1, max_morphisms)
        used = 0
        while used < budget:
            k = rng.choice([1, 1, 2])
            order = rng.randint(1, 3)
            if used + k * k * order > budget:
                if used:
                    break
                continue
            parts.append((k, order))
            used += k * k * order
        if parts:
            break
    objects, mors, src, tgt, comp, ident, inv = [], [], {}, {}, {}, {}, {}
    for p, (k, order) in enumerate(parts):
        obs = [f"o{p}_{i}" for i in range(k)]
        objects += obs
        for i in range(k):
            ident[obs[i]] = f"m{p}_{i}{i}_0"
        for i in range(k):
            for j in range(k):
                for a in range(order):
                    f = f"m{p}_{i}{j}_{a}"
                    mors.append(f)
                    src[f], tgt[f] = obs[i], obs[j]
                    inv[f] = f"m{p}_{j}{i}_{(-a) % order}"
                    for l in range(k):
                        for b in range(order):
                            comp[(f"m{p}_{j}{l}_{b}", f)] = f"m{p}_{i}{l}_{(a + b) % order}"
    g = Groupoid(Semigroupoid(objects, mors, src, tgt, comp), ident, inv)
    names = [f"f{i}" for i in range(len(mors))]
    rng.shuffle(names)
    return g.relabel(morphisms=dict(zip(sorted(mors), names)))


def random_relation(rng: random.Random, n: int, density: float | None = None) -> MulCandidate:
    atoms = "abcd"[:n]
    p = rng.random() if density is None else density
    return MulCandidate.from_triples(atoms, [(x, y, z) for x in atoms for y in atoms for z in atoms
                                             if rng.random() < p])


def random_partial_table(rng: random.Random, n: int) -> MulCandidate:
    atoms = "abcd"[:n]
    return MulCandidate.from_triples(atoms, [(x, y, rng.choice(atoms)) for x in atoms for y in atoms
                                             if rng.random() < 0.7])


@pytest.fixture
def rng():
    return random.Random(20241015)


__all__ = ["FIXTURES", "cyclic_group", "diag", "discrete_groupoid", "left_zero", "left_zero_semigroupoid",
           "pair_groupoid", "random_groupoid", "random_partial_table", "random_relation", "z2", "z2_frob",
           "z2_hstar", "z3_frob"]


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
