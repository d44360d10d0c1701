"""Acceptance gate: one test per top-level criterion, G1-G8 and P1-P5.

Every criterion is exercised through the public `verify` suites (the same
code path as `richardson verify`), so a green run here certifies the
command line entry point as well.  Each test asserts that every check
whose name carries the criterion's prefix passed.
"""

import pytest

from richardson import verify

CRITERIA = {
    "G1": ("G1-",),
    "G2": ("G2-",),
    "G3": ("G3-",),
    "G4": ("G4-",),
    "G5": ("G5-",),
    "G6": ("G6-",),
    "G7": ("G7-",),
    "G8": ("G8-",),
    "P1": ("P1-",),
    "P2": ("P2-",),
    "P3": ("P3-",),
    "P4": ("P4-",),
    "P5": ("P5-",),
}


@pytest.fixture(scope="module")
def all_checks():
    results = []
    for name in verify.SUITE_NAMES:
        results.extend(verify.run_suite(name, seed_rng=0))
    return results


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, all_checks):
    prefixes = CRITERIA[criterion]
    matching = [r for r in all_checks
                if any(r.name.startswith(p) for p in prefixes)]
    assert matching, "no checks ran for %s" % criterion
    failed = [r for r in matching if not r.passed]
    assert not failed, "\n".join(r.line() for r in failed)


def test_every_check_belongs_to_a_criterion(all_checks):
    prefixes = tuple(p for ps in CRITERIA.values() for p in ps)
    orphans = [r.name for r in all_checks
               if not any(r.name.startswith(p) for p in prefixes)]
    assert not orphans, orphans
