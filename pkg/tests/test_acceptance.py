"""Acceptance grid: one line per criterion, printed with -s or in the tee'd log."""

from __future__ import annotations

import time

import pytest

from cycloverify.suite import CELLS, CRITERION, SuiteConfig


@pytest.fixture(scope="module")
def cfg() -> SuiteConfig:
    return SuiteConfig.from_toml(None)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(CELLS))
def test_criterion(name: str, cfg: SuiteConfig, capsys) -> None:
    t0 = time.perf_counter()
    reports = CELLS[name](cfg)
    dt = time.perf_counter() - t0
    bad = [r.to_dict(timing=False) for r in reports if not r.passed]
    verdict = "pass" if reports and not bad else "fail"
    with capsys.disabled():
        print(f"\ncriterion {CRITERION[name]:>2} {name:<20} {len(reports) - len(bad):>4}/{len(reports):<4} "
              f"{verdict}  ({dt:.1f}s)")
    assert reports, "cell produced no checks"
    assert not bad, bad[:3]
