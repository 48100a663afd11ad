from __future__ import annotations

import pytest

from hypertype.cases import max_degree, validate
from hypertype.verify import DEFAULT_GRID

# additional specs: non-integer parameters and larger finite ranges
EXTRA = (
    ("s2-1", -8, 9),
    ("s2+1", -11, 2),
    ("1-s2", -2.5, 1.3),
    ("s", -1.7, 0.6),
    ("1", -0.7, 1.3),
    ("s2", -4, 1),
)

ALL_PARAMS = DEFAULT_GRID + EXTRA
INFINITE_PARAMS = tuple(p for p in ALL_PARAMS if p[0] in ("1", "s", "1-s2"))
FINITE_PARAMS = tuple(p for p in ALL_PARAMS if p[0] not in ("1", "s", "1-s2"))


def _ids(params):
    return [f"{k}:{a}:{b}" for k, a, b in params]


def lmax(spec, cap):
    L = max_degree(spec)
    return cap if L is None else min(cap, L)


@pytest.fixture(params=DEFAULT_GRID, ids=_ids(DEFAULT_GRID))
def grid_spec(request):
    return validate(*request.param)


@pytest.fixture(params=ALL_PARAMS, ids=_ids(ALL_PARAMS))
def spec(request):
    return validate(*request.param)


@pytest.fixture(params=ALL_PARAMS, ids=_ids(ALL_PARAMS))
def exact_spec(request):
    return validate(*request.param, exact=True)


@pytest.fixture(params=INFINITE_PARAMS, ids=_ids(INFINITE_PARAMS))
def infinite_spec(request):
    return validate(*request.param)


@pytest.fixture(params=FINITE_PARAMS, ids=_ids(FINITE_PARAMS))
def finite_spec(request):
    return validate(*request.param)


@pytest.fixture(params=INFINITE_PARAMS, ids=_ids(INFINITE_PARAMS))
def exact_infinite_spec(request):
    return validate(*request.param, exact=True)


# acceptance-criterion outcomes, printed once at the end of the run
ACCEPTANCE: list[str] = []


def record(criterion: int, name: str, passed: bool, detail: str) -> None:
    line = f"criterion {criterion} {name}: {'PASS' if passed else 'FAIL'} ({detail})"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
