from __future__ import annotations

import pytest

from padicdyn.number import Qp


@pytest.fixture(scope="session")
def Q2():
    return Qp(2)


@pytest.fixture(scope="session")
def Q3():
    return Qp(3)


@pytest.fixture(scope="session")
def Q5():
    return Qp(5)


@pytest.fixture(scope="session")
def Q7():
    return Qp(7)
