from __future__ import annotations

import pytest

from fano10.exactalg.fields import GF, QQ
from fano10.grassw import build_w, project_from_node


@pytest.fixture(scope="session")
def F():
    return GF(10007)


@pytest.fixture(scope="session")
def w_qq():
    return build_w(QQ)


@pytest.fixture(scope="session")
def wo_qq(w_qq):
    return project_from_node(w_qq)


@pytest.fixture(scope="session")
def wo_p(F):
    return project_from_node(build_w(F))
