from __future__ import annotations

import pytest

from hermtheta.reproduce import Context


@pytest.fixture(scope="session")
def ctx() -> Context:
    """Shared cache of the rank-12 theta series on (2, 2)."""
    return Context()


@pytest.fixture(scope="session")
def thetas(ctx):
    return {name: ctx.theta(name) for name in ("h1", "h2", "h3", "h4", "h5")}
