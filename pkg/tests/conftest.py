from functools import lru_cache

import pytest

from bilinperm.field import FieldCtx


@lru_cache(maxsize=None)
def field(N, m=None):
    return FieldCtx(N, m=m)


@pytest.fixture
def gf8():
    return field(3, 1)


@pytest.fixture
def gf64():
    return field(6, 2)


@pytest.fixture
def omega(gf64):
    """A generator of F_4 minus F_2 inside GF(64)."""
    return next(a for a in gf64.subfield_elements() if a > 1)
