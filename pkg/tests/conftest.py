import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from yukawa_nu.bench_tables import TableId, generate_table  # noqa: E402


@pytest.fixture(scope="session")
def generated_tables():
    """All three benchmark tables at default solver settings, computed once."""
    return {tid: generate_table(tid) for tid in TableId}
