import random

import pytest

from oddlex import adjoin_bounds, make_qj, make_zj, q_chain, z_chain


def rng(label: str) -> random.Random:
    return random.Random(f"tests:{label}")


@pytest.fixture(scope="session")
def named_algebras():
    """The six chains most checks run over, plus a bounded one."""
    return {
        "Z": z_chain(),
        "Q": q_chain(),
        "Z2": make_zj(2),
        "Z3": make_zj(3),
        "Q2": make_qj(2),
        "Q3": make_qj(3),
        "Bounded(Z)": adjoin_bounds(z_chain()),
    }
