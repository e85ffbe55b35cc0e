import pytest

from pircodes.designs import exact_packing
from pircodes.gf2 import BitMatrix
from pircodes.hamming import build_hamming
from pircodes.recovery import LinearEncoder


@pytest.fixture(scope="session")
def k2_encoder() -> LinearEncoder:
    """The running 5-bit example: G = (I_2 | P) with P rows 110, 101."""
    return LinearEncoder(BitMatrix.from_strings(["10110", "01101"]))


@pytest.fixture(scope="session")
def hamming3():
    return build_hamming(3)


@pytest.fixture(scope="session")
def hamming3_encoder(hamming3) -> LinearEncoder:
    return LinearEncoder(hamming3.generator)


@pytest.fixture(scope="session")
def hamming3_code(hamming3):
    return hamming3.code()


@pytest.fixture(scope="session")
def packing_12_4():
    res = exact_packing(12, 4, 9)
    assert res.status == "found"
    return res.design


@pytest.fixture(scope="session")
def packing_15_4():
    res = exact_packing(15, 4, 15)
    assert res.status == "found"
    return res.design
