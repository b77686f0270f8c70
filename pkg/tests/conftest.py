import pytest

from ccsecrecy import gauss_hermite, make_bpsk, make_psk, make_qam


@pytest.fixture(scope="session")
def rule32():
    return gauss_hermite(32)


@pytest.fixture(scope="session")
def reference_constellations():
    """The four constellation families every curve in the suite exercises."""
    return [make_bpsk(), make_qam(4), make_psk(8), make_qam(16)]
