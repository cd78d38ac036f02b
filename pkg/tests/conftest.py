import pytest

import kmerctr


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so timed tests measure work, not numba."""
    m = kmerctr.KmerMultiset.from_words(["ATAC", "ATCA", "TCAT"])
    out = kmerctr.compress(m, mode="list", codec=True)
    kmerctr.codec_roundtrip(out.text)
    prev = kmerctr.set_backend("numpy")
    kmerctr.compress(m, mode="frequency", codec=True)
    kmerctr.set_backend(prev)
    yield
