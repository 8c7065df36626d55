import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from prufer_amalgam.amalgam import make_duplication  # noqa: E402
from prufer_amalgam.ideals import all_ideals  # noqa: E402
from prufer_amalgam.rings import (  # noqa: E402
    canonical_hom,
    make_product,
    make_trivial_extension,
    make_zmod,
    module_via_hom,
)

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@st.composite
def small_rings(draw, max_order=24):
    """Rings from every constructor, kept small enough for loop oracles."""
    kind = draw(st.sampled_from(["zmod", "product", "duplication", "trivial"]))
    if kind == "zmod":
        return make_zmod(draw(st.integers(2, max_order)))
    if kind == "product":
        m = draw(st.integers(2, min(6, max_order // 2)))
        n = draw(st.integers(2, max_order // m))
        return make_product(make_zmod(m), make_zmod(n))
    if kind == "duplication":
        n = draw(st.integers(2, min(8, max_order)))
        R = make_zmod(n)
        proper = [I for I in all_ideals(R) if not I.is_unit_ideal() and n * len(I) <= max_order]
        return make_duplication(R, draw(st.sampled_from(proper))).ring
    n = draw(st.sampled_from([2, 3, 4, 6, 8]))
    divisors = [m for m in range(2, n + 1) if n % m == 0 and n * m <= max_order]
    if not divisors:
        return make_zmod(n)
    A = make_zmod(n)
    m = draw(st.sampled_from(divisors))
    return make_trivial_extension(A, module_via_hom(canonical_hom(A, make_zmod(m))))


@pytest.fixture
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PRUFER_AMALGAM_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
