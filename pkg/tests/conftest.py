from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from modcat.cyclotomic import CycNumber

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 20, 24]


@st.composite
def cyc_numbers(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    den = draw(st.integers(1, 4))
    return CycNumber.from_powers(n, dict(enumerate(coeffs)), den)
