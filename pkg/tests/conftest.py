from math import gcd

import pytest

from facequotient import gen_lens, gen_platonic_space, gen_trivial_sphere

LENS_PARAMS = [(q, p) for q in range(2, 13) for p in range(1, q) if gcd(q, p) == 1]


def gallery():
    """Every deterministic gallery scheme, keyed by a readable id."""
    out = {f"lens-{q}-{p}": gen_lens(q, p) for q, p in LENS_PARAMS}
    out.update({f"sphere-{n}": gen_trivial_sphere(n) for n in range(1, 7)})
    out["quaternion"] = gen_platonic_space("quaternion")
    out["poincare"] = gen_platonic_space("poincare")
    return out


GALLERY = gallery()


@pytest.fixture(params=sorted(GALLERY), ids=str)
def gallery_scheme(request):
    return GALLERY[request.param]
