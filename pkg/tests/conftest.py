import pytest
from hypothesis import settings

from snelling import generators as g

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def labeled_fixtures():
    """Name -> (poset, snelling) for every labelled family member used across the suite."""
    out = {f"B{n}": g.gen_boolean(n) for n in (1, 2, 3, 4)}
    out.update({f"Pi{n}": g.gen_partition_lattice(n) for n in (3, 4)})
    out.update({f"NC{n}": g.gen_noncrossing(n) for n in (3, 4)})
    out["J2413"] = g.gen_j_of_perm((2, 4, 1, 3))
    out["J3142"] = g.gen_j_of_perm((3, 1, 4, 2))
    out["chain3"] = g.gen_chain(3)
    out["B4-minus-edge"] = g.fixture_b4_minus_edge()
    return out


LABELED = labeled_fixtures()


@pytest.fixture(params=sorted(LABELED))
def labeled(request):
    P, lab = LABELED[request.param]
    return request.param, P, lab
