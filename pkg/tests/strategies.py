from __future__ import annotations

from hypothesis import strategies as st

from cyclocolour.core import CLASS_NUMBER_ONE, CycloElem, build_field

fields = st.sampled_from(CLASS_NUMBER_ONE).map(build_field)


def elements(fld, lo: int = -5, hi: int = 5):
    return st.lists(
        st.integers(lo, hi), min_size=fld.euler_phi, max_size=fld.euler_phi
    ).map(lambda cs: CycloElem(tuple(cs), fld))


def nonzero_elements(fld, lo: int = -5, hi: int = 5):
    return elements(fld, lo, hi).filter(lambda a: not a.is_zero())


_POOLS: dict[int, list] = {}


def small_norm_pool(fld, cache, max_norm: int = 10**4, per_field: int = 40) -> list:
    """Generators of the first few nontrivial ideals of norm <= max_norm, from the atlas."""
    from cyclocolour.series import dirichlet_coefficients
    from cyclocolour.symmetry import enumerate_colourings

    if fld.n not in _POOLS:
        pool = []
        for ell, _ in dirichlet_coefficients(fld, max_norm, "full").terms()[1:]:
            pool += [e.generator for e in enumerate_colourings(fld, ell, cache).entries]
            if len(pool) >= per_field:
                break
        _POOLS[fld.n] = pool
    return _POOLS[fld.n]


def units(fld):
    """Random units of the form +-xi^k."""
    from cyclocolour.core import root_power

    return st.tuples(st.integers(0, fld.n - 1), st.sampled_from((1, -1))).map(
        lambda t: root_power(fld, t[0]) * t[1]
    )
