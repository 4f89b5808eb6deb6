import pytest

from liederive.algebra import classify, derived_algebra, validate
from liederive.builders import (
    BuilderError, FAMILIES, almost_abelian, build, filiform_integral, heisenberg,
    heisenberg_integral, sl2, sl2_module_extension, sl2_quadratic, standard_filiform,
)
from liederive.fields import GF, QQ
from liederive.structure import semisimple_components


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_every_family_validates(family):
    for n in range(2, 6):
        for F in (QQ, GF(3), GF(5)):
            try:
                L = build(family, n, F)
            except BuilderError:
                continue
            assert validate(L), (family, n, F)


def test_dimensions():
    assert heisenberg(3).dim == 7
    assert standard_filiform(6).dim == 6
    assert filiform_integral(5).dim == 6
    assert heisenberg_integral(2).dim == 6
    assert sl2_module_extension(3).dim == 7
    assert sl2_quadratic(-1).dim == 6


def test_integral_families_have_expected_derived_algebra():
    H = filiform_integral(5)
    assert derived_algebra(H) == H.span([H.unit(i) for i in range(1, 6)])
    G = heisenberg_integral(2)
    assert derived_algebra(G).dim == 5


def test_parameter_errors():
    with pytest.raises(BuilderError):
        heisenberg(0)
    with pytest.raises(BuilderError):
        almost_abelian(1)
    with pytest.raises(BuilderError):
        filiform_integral(4, GF(5))
    with pytest.raises(BuilderError):
        heisenberg_integral(1, GF(2))
    with pytest.raises(BuilderError):
        build("no-such-family", 3)


def test_quadratic_twist_simplicity():
    assert len(semisimple_components(sl2_quadratic(-1))) == 1
    assert len(semisimple_components(sl2_quadratic(4))) == 2
    assert classify(sl2()).is_perfect
