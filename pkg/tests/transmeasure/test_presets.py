import pytest
import sympy

from transmeasure.errors import InvalidInputError
from transmeasure.interdet import derive_params
from transmeasure.presets import random_parameter_packs, substitution


def test_thm2_substitution() -> None:
    sub = substitution("thm2", d=1, L=10)

    assert sub.D == 2
    assert sub.logA == sympy.Rational(1, 2)
    assert sub.E == sympy.exp(2)
    assert sub.theta == sympy.pi * sympy.I
    assert sub.h_xi == sympy.log(10)
    assert sub.describe()["preset"] == "thm2"


def test_thm4_substitution_depends_on_the_length() -> None:
    sub = substitution("thm4", d=1, L=3)

    assert sub.logA == 1 + sympy.log(3)
    assert sub.logB == 0
    assert sub.E == sympy.E * (1 + sympy.log(3))


def test_explicit_height_overrides_the_length_bound() -> None:
    sub = substitution("thm3", d=2, L=10, h_xi="1/3")

    assert sub.h_xi == sympy.Rational(1, 3)
    assert sub.logB == sympy.Rational(1, 3)


def test_thm5_uses_the_smallest_admissible_log_a() -> None:
    sub = substitution("thm5", d=1, L=10, abs_beta="1/2", h_alpha=2)

    assert sub.E == sympy.E
    assert sub.logA == 2
    assert sub.describe()["abs_beta"] == "1/2"


def test_substitution_rejects_bad_inputs() -> None:
    with pytest.raises(InvalidInputError):
        substitution("thm9")
    with pytest.raises(InvalidInputError):
        substitution("thm2", d=1, L=2)
    with pytest.raises(InvalidInputError):
        substitution("thm2", d=0)


def test_random_parameter_packs_are_seeded_and_admissible() -> None:
    packs = random_parameter_packs(count=4, seed=5)

    assert packs == random_parameter_packs(count=4, seed=5)
    assert packs[2].theta.is_imaginary
    for pack in packs:
        assert derive_params(**pack.params()).passed
