import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import legendre_symbol
from padicforms.arith import Padic
from padicforms.characters import DirichletCharacter, RootOfUnity
from padicforms.errors import DomainError, NotInGroundFieldError, PrecisionError
from padicforms.newton import lower_hull, newton_polygon


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 23])
def test_legendre_matches_euler_criterion(p):
    chi = DirichletCharacter.legendre(p)
    for a in range(p):
        v = chi(a)
        assert (0 if v is None else v.as_int()) == legendre_symbol(a, p)


def test_quadratic_mod_five_at_two():
    assert DirichletCharacter.legendre(5)(2).as_int() == -1


@pytest.mark.parametrize("modulus", [5, 8, 12, 15, 16, 21, 40])
def test_characters_are_multiplicative(modulus):
    chis = [DirichletCharacter(modulus, [Fraction(1, o) for _, o in DirichletCharacter(modulus).generators])]
    chis.append(DirichletCharacter.trivial(modulus))
    for chi in chis:
        for a in range(modulus):
            for b in range(modulus):
                va, vb, vab = chi(a), chi(b), chi(a * b)
                if math.gcd(a * b, modulus) != 1:
                    assert vab is None
                else:
                    assert vab == va * vb


def test_conductor():
    assert DirichletCharacter.trivial(12).conductor == 1
    # the character mod 12 that only sees -1 mod 4
    gens = DirichletCharacter(12).generators
    images = [Fraction(1, 2) if g % 4 == 3 and g % 3 == 1 else 0 for g, _ in gens]
    chi = DirichletCharacter(12, images)
    assert chi.conductor == 4 and not chi.is_primitive()
    assert DirichletCharacter.legendre(7).is_primitive()
    assert 12 % chi.conductor == 0


def test_full_conductor_predicate():
    chi = DirichletCharacter.legendre(5)
    assert chi.has_full_conductor(1, 5)
    assert not DirichletCharacter.trivial(5).has_full_conductor(1, 5)


def test_character_json_round_trip():
    chi = DirichletCharacter(15, [Fraction(1, 2), Fraction(1, 4)])
    assert DirichletCharacter.from_json(chi.to_json()) == chi


def test_bad_images_rejected():
    with pytest.raises(DomainError):
        DirichletCharacter(5, [Fraction(1, 3)])
    with pytest.raises(DomainError):
        DirichletCharacter(5, [0, 0])


def test_root_of_unity_embeddings():
    i = RootOfUnity(Fraction(1, 4))
    assert abs(i.to_complex() - 1j) < 1e-15
    assert (i * i).as_int() == -1
    w = i.to_padic(5, 10)
    assert w * w == -1
    with pytest.raises(NotInGroundFieldError):
        i.to_padic(7, 10)
    assert RootOfUnity.sign(-1).to_padic(2, 8) == -1


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)]))
def test_multiplicativity_on_random_units(a, b, phase):
    chi = DirichletCharacter(35, [Fraction(1, 4), phase])
    if math.gcd(a * b, 35) == 1:
        assert chi(a * b) == chi(a) * chi(b)
        assert abs(chi.value_complex(a) * chi.value_complex(b) - chi.value_complex(a * b)) < 1e-12


def test_parity():
    assert DirichletCharacter.legendre(7).parity() == legendre_symbol(-1, 7) == -1
    assert DirichletCharacter.legendre(5).parity() == 1


def test_lower_hull():
    pts = [(0, 0), (1, 3), (2, 11), (1, 5)]
    assert lower_hull(pts) == [(0, 0), (1, 3), (2, 11)]


def test_newton_slopes_of_delta_hecke_polynomial():
    poly = newton_polygon([1, 24, 2048], 2)
    assert poly.slope_multiset() == [3, 8]
    assert poly.degree == 2
    assert "slope 3" in poly.render_text()


def test_newton_collinear_and_rational_slopes():
    poly = newton_polygon([1, 0, 0, 8], 2)
    assert poly.slopes == ((Fraction(1), 3),)
    poly = newton_polygon([1, 0, 2], 2)
    assert poly.slope_multiset() == [Fraction(1, 2), Fraction(1, 2)]


@given(st.lists(st.integers(1, 40), min_size=1, max_size=6))
def test_slopes_recover_root_valuations(exps):
    p = 3
    coeffs = [1]
    for e in exps:
        # multiply by (1 - p^e X)
        coeffs = [a - p**e * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    assert newton_polygon(coeffs, p).slope_multiset() == sorted(exps)


def test_newton_precision_handling():
    fuzzy = [Padic(1, 2, 10), Padic.zero(2, 2), Padic(2**10, 2, 10)]
    with pytest.raises(PrecisionError):
        newton_polygon(fuzzy, 2)
    ok = [Padic(1, 2, 10), Padic.zero(2, 9), Padic(2**10, 2, 10)]
    assert newton_polygon(ok, 2).slope_multiset() == [5, 5]
    with pytest.raises(DomainError):
        newton_polygon([1, 0, 0], 2)
