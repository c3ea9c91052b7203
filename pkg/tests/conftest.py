"""Shared test helpers: seeded random generators and an independent
product oracle that reorders operator words one adjacent swap at a time."""

import random
from fractions import Fraction

import pytest

from quadladder.weyl import (
    BasisIndex,
    ComplexRational,
    Monomial,
    WeylPolynomial,
    dagger,
)

SEED = 20260814

MINUS_I = ComplexRational(0, -1)


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_fraction(rng, max_num=6, max_den=4, allow_zero=True):
    num = rng.randint(-max_num, max_num)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-max_num, max_num)
    return Fraction(num, rng.randint(1, max_den))


def random_crat(rng, max_num=6, max_den=4, allow_zero=True):
    value = ComplexRational(random_fraction(rng, max_num, max_den),
                            random_fraction(rng, max_num, max_den))
    if not allow_zero:
        while not value:
            value = ComplexRational(random_fraction(rng, max_num, max_den),
                                    random_fraction(rng, max_num, max_den))
    return value


def random_monomial(rng, num_modes, max_degree=3):
    exps = [0] * (2 * num_modes)
    for _ in range(rng.randint(0, max_degree)):
        exps[rng.randrange(2 * num_modes)] += 1
    return Monomial(exps)


def random_polynomial(rng, num_modes, max_terms=4, max_degree=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_monomial(rng, num_modes, max_degree)] = random_crat(rng)
    return WeylPolynomial(num_modes, terms)


def random_hermitian_quadratic(rng, num_modes):
    """g + dagger(g) + real constant, with g built from degree-2 monomials.

    Retries until the quadratic part survives the symmetrization, so callers
    get a genuinely quadratic Hermitian operator.
    """
    while True:
        terms = {}
        for _ in range(rng.randint(1, 2 * num_modes)):
            exps = [0] * (2 * num_modes)
            for _ in range(2):
                exps[rng.randrange(2 * num_modes)] += 1
            terms[Monomial(exps)] = random_crat(rng)
        g = WeylPolynomial(num_modes, terms)
        h = g + dagger(g) + WeylPolynomial.constant(random_fraction(rng), num_modes)
        if h.degree == 2:
            return h


def _order_word(word, coeff, acc):
    """Normal order one word by adjacent swaps; p x -> x p - i per mode."""
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a.sort_key > b.sort_key:
            swapped = word[:i] + (b, a) + word[i + 2:]
            if a.kind == "p" and b.kind == "x" and a.mode == b.mode:
                _order_word(swapped, coeff, acc)
                _order_word(word[:i] + word[i + 2:], coeff * MINUS_I, acc)
            else:
                _order_word(swapped, coeff, acc)
            return
    acc[word] = acc.get(word, ComplexRational(0)) + coeff


def _word_to_monomial(word, num_modes):
    exps = [0] * (2 * num_modes)
    for idx in word:
        exps[idx.flat(num_modes)] += 1
    return Monomial(exps)


def naive_multiply(a, b):
    """Product oracle: expand to generator words, reorder swap by swap."""
    num_modes = a.num_modes
    acc = {}
    for mono_a, coeff_a in a.terms.items():
        for mono_b, coeff_b in b.terms.items():
            word = tuple(mono_a.factors()) + tuple(mono_b.factors())
            _order_word(word, coeff_a * coeff_b, acc)
    terms = {}
    for word, coeff in acc.items():
        mono = _word_to_monomial(word, num_modes)
        terms[mono] = terms.get(mono, ComplexRational(0)) + coeff
    return WeylPolynomial(num_modes, terms)
