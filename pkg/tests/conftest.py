import random
from fractions import Fraction

import pytest

from liekernel import KForm, multi_indices


@pytest.fixture
def rng():
    return random.Random(20260809)


def random_form(rng, n, k, span=4):
    return KForm.from_terms(n, {
        ixs: Fraction(rng.randint(-span, span), rng.randint(1, 3))
        for ixs in multi_indices(n, k)}, k)
