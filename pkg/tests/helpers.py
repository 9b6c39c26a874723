"""Shared test utilities."""

import random

from modinv.polyring import Polynomial, var_index


def mono(m, **exps):
    """Exponent tuple from keyword names like x1=2, y3=1."""
    e = [0] * (2 * m)
    for name, v in exps.items():
        kind, block = name[0], int(name[1:])
        e[var_index(block, kind)] = v
    return tuple(e)


def poly(m, p, *terms):
    """Polynomial from (coeff, exponent-dict) pairs."""
    out = {}
    for coeff, exps in terms:
        out[mono(m, **exps)] = coeff
    return Polynomial(m, p, out)


def random_multihomogeneous(rng: random.Random, m, p, lam, density=0.5):
    """Random polynomial supported on the multidegree-lam component."""
    from modinv.polyring import component_basis

    terms = {}
    for mo in component_basis(m, lam):
        if rng.random() < density:
            c = rng.randrange(0, p)
            if c:
                terms[mo] = c
    return Polynomial(m, p, terms)
