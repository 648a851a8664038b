import random

import pytest

from montes.errors import DivisionByZero, NotInvertible, ReducibleModulus
from montes.ffield import (
    Field,
    equal_degree_factors,
    factor,
    is_irreducible,
    pdivmod,
    pgcd,
    pkey,
    pmul,
    ppowmod,
    psub,
    pth_root,
    squarefree_parts,
)

F2 = Field(2)
F13 = Field(13)
F8 = F2.extend([1, 1, 0, 1])  # y^3 + y + 1


def poly(K, ints):
    return [K.from_int(c) for c in ints]


def test_prime_field_arithmetic():
    assert F13.add(9, 7) == 3
    assert F13.sub(2, 5) == 10
    assert F13.mul(6, 6) == 10
    assert F13.pow(2, 12) == 1
    for a in range(1, 13):
        assert F13.mul(a, F13.inv(a)) == 1
    assert F13.pow(3, -1) == F13.inv(3)
    with pytest.raises(DivisionByZero):
        F13.inv(0)


def test_extension_basics():
    assert F8.q == 8 and F8.deg == 3 and F8.level == 1
    z = F8.gen()
    # y^3 + y + 1 is primitive, so z generates the 7 nonzero elements
    seen = set()
    w = F8.one
    for _ in range(7):
        w = F8.mul(w, z)
        seen.add(w)
    assert len(seen) == 7 and F8.one in seen
    assert F8.pow(z, 7) == F8.one
    assert F8.pow(z, 3) == F8.add(z, F8.one)


def test_extension_field_axioms_exhaustive():
    elems = list(F8.elements())
    assert len(elems) == 8
    for a in elems:
        assert F8.add(a, F8.neg(a)) == F8.zero
        if not F8.is_zero(a):
            assert F8.mul(a, F8.inv(a)) == F8.one
        for b in elems:
            assert F8.mul(a, b) == F8.mul(b, a)
            for c in elems:
                lhs = F8.mul(a, F8.add(b, c))
                rhs = F8.add(F8.mul(a, b), F8.mul(a, c))
                assert lhs == rhs


def test_degree_one_extension_wraps():
    # modulus y + 1 over F_13: the wrapper field is F_13 again, gen = -1
    W = F13.extend([1, 1])
    assert W.q == 13
    assert W.gen() == (12,)
    assert W.mul((3,), (5,)) == (2,)
    assert W.inv((2,)) == (7,)


def test_second_extension_level():
    # y^2 + y + 1 has no root in F_8, so this is F_64
    F64 = F8.extend(poly(F8, [1, 1, 1]), check=True)
    assert F64.q == 64
    z = F64.gen()
    assert F64.add(F64.add(F64.mul(z, z), z), F64.one) == F64.zero
    rng = random.Random(7)
    for _ in range(40):
        a = F64.rand(rng)
        if not F64.is_zero(a):
            assert F64.mul(a, F64.inv(a)) == F64.one
        assert F64.pow(a, 64) == a


def test_reducible_modulus_rejected():
    F4 = F2.extend([1, 1, 1], check=True)
    with pytest.raises(ReducibleModulus):
        F4.extend(poly(F4, [1, 1, 1]), check=True)
    with pytest.raises(NotInvertible):
        F13.extend([1, 1, 2], check=False)


def test_embed_and_from_int():
    assert F8.from_int(5) == (1,)
    assert F8.embed(F2.zero) == F8.zero
    c = F8.gen()
    F64 = F8.extend(poly(F8, [1, 1, 1]))
    assert F64.mul(F64.embed(c), F64.embed(F8.inv(c))) == F64.one


def test_pdivmod_roundtrip():
    rng = random.Random(3)
    for _ in range(60):
        a = [F13.rand(rng) for _ in range(rng.randint(0, 7))]
        b = [F13.rand(rng) for _ in range(rng.randint(1, 4))]
        while not b or F13.is_zero(b[-1]):
            b = [F13.rand(rng) for _ in range(rng.randint(1, 4))]
        q, r = pdivmod(F13, a, b)
        assert psub(F13, a, pmul(F13, q, b) + []) == r or (
            psub(F13, psub(F13, a, pmul(F13, q, b)), r) == []
        )
        assert len(r) < len(b)


def test_factor_strips_mod2_content():
    # x^12 + x^8 over F_2 is y^8 (y+1)^4
    f = poly(F2, [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1])
    got = factor(F2, f)
    assert got == [([0, 1], 8), ([1, 1], 4)]


def test_factor_pth_power():
    # y^4 + y^2 + 1 = (y^2 + y + 1)^2 over F_2
    assert factor(F2, poly(F2, [1, 0, 1, 0, 1])) == [([1, 1, 1], 2)]


def test_squarefree_parts_char_p():
    F3 = Field(3)
    # (y+1)^3 (y+2): exponent 3 survives a p-th root round
    f = pmul(F3, poly(F3, [1, 3, 3, 1]), poly(F3, [2, 1]))
    parts = squarefree_parts(F3, f)
    assert parts == [([2, 1], 1), ([1, 1], 3)]


def test_pth_root_inverts_frobenius():
    g = poly(F8, [3, 1, 0, 1])  # squarefree over F_8
    sq = pmul(F8, g, g)
    assert squarefree_parts(F8, sq) == [([c for c in g], 2)]
    frob = [F8.pow(c, 2) for c in g]
    composed = []
    for c in frob:
        composed.extend([c, F8.zero])
    assert pth_root(F8, composed[:-1]) == g


def test_factor_splits_cubics_char2():
    a, b = poly(F2, [1, 1, 0, 1]), poly(F2, [1, 0, 1, 1])
    got = factor(F2, pmul(F2, a, b))
    assert got == sorted([(a, 1), (b, 1)], key=lambda fm: pkey(F2, fm[0]))


def test_factor_splits_quadratics_odd_char():
    a, b = poly(F13, [11, 0, 1]), poly(F13, [7, 0, 1])  # y^2-2, y^2-6
    assert not is_irreducible(F13, pmul(F13, a, b))
    got = factor(F13, pmul(F13, a, b))
    assert got == [(b, 1), (a, 1)]  # keys compare ascending coefficient tuples


def test_factor_nonmonic_input_normalized():
    f = [F13.from_int(c) for c in [2, 0, 2]]  # 2(y^2 + 1), and -1 is square mod 13
    got = factor(F13, f)
    assert [m for _, m in got] == [1, 1]
    assert all(len(g) == 2 for g, _ in got)


def test_factor_over_extension_field():
    # y^2 + y + 1 splits over F_4 into the two conjugate linears
    F4 = F2.extend([1, 1, 1])
    z = F4.gen()
    got = factor(F4, [F4.one, F4.one, F4.one])
    roots = sorted([z, F4.mul(z, z)], key=F4.key)
    assert got == [([F4.neg(r), F4.one], 1) for r in roots]


def test_factor_deterministic_across_rngs():
    f = poly(F13, [5, 11, 0, 3, 1, 2, 1])
    runs = [factor(F13, f, random.Random(seed)) for seed in (1, 2, 31337)]
    assert runs[0] == runs[1] == runs[2]
    total = [F13.one]
    for g, m in runs[0]:
        for _ in range(m):
            total = pmul(F13, total, g)
        assert is_irreducible(F13, g)
    assert total == poly(F13, [5, 11, 0, 3, 1, 2, 1])


def test_equal_degree_factors_direct():
    rng = random.Random(5)
    irr = [g for g, _ in factor(F13, poly(F13, [11, 0, 1]))]
    assert irr == [poly(F13, [11, 0, 1])]
    prod = pmul(F13, poly(F13, [11, 0, 1]), poly(F13, [7, 0, 1]))
    got = equal_degree_factors(F13, prod, 2, rng)
    assert sorted(got, key=lambda g: pkey(F13, g)) == [
        poly(F13, [7, 0, 1]),
        poly(F13, [11, 0, 1]),
    ]


def test_is_irreducible():
    assert is_irreducible(F2, poly(F2, [1, 1, 0, 0, 1]))
    assert not is_irreducible(F2, poly(F2, [1, 0, 0, 0, 1]))
    assert is_irreducible(F13, poly(F13, [2, 1]))
    assert not is_irreducible(F13, [F13.one])
    assert is_irreducible(F8, poly(F8, [1, 1, 1]))


def test_powmod_matches_pow():
    m = poly(F13, [1, 0, 1])
    t = poly(F13, [3, 1])
    direct = [F13.one]
    for _ in range(11):
        direct = pmul(F13, direct, t)
    assert ppowmod(F13, t, 11, m) == pdivmod(F13, direct, m)[1]


def test_gcd_monic_and_common_root():
    a = pmul(F13, poly(F13, [1, 1]), poly(F13, [2, 1]))
    b = pmul(F13, poly(F13, [1, 1]), poly(F13, [5, 1]))
    assert pgcd(F13, a, b) == poly(F13, [1, 1])
