"""Two-element generators (p, alpha) for the primes above p.

Each completed branch yields a fraction beta with valuation 1 at its own
prime: the pending modulus, tweaked so that its polygon of f is one-sided of
slope -1, divided by the previous modulus raised to e*f.  The branches that
split off a steeper side of the same polygon see beta with a negative
valuation given by a closed form in the two slopes; multiplying by their
already-assembled generators clears those values, and branch order makes the
product well-founded.  The last step keeps only the p-part of the
denominator, which repairs integrality away from p without moving any
valuation above p.

A squarefree but reducible f needs two escapes the irreducible case never
meets.  A modulus that divides f exactly is a zero divisor, so the quotient
is assembled on the complementary factor and glued back with the constant 1
on the dropped component.  And a branch whose own modulus divides f takes a
canonical-lift uniformizer on its component instead of a quotient, because
no denominator of smaller degree separates it from its siblings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .errors import (
    InvariantViolation,
    MissingDominatorData,
    NotInvertible,
    UnliftableTarget,
    ZeroAtTheta,
)
from .polygon import principal_sides
from .types import Type
from .zpoly import (
    IntPolynomial,
    ONE,
    content,
    pval,
    rat_divmod,
    rat_from_int,
    rat_mul,
    rat_trim,
    vpoly,
    xgcd_rat,
)


@dataclass(frozen=True)
class FieldElement:
    """num(theta)/den in Q[x]/(f): deg num < deg f, den > 0, content-reduced."""

    num: IntPolynomial
    den: int


def _make_elem(num: IntPolynomial, den: int) -> FieldElement:
    if den <= 0:
        raise InvariantViolation("element denominator must be positive")
    g = gcd(content(num), den)
    if g > 1:
        num = IntPolynomial(tuple(c // g for c in num.coeffs))
        den //= g
    return FieldElement(num, den)


def _rat_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return rat_trim(out)


def _rat_powmod(base, k: int, modulus) -> Tuple[Fraction, ...]:
    out = (Fraction(1),)
    b = rat_divmod(base, modulus)[1]
    while k:
        if k & 1:
            out = rat_divmod(rat_mul(out, b), modulus)[1]
        k >>= 1
        if k:
            b = rat_divmod(rat_mul(b, b), modulus)[1]
    return out


def elem_from_rat(coeffs: Sequence[Fraction], f: IntPolynomial) -> FieldElement:
    """Reduce a rational polynomial modulo f and clear denominators."""
    _, rem = rat_divmod(rat_trim(coeffs), rat_from_int(f))
    if not rem:
        return FieldElement(IntPolynomial(), 1)
    den = 1
    for c in rem:
        den = lcm(den, c.denominator)
    num = IntPolynomial(tuple(int(c * den) for c in rem))
    return _make_elem(num, den)


def elem_mul(a: FieldElement, b: FieldElement, f: IntPolynomial) -> FieldElement:
    num = (a.num * b.num).divmod_monic(f)[1]
    return _make_elem(num, a.den * b.den)


def elem_pow(a: FieldElement, k: int, f: IntPolynomial) -> FieldElement:
    out = FieldElement(ONE, 1)
    b = a
    while k:
        if k & 1:
            out = elem_mul(out, b, f)
        k >>= 1
        if k:
            b = elem_mul(b, b, f)
    return out


def _invert_mod(d: IntPolynomial, m: IntPolynomial) -> Tuple[Fraction, ...]:
    """s with s*d = 1 mod m, or NotInvertible when d and m share a factor."""
    g, s, _ = xgcd_rat(rat_from_int(d), rat_from_int(m))
    if len(g) != 1:
        raise NotInvertible("denominator shares a factor with the modulus")
    return rat_divmod(s, rat_from_int(m))[1]


def _contact(tipo: Type, f: IntPolynomial) -> Optional[int]:
    """H >= 1 with v(phi(theta)) = V + H, or None when phi divides f.

    The polygon of f with respect to the pending modulus of a complete
    branch is one-sided of width one and integer slope -H.
    """
    tipo.ensure_rep()
    _, cloud = tipo.newton_data(f)
    if 0 not in cloud:
        return None
    sides = principal_sides(sorted(cloud.items()))
    if len(sides) != 1 or sides[0].width != 1 or sides[0].e != 1:
        raise InvariantViolation("complete branch with a non-unit polygon of f")
    return sides[0].h


def ensure_H1(tipo: Type, f: IntPolynomial) -> IntPolynomial:
    """A representative of the branch whose polygon of f has slope -1.

    The pending modulus is returned unchanged when it already has contact 1;
    otherwise adding a canonical lift at value V+1 caps the contact from
    below, including the case where the modulus divides f exactly.
    """
    tipo.ensure_rep()
    W = tipo.order + 1
    if _contact(tipo, f) == 1:
        return tipo.phi
    _, _, V = tipo.order_data(W)
    phi_hat = tipo.phi + tipo.lift_simple(V + 1, W)
    probe = Type(
        tipo.p, tipo.F1, tipo.psi0, tipo.levels, phi_hat, 0, tipo.mult, tipo.lineage
    )
    if _contact(probe, f) != 1:
        raise InvariantViolation("tweaked representative missed contact 1")
    return phi_hat


def _glue_on_complement(
    core: Sequence[Fraction], d: IntPolynomial, g: IntPolynomial, f: IntPolynomial
) -> FieldElement:
    # element congruent to core mod g and to 1 mod d, built from s*d + t*g = 1
    one, s, t = xgcd_rat(rat_from_int(d), rat_from_int(g))
    if len(one) != 1:
        raise InvariantViolation("exact divisor of a squarefree input repeats")
    part_g = rat_mul(core, rat_mul(s, rat_from_int(d)))
    part_d = rat_mul(t, rat_from_int(g))
    return elem_from_rat(_rat_add(part_g, part_d), f)


def beta(record, f: IntPolynomial, p: int) -> FieldElement:
    """An element of valuation 1 at the record's prime and 0 at every prime
    that does not branch off a steeper side of the same polygon."""
    if record.kind == "dedekind":
        phi = record.dede_phi
        if record.dede_mult == 1:
            rem = f.divmod_monic(phi)[1]
            if not rem.is_zero and vpoly(rem, p) == 1:
                return _make_elem(phi, 1)
            return _make_elem(phi + IntPolynomial((p,)), 1)
        # v(phi(theta)) = 1 exactly on the slope -1/e side, 0 elsewhere
        return _make_elem(phi, 1)

    tipo = record.tipo
    tipo.ensure_rep()
    W = tipo.order + 1

    if record.kind == "factor":
        # the modulus is a global factor of f; uniformize its component
        # directly and glue the constant 1 on the complement
        E = tipo.e_prod
        _, _, V = tipo.order_data(W)
        pi = None
        for w in range(V + f.degree + 16):
            try:
                pi = tipo.lift_simple(1 + w * E, W)
                break
            except UnliftableTarget:
                continue
        if pi is None:
            raise InvariantViolation("no liftable uniformizer target")
        pi_rat = tuple(Fraction(c, p**w) for c in pi.coeffs)
        d = tipo.phi
        if d == f:
            return elem_from_rat(pi_rat, f)
        quo, rem = f.divmod_monic(d)
        if not rem.is_zero:
            raise InvariantViolation("factor record whose modulus does not divide f")
        # the uniformizer lives on the component of d itself
        return _glue_on_complement(pi_rat, quo, d, f)

    lvl = tipo.levels[-1]
    phi_hat = ensure_H1(tipo, f)
    k = lvl.e * lvl.f
    d = lvl.phi
    quo, rem = f.divmod_monic(d)
    if rem.is_zero:
        # zero divisor: invert on the complementary factor and glue 1 back
        s = _invert_mod(d, quo)
        core = rat_divmod(
            rat_mul(rat_from_int(phi_hat), _rat_powmod(s, k, rat_from_int(quo))),
            rat_from_int(quo),
        )[1]
        return _glue_on_complement(core, d, quo, f)
    s = _invert_mod(d, f)
    return elem_from_rat(
        rat_mul(rat_from_int(phi_hat), _rat_powmod(s, k, rat_from_int(f))), f
    )


def v_q_beta(primes: Sequence, p_idx: int, q_idx: int) -> int:
    """Valuation of beta of prime p_idx at prime q_idx; 0 unless q dominates p.

    Closed form: e_r*f_r*(e-chain of q above the shared trunk)*(lambda_q -
    lambda_r), always a negative integer in the dominating case.
    """
    rec = primes[p_idx]
    if rec.dominators is None:
        raise MissingDominatorData("run finished without dominator bookkeeping")
    lam_q = None
    for qi, slope in rec.dominators:
        if qi == q_idx:
            lam_q = slope
            break
    if lam_q is None:
        return 0
    lvl = rec.tipo.levels[-1]
    prefix = rec.tipo.e_prod // lvl.e
    val = Fraction(primes[q_idx].e * lvl.e * lvl.f, prefix) * (
        lam_q + Fraction(lvl.h, lvl.e)
    )
    if val.denominator != 1 or val >= 0:
        raise InvariantViolation("dominating slope gives a non-integral valuation")
    return int(val)


def _trim_to_p_part(elem: FieldElement, p: int) -> Tuple[FieldElement, int]:
    """alpha = G(theta)/p^k from a reduced fraction, with small G.

    Dropping the prime-to-p unit of the denominator moves no valuation above
    p, and neither does changing G by p^(k+2) times anything integral: such a
    change has value at least 2 at every prime over p, strictly above both 0
    and 1.  Coefficients are therefore folded into the symmetric range.
    """
    k = pval(elem.den, p)
    m = p ** (k + 2)
    G = IntPolynomial(tuple(((c + m // 2) % m) - m // 2 for c in elem.num.coeffs))
    return FieldElement(G, p**k), k


def compute_generators(result) -> List[FieldElement]:
    """Fill generator = (G, k) with alpha = G(theta)/p^k on every record.

    Records are processed in branch order, which puts every dominator before
    the primes it dominates; the returned list holds the trimmed elements,
    whose valuations above p form the identity grid.
    """
    f, p = result.poly, result.p
    alphas: List[Optional[FieldElement]] = [None] * len(result.primes)
    for i, rec in enumerate(result.primes):
        elem = beta(rec, f, p)
        if rec.kind == "dedekind":
            rec.tweaked_phi = elem.num
        elif rec.kind == "side":
            rec.tweaked_phi = ensure_H1(rec.tipo, f)
        if rec.dominators is None:
            raise MissingDominatorData("record carries no domination list")
        for q_idx, _ in rec.dominators:
            if alphas[q_idx] is None:
                raise MissingDominatorData("dominator assembled after its dependent")
            elem = elem_mul(
                elem, elem_pow(alphas[q_idx], -v_q_beta(result.primes, i, q_idx), f), f
            )
        alphas[i], k = _trim_to_p_part(elem, p)
        rec.generator = (alphas[i].num, k)
    return alphas


def _complete_type(record, f: IntPolynomial, p: int) -> Type:
    if record.kind != "dedekind":
        return record.tipo
    psi0 = tuple(c % p for c in record.dede_phi.coeffs)
    t0 = Type.order_zero(p, psi0, record.dede_mult)
    if record.dede_mult == 1:
        return t0
    coeffs, cloud = t0.newton_data(f)
    sides = principal_sides(sorted(cloud.items()))
    if len(sides) != 1 or sides[0].h != 1 or sides[0].e != record.dede_mult:
        raise InvariantViolation("shortcut record with an unexpected polygon")
    res = t0.residual_on_side(sides[0], coeffs, cloud)
    fld = t0.order_data(1)[0]
    return t0.extended(1, record.dede_mult, [fld.div(res[0], res[1]), fld.one], 1, ())


def value_at_prime(record, P: IntPolynomial, f: IntPolynomial, p: int) -> int:
    """Exact valuation of P(theta) at the record's prime, with v(p) = e.

    Expand P along the record's modulus; every expansion term has a known
    exact value, so the minimum is the answer whenever it is attained once.
    A tie could hide cancellation, so the modulus is refined along the
    one-step polygon of f, raising its own value by at least one per round,
    until the minimum separates.  Independent of the closed-form route: no
    dominator data, no beta arithmetic.
    """
    if P.is_zero:
        raise ZeroAtTheta("the zero polynomial has no valuation")
    T = record.value_type
    if T is None:
        T = _complete_type(record, f, p)
    prev_h = 0
    rounds = 0
    while True:
        T.ensure_rep()
        W = T.order + 1
        H = _contact(T, f)
        _, cloud = T.newton_data(P)
        if H is None:
            # the modulus is the exact component factor; only j = 0 survives
            record.value_type = T
            if 0 not in cloud:
                raise ZeroAtTheta("vanishes identically on the prime's component")
            return cloud[0]
        vals = [u + j * H for j, u in cloud.items()]
        best = min(vals)
        if vals.count(best) == 1:
            record.value_type = T
            return best
        if H <= prev_h:
            raise InvariantViolation("refinement failed to raise the contact")
        prev_h = H
        fcoeffs, fcloud = T.newton_data(f)
        side = principal_sides(sorted(fcloud.items()))[0]
        res = T.residual_on_side(side, fcoeffs, fcloud)
        fld = T.order_data(W)[0]
        T = T.refined(H, [fld.div(res[0], res[1]), fld.one], 1, T.lineage)
        rounds += 1
        if rounds > 8 * (best + f.degree + 16):
            raise InvariantViolation("valuation separation did not terminate")
