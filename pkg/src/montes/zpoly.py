"""Exact arithmetic for dense polynomials over Z, plus the few rational
polynomial routines the rest of the package needs.

Coefficients are arbitrary-precision Python ints, stored ascending (index i
holds the x^i coefficient) with trailing zeros trimmed, so the representation
of a polynomial is canonical and hashable.
"""

from fractions import Fraction

from .errors import (
    DegreeTooSmall,
    DivisionByZero,
    NonMonicModulus,
    NotInvertible,
    ZeroPolynomial,
)


class IntPolynomial:
    """Immutable dense polynomial with int coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def constant(c):
        return IntPolynomial((c,))

    @staticmethod
    def x():
        return IntPolynomial((0, 1))

    @staticmethod
    def monomial(k, c=1):
        return IntPolynomial((0,) * k + (c,))

    @property
    def degree(self):
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __setattr__(self, *a):
        raise AttributeError("IntPolynomial is immutable")

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def divmod_monic(self, phi):
        """Quotient and remainder by a monic divisor, exact over Z."""
        if not phi.is_monic:
            raise NonMonicModulus("divisor must be monic")
        d = phi.degree
        if d == 0:
            return self, IntPolynomial()
        rem = list(self.coeffs)
        if len(rem) <= d:
            return IntPolynomial(), self
        q = [0] * (len(rem) - d)
        pc = phi.coeffs
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q[i - d] = c
                for j in range(d):
                    rem[i - d + j] -= c * pc[j]
                rem[i] = 0
        return IntPolynomial(q), IntPolynomial(rem[:d])

    def derivative(self):
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def shift(self, c):
        """Return self(x + c)."""
        out = []
        for coeff in reversed(self.coeffs):
            # multiply accumulated polynomial by (x + c) and add coeff
            new = [coeff] + out
            for i in range(len(out)):
                new[i] += out[i] * c
            out = new
        return IntPolynomial(out)

    def reduce_mod(self, m):
        """Coefficients reduced into [0, m), ascending, untrimmed length kept."""
        return [c % m for c in self.coeffs]

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            elif i == 1:
                term = "x" if abs(c) == 1 else f"{abs(c)}*x"
            else:
                term = f"x^{i}" if abs(c) == 1 else f"{abs(c)}*x^{i}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+" if c > 0 else "-") + term)
        return "".join(parts)


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


def pval(n, p):
    """Multiplicity of the prime p in the nonzero integer n."""
    if n == 0:
        raise ZeroPolynomial("p-adic valuation of 0 requested")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vpoly(f, p):
    """min over nonzero coefficients of their p-adic valuation (the order-one
    valuation v_1)."""
    if f.is_zero:
        raise ZeroPolynomial("v_1 of the zero polynomial requested")
    return min(pval(c, p) for c in f.coeffs if c)


def phi_expand(P, phi):
    """phi-adic expansion: the list [a_0, a_1, ...] with P = sum a_i phi^i and
    deg a_i < deg phi.  phi must be monic of degree >= 1."""
    if phi.degree < 1:
        raise DegreeTooSmall("expansion modulus must have degree >= 1")
    out = []
    cur = P
    while not cur.is_zero:
        cur, rem = cur.divmod_monic(phi)
        out.append(rem)
    if not out:
        out.append(IntPolynomial())
    return out


def content(f):
    """Positive gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in f.coeffs:
        g = _gcd_int(g, c)
        if g == 1:
            return 1
    return g


def primitive_part(f):
    c = content(f)
    if c in (0, 1):
        return f
    return IntPolynomial(tuple(v // c for v in f.coeffs))


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def pseudo_divmod(A, B):
    """Pseudo division: lc(B)^(degA-degB+1) * A = Q*B + R with deg R < deg B."""
    if B.is_zero:
        raise DivisionByZero("pseudo division by zero")
    dA, dB = A.degree, B.degree
    if dA < dB:
        return IntPolynomial(), A
    b = B.lc
    rem = list(A.coeffs)
    q = [0] * (dA - dB + 1)
    for i in range(dA, dB - 1, -1):
        # scale everything below degree i so the cancellation stays integral
        c = rem[i]
        for j in range(i):
            rem[j] *= b
        for j in range(len(q)):
            q[j] *= b
        q[i - dB] = c
        for j in range(dB):
            rem[i - dB + j] -= c * B.coeffs[j]
        rem[i] = 0
    return IntPolynomial(q), IntPolynomial(rem[:dB])


def gcd_z(f, g):
    """Primitive gcd over Z via the primitive pseudo-remainder sequence.
    Adequate for small degrees; the squarefreeness screen avoids it on big
    inputs."""
    A, B = primitive_part(f), primitive_part(g)
    if A.is_zero:
        return B
    while not B.is_zero:
        _, R = pseudo_divmod(A, B)
        A, B = B, primitive_part(R)
    if A.is_zero:
        return A
    if A.lc < 0:
        A = -A
    c = _gcd_int(content(f), content(g))
    return A * c if c > 1 else A


_SCREEN_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
)


def _gcd_mod(a, b, q):
    """Monic gcd of two coefficient lists mod a prime q (ascending lists)."""
    def trim(u):
        while u and u[-1] % q == 0:
            u.pop()
        return u

    a, b = trim([c % q for c in a]), trim([c % q for c in b])
    while b:
        inv = pow(b[-1], -1, q)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % q
            if c:
                sh = len(a) - 1 - db
                for j in range(len(b)):
                    a[sh + j] = (a[sh + j] - c * b[j]) % q
            a.pop()
            trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_squarefree(f):
    """True iff f has no repeated roots over Q.

    A single prime q with gcd(f mod q, f' mod q) = 1 certifies squarefreeness
    (the reduction of the true gcd divides both).  Only when every screen
    prime fails do we fall back to an exact gcd over Z.
    """
    if f.is_zero:
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    if f.degree <= 1:
        return True
    df = f.derivative()
    for q in _SCREEN_PRIMES:
        if len(_gcd_mod(f.coeffs, df.coeffs, q)) == 1:
            return True
    return gcd_z(f, df).degree == 0


def resultant(A, B):
    """Resultant of A and B over Z, by the subresultant remainder sequence."""
    if A.is_zero or B.is_zero:
        return 0
    if A.degree == 0:
        return A.coeffs[0] ** B.degree
    if B.degree == 0:
        return B.coeffs[0] ** A.degree
    s = 1
    if A.degree < B.degree:
        if (A.degree & 1) and (B.degree & 1):
            s = -s
        A, B = B, A
    ca, cb = content(A), content(B)
    A, B = primitive_part(A), primitive_part(B)
    t = s * ca ** B.degree * cb ** A.degree
    g = h = 1
    while True:
        dA, dB = A.degree, B.degree
        d = dA - dB
        if (dA & 1) and (dB & 1):
            t = -t
        _, R = pseudo_divmod(A, B)
        A = B
        denom = g * h ** d
        B = IntPolynomial(tuple(c // denom for c in R.coeffs))
        g = A.lc
        if d > 0:
            h = g ** d // h ** (d - 1)
        if B.is_zero:
            return 0
        if B.degree == 0:
            dA = A.degree
            return t * (B.coeffs[0] ** dA) // h ** (dA - 1)


def discriminant(f):
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise DegreeTooSmall("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val = sign * r
    q, rem = divmod(val, f.lc)
    if rem:
        raise ZeroPolynomial("discriminant division failed")  # unreachable
    return q


# ---------------------------------------------------------------------------
# Rational polynomials (tuples of Fraction, ascending).  Only what the ideal
# generator construction needs: division and the extended gcd.

def rat_from_int(f):
    return tuple(Fraction(c) for c in f.coeffs)


def rat_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def rat_divmod(a, b):
    a, b = rat_trim(a), rat_trim(b)
    if not b:
        raise DivisionByZero("rational polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    rem = list(a)
    inv = 1 / b[-1]
    while len(rem) >= len(b):
        c = rem[-1] * inv
        pos = len(rem) - len(b)
        q[pos] = c
        for j in range(len(b)):
            rem[pos + j] -= c * b[j]
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rat_trim(q), rat_trim(rem)


def rat_mul(a, b):
    a, b = rat_trim(a), rat_trim(b)
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return rat_trim(out)


def rat_sub(a, b):
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return rat_trim(out)


def xgcd_rat(a, b):
    """Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic
    (or zero)."""
    r0, r1 = rat_trim(a), rat_trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = rat_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, rat_sub(s0, rat_mul(q, s1))
        t0, t1 = t1, rat_sub(t0, rat_mul(q, t1))
    if not r0:
        return (), s0, t0
    lead = r0[-1]
    inv = 1 / lead
    scale = lambda u: tuple(c * inv for c in u)
    return scale(r0), scale(s0), scale(t0)


# ---------------------------------------------------------------------------
# Primality (input validation for the CLI and driver).

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Miller-Rabin with fixed bases: deterministic below 3.3e24, and with
    error probability below 4^-12 beyond that."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
