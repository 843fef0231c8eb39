"""Dense kernels for univariate polynomials with integer coefficients.

A polynomial is a tuple of Python ints in ascending degree order with no
trailing zeros; the zero polynomial is ``()``.  Large products, exact
quotients and gcds go through Kronecker substitution: the polynomial is
evaluated at ``2**k`` so that one big-integer operation (done by GMP via
gmpy2) replaces a quadratic number of coefficient operations.
"""

from __future__ import annotations

from math import gcd as _igcd

import gmpy2

IntPoly = tuple  # tuple[int, ...]

# below this many terms schoolbook loops beat packing
_SMALL = 12
_HEU_ATTEMPTS = 6


def strip(c) -> IntPoly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def maxbits(c: IntPoly) -> int:
    return max((abs(v).bit_length() for v in c), default=0)


def content(c: IntPoly) -> int:
    g = 0
    for v in c:
        g = _igcd(g, v)
        if g == 1:
            break
    return g


def primitive(c: IntPoly) -> tuple[int, IntPoly]:
    """Split ``c`` into (content, primitive part) with a positive leading coefficient."""
    if not c:
        return 0, ()
    g = content(c)
    if c[-1] < 0:
        g = -g
    if g == 1:
        return 1, c
    return g, tuple(v // g for v in c)


def _pack(c: IntPoly, k: int) -> int:
    width = k // 8
    pos = bytearray()
    neg = bytearray()
    zero = bytes(width)
    for v in c:
        if v > 0:
            pos += v.to_bytes(width, "little")
            neg += zero
        elif v < 0:
            pos += zero
            neg += (-v).to_bytes(width, "little")
        else:
            pos += zero
            neg += zero
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _eval2k(c, k: int) -> int:
    """Value at ``2**k`` for coefficients of any size (split in halves)."""
    if len(c) <= 16:
        acc = 0
        for v in reversed(c):
            acc = (acc << k) + v
        return acc
    mid = len(c) // 2
    return _eval2k(c[:mid], k) + (_eval2k(c[mid:], k) << (k * mid))


def _unpack(v: int, k: int) -> IntPoly:
    """Inverse of ``_pack`` for coefficients bounded by ``2**(k-1)`` in absolute value."""
    if v < 0:
        return tuple(-t for t in _unpack(-v, k))
    if v == 0:
        return ()
    width = k // 8
    raw = v.to_bytes((v.bit_length() + 7) // 8 + width, "little")
    half = 1 << (k - 1)
    full = 1 << k
    out = []
    carry = 0
    for i in range(0, len(raw), width):
        t = int.from_bytes(raw[i:i + width], "little") + carry
        if t >= half:
            t -= full
            carry = 1
        else:
            carry = 0
        out.append(t)
    return strip(out)


def _round8(bits: int) -> int:
    return max(8, (bits + 7) // 8 * 8)


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return strip(out)


def sub(a: IntPoly, b: IntPoly) -> IntPoly:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return strip(out)


def scale(a: IntPoly, s: int) -> IntPoly:
    if not s:
        return ()
    return tuple(v * s for v in a)


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    if min(len(a), len(b)) <= _SMALL:
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return strip(out)
    k = _round8(maxbits(a) + maxbits(b) + min(len(a), len(b)).bit_length() + 2)
    prod = gmpy2.mpz(_pack(a, k)) * gmpy2.mpz(_pack(b, k))
    return _unpack(int(prod), k)


def divexact(f: IntPoly, g: IntPoly) -> IntPoly | None:
    """Return ``q`` with ``g*q == f`` over the integers, or None if no such ``q`` exists."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return ()
    dq = len(f) - len(g)
    if dq < 0:
        return None
    if len(g) == 1:
        d = g[0]
        if any(v % d for v in f):
            return None
        return tuple(v // d for v in f)
    # necessary conditions on the end coefficients
    if f[-1] % g[-1]:
        return None
    if g[0] and f[0] % g[0] or not g[0] and f[0]:
        return None
    if len(g) <= _SMALL and dq <= _SMALL:
        q, r = _divmod_int_small(f, g)
        return q if r is not None and not r else None
    # a cheap guess first, then the worst-case coefficient bound for the quotient
    guess = _round8(maxbits(f) + 16)
    rigorous = _round8(maxbits(f) + dq + len(f).bit_length() + 2)
    for k in (guess, rigorous) if guess < rigorous else (rigorous,):
        F = gmpy2.mpz(_pack(f, k))
        G = gmpy2.mpz(_pack(g, k))
        Q, R = gmpy2.f_divmod(F, G)
        if R:
            return None
        q = _unpack(int(Q), k)
        if len(q) == dq + 1 and mul(g, q) == f:
            return q
    return None


def _divmod_int_small(f: IntPoly, g: IntPoly):
    # schoolbook division that stays in Z; r is None when a quotient
    # coefficient would be fractional
    r = list(f)
    lc = g[-1]
    dq = len(f) - len(g)
    q = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        t = r[i + len(g) - 1]
        if t % lc:
            return (), None
        t //= lc
        q[i] = t
        if t:
            for j, v in enumerate(g):
                r[i + j] -= t * v
    return strip(q), strip(r)


def prem(f: IntPoly, g: IntPoly) -> IntPoly:
    """Pseudo-remainder of ``f`` by ``g``: ``lc(g)**(deg f - deg g + 1) * f mod g``."""
    m = len(g) - 1
    if len(f) - 1 < m:
        return strip(f)
    lc = g[-1]
    e = len(f) - m
    r = list(f)
    while r and len(r) - 1 >= m:
        top = r[-1]
        shift = len(r) - 1 - m
        r = [v * lc for v in r]
        for j, v in enumerate(g):
            r[shift + j] -= top * v
        r = list(strip(r))
        e -= 1
    # steps skipped by cancellation still owe their factor of lc
    if e:
        r = [v * lc ** e for v in r]
    return strip(r)


def subresultant_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient via the subresultant PRS."""
    if not f:
        return primitive(g)[1]
    if not g:
        return primitive(f)[1]
    if len(f) < len(g):
        f, g = g, f
    _, a = primitive(f)
    _, b = primitive(g)
    gg = h = 1
    while True:
        delta = len(a) - len(b)
        r = prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return (1,)
        div = gg * h ** delta
        a, b = b, tuple(v // div for v in r)
        gg = a[-1]
        if delta:
            h = gg ** delta // h ** (delta - 1)
    return primitive(b)[1]


def heuristic_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient.

    Evaluates both inputs at ``2**k`` with ``2**k > 2*min(|f|, |g|) + 29``, takes
    the integer gcd, and lifts it back through balanced base-``2**k`` digits.
    A lifted candidate is only returned after exact division checks, so a
    wrong guess costs time, never correctness.  Falls back to the
    subresultant sequence when every evaluation point is unlucky.
    """
    if not f:
        return primitive(g)[1]
    if not g:
        return primitive(f)[1]
    _, f = primitive(f)
    _, g = primitive(g)
    if len(f) == 1 or len(g) == 1:
        return (1,)
    if f == g:
        return f
    # common power of x first; it keeps evaluation values odd-friendly
    lo = 0
    while not f[lo] and not g[lo]:
        lo += 1
    if lo:
        inner = heuristic_gcd(f[lo:], g[lo:])
        return (0,) * lo + inner
    bound = min(max(abs(v) for v in f), max(abs(v) for v in g))
    k = _round8((2 * bound + 29).bit_length() + 1)
    for _ in range(_HEU_ATTEMPTS):
        F = gmpy2.mpz(_eval2k(f, k))
        G = gmpy2.mpz(_eval2k(g, k))
        H = gmpy2.gcd(F, G)
        cand = primitive(_unpack(int(H), k))[1]
        if cand and divexact(f, cand) is not None and divexact(g, cand) is not None:
            return cand
        # cofactor route: f(xi)/h(xi) may lift cleanly when h(xi) does not
        cf = primitive(_unpack(int(F // H), k))[1]
        if cf:
            cand = divexact(f, cf)
            if cand is not None:
                cand = primitive(cand)[1]
                if divexact(g, cand) is not None:
                    return cand
        k = _round8(k * 2)
    return subresultant_gcd(f, g)


def evaluate(c: IntPoly, p: int, q: int = 1) -> tuple[int, int]:
    """Evaluate at p/q; returns (numerator, q**deg) without reduction."""
    if not c:
        return 0, 1
    n = len(c) - 1
    acc = 0
    qp = 1
    # Horner on the homogenised form sum c_i p^i q^(n-i)
    for v in reversed(c):
        acc = acc * p + v * qp
        qp *= q
    return acc, q ** n


# -- Bezout cofactors modulo word-size primes ------------------------------------


def _ext_euclid_mod(f: list, g: list, p: int):
    """(s, t) with s*f + t*g == 1 mod p and deg s < deg g, or None if gcd != 1 mod p."""
    def trim(c):
        while c and not c[-1]:
            c.pop()
        return c

    r0, r1 = trim([v % p for v in f]), trim([v % p for v in g])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        inv = pow(r1[-1], -1, p)
        q = [0] * max(0, len(r0) - len(r1) + 1)
        r = r0[:]
        while len(r) >= len(r1) and r:
            c = r[-1] * inv % p
            shift = len(r) - len(r1)
            q[shift] = c
            for j, v in enumerate(r1):
                r[shift + j] = (r[shift + j] - c * v) % p
            trim(r)
        r0, r1 = r1, r
        s0, s1 = s1, _submul_mod(s0, q, s1, p)
        t0, t1 = t1, _submul_mod(t0, q, t1, p)
    if len(r0) != 1:
        return None
    inv = pow(r0[0], -1, p)
    return [v * inv % p for v in s0], [v * inv % p for v in t0]


def _submul_mod(a: list, q: list, b: list, p: int) -> list:
    # a - q*b mod p
    out = a[:] + [0] * max(0, len(q) + len(b) - 1 - len(a))
    for i, u in enumerate(q):
        if u:
            for j, v in enumerate(b):
                out[i + j] = (out[i + j] - u * v) % p
    while out and not out[-1]:
        out.pop()
    return out


def _ratrecon(u: int, m: int):
    """a/b == u mod m with |a|, b <= sqrt(m/2), or None."""
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, u % m
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if gmpy2.gcd(r1, t1) != 1:
        return None
    return int(r1), int(t1)


def modular_bezout(f: IntPoly, g: IntPoly):
    """Cofactors of coprime integer polynomials as (S, T, D) with S*f + T*g == D.

    Images modulo 62-bit primes are combined by CRT and lifted to rationals
    by reconstruction; a candidate is returned only after the identity has
    been verified over the integers.  Returns None if f and g share a factor.
    """
    lead = f[-1] * g[-1]
    n_s, n_t = len(g) - 1, len(f) - 1
    M = gmpy2.mpz(1)
    S = [gmpy2.mpz(0)] * n_s
    T = [gmpy2.mpz(0)] * n_t
    p = gmpy2.mpz(2) ** 62
    used = 0
    check_at = 4
    misses = 0
    while True:
        p = gmpy2.next_prime(p)
        if lead % p == 0:
            continue
        img = _ext_euclid_mod(list(f), list(g), int(p))
        if img is None:
            misses += 1
            if misses > 20:
                return None
            continue
        s_p, t_p = img
        s_p += [0] * (n_s - len(s_p))
        t_p += [0] * (n_t - len(t_p))
        inv_M = gmpy2.invert(M, p)
        for vec, img_p in ((S, s_p), (T, t_p)):
            for i, v in enumerate(img_p):
                vec[i] = vec[i] + M * ((v - vec[i]) * inv_M % p)
        M *= p
        used += 1
        if used < check_at:
            continue
        check_at *= 2
        cand = _lift(S + T, M)
        if cand is None:
            continue
        nums, D = cand
        Sz, Tz = strip(nums[:n_s]), strip(nums[n_s:])
        if add(mul(Sz, f), mul(Tz, g)) == (D,):
            return Sz, Tz, D


def _lift(residues, M):
    # reconstruct over a running common denominator so most entries lift as integers
    D = gmpy2.mpz(1)
    nums = []
    half = M // 2
    for r in residues:
        u = r * D % M
        if u <= half and u < gmpy2.isqrt(M):
            nums.append(int(u))
            continue
        if M - u < gmpy2.isqrt(M):
            nums.append(int(u - M))
            continue
        rr = _ratrecon(int(u), int(M))
        if rr is None:
            return None
        a, b = rr
        if b != 1:
            nums = [v * b for v in nums]
            D *= b
        nums.append(a)
    return nums, int(D)
