"""Univariate polynomials with exact coefficients, stored in ascending order.

``[a0, a1, ..., ad]`` represents ``a0 + a1 t + ... + ad t^d``.  Over Q the
module provides rational-root extraction and a complete factorization into
irreducibles (squarefree decomposition, rational-root stripping, then
Kronecker's interpolation method) up to a configurable degree cap.
"""

from __future__ import annotations

import itertools
import math
import os
from fractions import Fraction
from functools import reduce

DEFAULT_DEGREE_CAP = 12


class FactorizationLimitError(ValueError):
    """Raised when a polynomial exceeds the factorization degree cap."""


def degree_cap() -> int:
    return int(os.environ.get("LIEDERIVE_FACTOR_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f) -> int:
    return len(trim(f)) - 1


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def add(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return trim([a + b for a, b in zip(f, g)])


def sub(f, g):
    return add(f, [-c for c in g])


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(f, g):
    f, g = trim(f), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(f) - len(g) + 1, 1)
    r = list(f)
    lead = g[-1]
    while len(r) >= len(g) and r:
        shift = len(r) - len(g)
        c = r[-1] / lead
        q[shift] = c
        for i, b in enumerate(g):
            r[i + shift] = r[i + shift] - c * b
        r = trim(r)
    return trim(q), r


def monic(f):
    f = trim(f)
    if not f:
        return f
    lead = f[-1]
    return [c / lead for c in f]


def gcd(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return monic(f)


def derivative(f):
    return trim([i * c for i, c in enumerate(f)][1:])


def to_fraction_poly(f):
    return [Fraction(c) for c in f]


def primitive_integer(f):
    """Scale a rational polynomial to a primitive integer polynomial with positive lead."""
    f = trim(to_fraction_poly(f))
    if not f:
        return []
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in f), 1)
    ints = [int(c * den) for c in f]
    g = reduce(math.gcd, (abs(c) for c in ints if c), 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("zero has infinitely many divisors")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f) -> list[Fraction]:
    """Distinct rational roots of a rational polynomial, sorted.

    Roots modulo a small prime of good reduction are Hensel-lifted past the
    size bound ``2 |a_0| |a_d|`` and rationally reconstructed; every candidate
    is checked exactly.  This avoids factoring the (possibly huge) constant
    and leading coefficients.
    """
    ints = primitive_integer(f)
    if len(ints) <= 1:
        return []
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints[0] == 0:
            ints = ints[1:]
    if len(ints) <= 1:
        return roots
    # squarefree part keeps f' invertible at the roots mod the chosen prime
    sf = primitive_integer(divmod_poly(to_fraction_poly(ints), gcd(to_fraction_poly(ints),
                                                                   derivative(to_fraction_poly(ints))))[0])
    if len(sf) == 2:
        roots.append(Fraction(-sf[0], sf[1]))
        return sorted(roots)
    a0, ad = abs(sf[0]), abs(sf[-1])
    ell = _good_prime(sf)
    bound = 2 * a0 * ad
    for r in range(ell):
        if evaluate(sf, r) % ell:
            continue
        lifted, mod = _hensel_lift(sf, r, ell, bound)
        cand = _rational_reconstruct(lifted, mod, a0, ad)
        if cand is not None and evaluate(sf, cand) == 0 and cand not in roots:
            roots.append(cand)
    return sorted(roots)


def _good_prime(f) -> int:
    """Smallest prime not dividing the leading coefficient with f squarefree mod it."""
    df = derivative(f)
    ell = 2
    while True:
        if f[-1] % ell and _is_squarefree_mod(f, df, ell):
            return ell
        ell += 1
        while any(ell % d == 0 for d in range(2, int(ell ** 0.5) + 1)):
            ell += 1


def _is_squarefree_mod(f, df, ell) -> bool:
    def red(g):
        g = [c % ell for c in g]
        while g and g[-1] == 0:
            g.pop()
        return g

    a, b = red(f), red(df)
    if not b:
        return False
    while b:
        inv = pow(b[-1], -1, ell)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % ell
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = (a[i + shift] - c * x) % ell
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) == 1


def _hensel_lift(f, r: int, ell: int, bound: int):
    df = derivative(f)
    mod = ell
    while mod <= bound:
        mod = mod * mod
        d = evaluate(df, r) % mod
        r = (r - evaluate(f, r) * pow(d, -1, mod)) % mod
    return r, mod


def _rational_reconstruct(r: int, mod: int, nbound: int, dbound: int):
    """``p/q`` with ``p = q r (mod mod)``, ``|p| <= nbound``, ``0 < q <= dbound``, if any."""
    r0, r1 = mod, r % mod
    s0, s1 = 0, 1
    while r1 > nbound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > dbound:
        return None
    return Fraction(r1, s1)


def roots_mod_p(f, F) -> list:
    """Roots in GF(p) by exhaustive evaluation."""
    return [x for x in F.elements() if not evaluate(f, x)]


def squarefree_decomposition(f):
    """Yun's algorithm over Q: monic ``f = prod g_i^i``; returns ``[(g_i, i)]`` with deg g_i > 0."""
    f = monic(to_fraction_poly(f))
    if degree(f) <= 0:
        return []
    out = []
    df = derivative(f)
    a = gcd(f, df)
    b = divmod_poly(f, a)[0]
    c = divmod_poly(df, a)[0]
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((monic(a), i))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        i += 1
    return out


def factor_rational_poly(f, cap: int | None = None):
    """Irreducible monic factors over Q with multiplicities, sorted by (degree, coefficients).

    Raises :class:`FactorizationLimitError` when ``deg f`` exceeds the cap.
    """
    cap = degree_cap() if cap is None else cap
    f = trim(to_fraction_poly(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if degree(f) > cap:
        raise FactorizationLimitError(f"degree {degree(f)} exceeds factorization cap {cap}")
    factors = []
    for g, mult in squarefree_decomposition(f):
        for r in rational_roots(g):
            factors.append(([-r, Fraction(1)], mult))
            g = divmod_poly(g, [-r, Fraction(1)])[0]
        for h in _kronecker_split(primitive_integer(g)):
            factors.append((monic(to_fraction_poly(h)), mult))
    factors.sort(key=lambda fm: (len(fm[0]), [(c.numerator, c.denominator) for c in fm[0]]))
    return factors


def _kronecker_split(h) -> list:
    """Irreducible factors of a squarefree primitive integer polynomial without rational roots."""
    if degree(h) <= 1:
        return [h] if degree(h) == 1 else []
    d = degree(h)
    for s in range(2, d // 2 + 1):
        g = _kronecker_factor(h, s)
        if g is not None:
            q = _int_exact_div(h, g)
            return _kronecker_split(g) + _kronecker_split(q)
    return [h]


def _kronecker_factor(h, s: int):
    """An integer factor of ``h`` of degree exactly ``s``, or None."""
    candidates = itertools.chain([0], itertools.chain.from_iterable((k, -k) for k in itertools.count(1)))
    pool = []
    for x in candidates:
        v = evaluate(h, x)
        if v != 0:
            pool.append((len(divisors(v)), x, v))
        if len(pool) >= 3 * (s + 1) + 4:
            break
    pool.sort()
    points = pool[:s + 1]
    xs = [x for _, x, _ in points]
    choices = []
    for i, (_, _, v) in enumerate(points):
        ds = divisors(v)
        choices.append(ds if i == 0 else [d * sgn for d in ds for sgn in (1, -1)])
    for ys in itertools.product(*choices):
        g = _interpolate(xs, ys)
        if g is None or degree(g) != s:
            continue
        if all(c.denominator == 1 for c in g):
            gi = [int(c) for c in g]
            if _int_exact_div(h, gi) is not None:
                return primitive_integer(gi)
    return None


def _interpolate(xs, ys):
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = mul(basis, [Fraction(-xs[j]), Fraction(1)])
                denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k, c in enumerate(basis):
            out[k] += scale * c
    return trim(out)


def _int_exact_div(h, g):
    q, r = divmod_poly(to_fraction_poly(h), to_fraction_poly(g))
    if r or any(c.denominator != 1 for c in q):
        return None
    return [int(c) for c in q]


def format_poly(f, var: str = "t") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(terms).replace("+ -", "- ") or "0"
