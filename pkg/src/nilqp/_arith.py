"""Integer arithmetic helpers: factorization, modular square roots, and an
exact solver for rational ternary quadratic equations a x^2 + b y^2 + c z^2 = 0.

The solver implements Legendre reduction: normalize to squarefree pairwise
coprime coefficients, take a square root of -ab modulo the largest
coefficient, and descend via the composition identity

    (t^2 + ab) (a X^2 + b Y^2) = a (tX - bY)^2 + b (aX + tY)^2.

Everything is exact; a returned solution always satisfies the equation (the
caller is expected to verify anyway).  None means no rational solution was
found, which for solvable inputs does not happen.
"""

from __future__ import annotations

from math import gcd

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
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


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"factorization failed for {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| (1 maps to empty)."""
    n = abs(n)
    out: dict[int, int] = {}
    if n <= 1:
        return out
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """Square root of a modulo an odd prime p (or p = 2), else None."""
    a %= p
    if p == 2:
        return a
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
            if i == m:
                return None
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def _sqrt_mod_squarefree(a: int, m: int, factors: dict[int, int]) -> int | None:
    """Square root of a modulo squarefree m via CRT over its prime factors."""
    if m == 1:
        return 0
    residue = 0
    modulus = 1
    for p in factors:
        rp = sqrt_mod_prime(a, p)
        if rp is None:
            return None
        # CRT combine
        g, inv = _modinv(modulus, p)
        diff = (rp - residue) % p
        residue = residue + modulus * ((diff * inv) % p)
        modulus *= p
    return residue % m


def _modinv(a: int, p: int):
    a %= p
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return r, t % p


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = sf * s^2 with sf squarefree (sign carried by sf)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    sf, s = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            sf *= p
        s *= p ** (e // 2)
    return sign * sf, s


def _solve_normalized(a: int, b: int, c: int, depth: int = 0):
    """Solve a x^2 + b y^2 + c z^2 = 0 for squarefree pairwise coprime
    coefficients with |a| <= |b| <= |c| and mixed signs; ints or None."""
    if depth > 200:
        return None
    if abs(c) == 1:  # |a| = |b| = 1 as well
        triple = (a, b, c)
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            if triple[i] == -triple[j]:
                sol = [0, 0, 0]
                sol[i] = 1
                sol[j] = 1
                return tuple(sol)
        return None
    mod = abs(c)
    factors = factorize(mod)
    if any(e > 1 for e in factors.values()):  # not squarefree; defensive
        return None
    t = _sqrt_mod_squarefree((-a * b) % mod, mod, factors)
    if t is None:
        return None
    if t > mod // 2:
        t = t - mod
    cc = (t * t + a * b) // c  # c | t^2 + ab by construction
    if cc == 0:
        # t^2 = -ab: a t^2 + b a^2 = a (t^2 + ab) = 0
        return (t, a, 0)
    sub = solve_ternary(a, b, cc, depth + 1)
    if sub is None:
        return None
    x1, y1, z1 = sub
    # (t^2 + ab)(a X^2 + b Y^2) = a(tX - bY)^2 + b(aX + tY)^2 with
    # a X^2 + b Y^2 = -cc Z^2 and t^2 + ab = c*cc.
    x = t * x1 - b * y1
    y = a * x1 + t * y1
    z = cc * z1
    if x == 0 and y == 0 and z == 0:
        return None
    return (x, y, z)


def solve_ternary(a, b, c, depth: int = 0):
    """Rational solution (x, y, z) != 0 of a x^2 + b y^2 + c z^2 = 0.

    Accepts ints or objects with .num/.den; returns a primitive integer
    triple or None.  The result is verified against the integer-cleared
    equation before being returned.
    """
    from fractions import Fraction

    if depth > 200:
        return None
    coeffs = []
    scale = 1
    for v in (a, b, c):
        num = getattr(v, "num", None)
        if num is not None:
            den = v.den
        else:
            num, den = int(v), 1
        coeffs.append((num, den))
        scale *= den
    ints = [num * (scale // den) for (num, den) in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return None
    ints = [v // g for v in ints]
    if any(v == 0 for v in ints):
        idx = next(i for i, v in enumerate(ints) if v == 0)
        sol = [0, 0, 0]
        sol[idx] = 1
        return tuple(sol)
    if all(v > 0 for v in ints) or all(v < 0 for v in ints):
        return None
    # Normalize: squarefree coefficients, pairwise coprime; back[i] converts
    # a solution of the normalized equation to the original variables.
    work = list(ints)
    back = [Fraction(1)] * 3
    for i in range(3):
        sf, s = _squarefree_split(work[i])
        work[i] = sf
        if s != 1:
            back[i] /= s
    guard = 0
    while True:
        guard += 1
        if guard > 64:
            return None
        changed = False
        for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g2 = gcd(abs(work[i]), abs(work[j]))
            if g2 > 1:
                # p | a, p | b: substitute z -> z/p and divide through by p:
                # (a/p) x^2 + (b/p) y^2 + (c p) z'^2 with z = p z'.
                work[i] //= g2
                work[j] //= g2
                merged = work[k] * g2
                sf, s = _squarefree_split(merged)
                work[k] = sf
                back[k] *= g2
                if s != 1:
                    back[k] /= s
                changed = True
        if not changed:
            break
    order = sorted(range(3), key=lambda i: abs(work[i]))
    trip = (work[order[0]], work[order[1]], work[order[2]])
    sol = _solve_normalized(*trip, depth=depth + 1)
    if sol is None:
        return None
    placed = [Fraction(0)] * 3
    for pos, idx in enumerate(order):
        placed[idx] = Fraction(sol[pos])
    vals = [placed[i] * back[i] for i in range(3)]
    if not any(vals):
        return None
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // gcd(lcm, v.denominator)
    out = tuple(int(v * lcm) for v in vals)
    g3 = 0
    for v in out:
        g3 = gcd(g3, v)
    out = tuple(v // g3 for v in out)
    check = ints[0] * out[0] ** 2 + ints[1] * out[1] ** 2 + ints[2] * out[2] ** 2
    if check != 0:
        return None
    return out
