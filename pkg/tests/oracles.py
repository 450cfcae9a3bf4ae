"""Independent classical Groebner machinery over the integers, used only
as a test oracle.

Kept deliberately separate from the package under test: polynomials are
plain dicts from exponent tuples to ints, with a locally defined
degrevlex and Euclidean-style reduction.  Strong bases arise from
saturating with both S-polynomials (lcm of leading coefficients) and
G-polynomials (Bezout combination reaching the gcd of leading
coefficients).
"""

from math import gcd, lcm


def xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def drl_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def zclean(p):
    return {e: c for e, c in p.items() if c}


def zadd(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return zclean(out)


def zscale_shift(p, c, shift):
    return {tuple(a + b for a, b in zip(e, shift)): c * v for e, v in p.items()}


def zmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return zclean(out)


def zlt(p):
    exp = max(p, key=drl_key)
    return exp, p[exp]


def exp_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def zreduce(p, G):
    """Full remainder: a term is reduced only by a basis element whose
    leading monomial divides it and whose leading coefficient divides its
    coefficient."""
    rem = {}
    p = dict(p)
    while p:
        e, c = zlt(p)
        hit = None
        for g in G:
            ge, gc = zlt(g)
            if exp_divides(ge, e) and c % gc == 0:
                hit = (g, ge, gc)
                break
        if hit is None:
            rem[e] = c
            del p[e]
        else:
            g, ge, gc = hit
            p = zadd(p, zscale_shift(g, -(c // gc), exp_sub(e, ge)))
    return rem


def z_spair(f, g):
    fe, fc = zlt(f)
    ge, gc = zlt(g)
    l = exp_lcm(fe, ge)
    L = lcm(abs(fc), abs(gc))
    return zadd(
        zscale_shift(f, L // fc, exp_sub(l, fe)),
        zscale_shift(g, -(L // gc), exp_sub(l, ge)),
    )


def z_gpair(f, g):
    fe, fc = zlt(f)
    ge, gc = zlt(g)
    l = exp_lcm(fe, ge)
    _, u, v = xgcd(fc, gc)
    return zadd(
        zscale_shift(f, u, exp_sub(l, fe)),
        zscale_shift(g, v, exp_sub(l, ge)),
    )


def z_strong_gb(F):
    """Strong Groebner basis over the integers by S/G-pair saturation."""
    G = [zclean(f) for f in F if zclean(f)]
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    while pairs:
        i, j = pairs.pop(0)
        for cand in (z_spair(G[i], G[j]), z_gpair(G[i], G[j])):
            r = zreduce(cand, G)
            if r:
                G.append(r)
                pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return G


def term_in_lt_ideal(coeff, exp, G):
    """Membership of coeff * x^exp in the leading-term ideal of G over Z:
    the applicable leading coefficients must reach a divisor of coeff."""
    g = 0
    for h in G:
        he, hc = zlt(h)
        if exp_divides(he, exp):
            g = gcd(g, hc)
    return g != 0 and coeff % g == 0


def lt_ideals_equal(A, B):
    for h in A:
        e, c = zlt(h)
        if not term_in_lt_ideal(c, e, B):
            return False
    for h in B:
        e, c = zlt(h)
        if not term_in_lt_ideal(c, e, A):
            return False
    return True


def poly_to_dict(p):
    """Convert a package polynomial over the rationals with integral
    coefficients to an oracle dict."""
    out = {}
    for c, e in p.terms:
        q = c.as_fraction()
        assert q.denominator == 1
        out[e] = int(q)
    return out
