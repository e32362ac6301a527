#!/usr/bin/env python3
"""Independent reference values for the unit and acceptance tests.

Everything here uses mpmath at 30 digits with adaptive quadrature on
[0, inf) or closed-form antiderivatives. Nothing here shares code with the
C++ implementation; the printed numbers are frozen into tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 30
inf = mp.inf


def f_int(s, d):
    g = lambda k: k ** (d - 1) * (mp.sqrt(k * k + 1) - mp.sqrt(k * k + s * s)) ** 2 / (
        4 * mp.sqrt(k * k + 1) * (k * k + s * s))
    pts = sorted(set([0, min(s, 1), max(s, 1), 10 * max(s, 1), inf]))
    return mp.quad(g, pts)


def g_int(s, d):
    g = lambda k: k ** (d - 1) / (mp.sqrt(k * k + 1) * mp.expm1(s * mp.sqrt(k * k + 1)))
    return mp.quad(g, [0, 1, 1 / s + 1, 10 / s + 10, inf])


def solid(d):
    return {1: mp.mpf(2), 2: 2 * mp.pi, 3: 4 * mp.pi}[d] / (2 * mp.pi) ** d


def gap_rhs(u, m0, m, lam, d, cutoff=None):
    ms = mp.sqrt(u)
    def g(k):
        w0 = mp.sqrt(k * k + m0 * m0)
        ws = mp.sqrt(k * k + u)
        w = mp.sqrt(k * k + m * m)
        return k ** (d - 1) * ((w0 - ws) ** 2 / (4 * w0 * ws * ws) + (w - ws) / (2 * w * ws))
    top = inf if cutoff is None else cutoff
    pts = [0, min(m0, ms, 1), max(m0, ms, 1), 10 * max(m0, ms, 1), top]
    return lam / 2 * solid(d) * mp.quad(g, pts)


def m_star(m0, m, lam, d, cutoff=None):
    F = lambda ms: ms * ms - m * m - gap_rhs(ms * ms, m0, m, lam, d, cutoff)
    lo, hi = max(m, mp.mpf('1e-6')), max(m, 1) * 2
    while F(hi) < 0:
        hi *= 2
    return mp.findroot(F, (lo, hi), solver='anderson')


if __name__ == '__main__':
    print('omega examples trivially exact')
    print('f_1(0.5) quad   =', mp.nstr(f_int(mp.mpf('0.5'), 1), 20))
    s = mp.mpf('0.5')
    print('f_1(0.5) closed =', mp.nstr((2 * mp.log(s) + mp.sqrt(1 - s * s) / s * mp.acos(s)) / 4, 20))
    print('f_2 large-s slope (s=1e4): f/s =', mp.nstr(f_int(mp.mpf(10) ** 4, 2) / 10 ** 4, 12),
          ' (1-pi/4)/2 =', mp.nstr((1 - mp.pi / 4) / 2, 12))
    print('g_2(1) =', mp.nstr(-mp.log(1 - mp.e ** -1), 20), ' quad', mp.nstr(g_int(mp.mpf(1), 2), 20))
    k, m0, m = 1, 5, 1
    w0, w = mp.sqrt(k * k + m0 * m0), mp.sqrt(k * k + m * m)
    L = 2 / w * mp.atanh(w / w0)
    print('matched L(k=1,m0=5,m=1) =', mp.nstr(L, 20), ' beta_eff =', mp.nstr(2 * L, 20))
    print('h_1(0.5) closed =', mp.nstr(mp.log(0.5) / 2, 20))
    # initial effective mass examples (d=1)
    for mm in (mp.mpf('0.5'), mp.mpf(2)):
        val = mm * mm + 10 / 2 * (2 / (2 * mp.pi)) * mp.log(mm) / 2
        print('m_eff^2(0+) d=1 m0=1 m=%s lam=10 ->' % mm, mp.nstr(val, 20))
    # coupling counterterm d=3 m=1 Lambda=1e3
    Lam = mp.mpf(1000)
    dl = mp.quad(lambda k: k * k / (8 * (k * k + 1) ** 1.5), [0, 1, 10, 100, Lam]) * 4 * mp.pi / (2 * mp.pi) ** 3
    print('delta lambda(m=1, Lambda=1e3) =', mp.nstr(dl, 20))
    # radial integrate oracle: d=3, f=1/(2 sqrt(k^2+1)), Lambda=100
    anti = lambda k: (k * mp.sqrt(k * k + 1) - mp.asinh(k)) / 4
    print('d3 int k^2/(2sqrt(k^2+1)) * Omega3/(2pi)^3 to 100 =', mp.nstr(anti(100) * solid(3), 20))
    # gap equation checks
    print('m* d=2 m=0 lam=1e6 (Lambda=inf) =', mp.nstr(m_star(1, 0, mp.mpf(10) ** 6, 2), 15))
    print('m* d=2 m=0 lam=1e6 (Lambda=100) =', mp.nstr(m_star(1, 0, mp.mpf(10) ** 6, 2, 100), 15))
    print('m* d=1 m=2 lam=1e4 =', mp.nstr(m_star(1, 2, mp.mpf(10) ** 4, 1), 15))
    print('m* d=1 m=2 lam=10 =', mp.nstr(m_star(1, 2, 10, 1), 15))
    print('m* d=1 m=0.5 lam=10 =', mp.nstr(m_star(1, mp.mpf('0.5'), 10, 1), 15))
    for lam in (1, 5, 10, 20):
        print('m* d=2 m=2 lam=%d =' % lam, mp.nstr(m_star(1, 2, lam, 2), 15))
    print('m* d=2 m=5 lam=10 =', mp.nstr(m_star(1, 5, 10, 2), 15))
    print('m* d=3 m=0 lam=1 Lambda=100 =', mp.nstr(m_star(1, 0, 1, 3, 100), 15))
    for Lc in (10 ** 4, 10 ** 7):
        print('m* d=3 m=0 lam=1e-3 Lambda=%g =' % Lc, mp.nstr(m_star(1, 0, mp.mpf('1e-3'), 3, Lc), 15),
              ' formula', mp.nstr(mp.sqrt(mp.mpf('1e-3')) / (4 * mp.pi * mp.sqrt(2)), 15))

    # f_d closed forms (with the s > 1 / s < 1 continuations) versus quadrature
    def f_closed(s, d):
        if d == 1:
            if s <= 1:
                return (2 * mp.log(s) + mp.sqrt(1 - s * s) / s * mp.acos(s)) / 4
            return (2 * mp.log(s) - mp.sqrt(s * s - 1) / s * mp.acosh(s)) / 4
        if d == 2:
            if s >= 1:
                return (2 * (s - 1) - mp.sqrt(s * s - 1) * mp.acos(1 / s)) / 4
            return (2 * (s - 1) + mp.sqrt(1 - s * s) * mp.acosh(1 / s)) / 4
        if s <= 1:
            return ((1 - s * s) / 2 - s * s * mp.log(s) - s * mp.sqrt(1 - s * s) * mp.acos(s)) / 4
        return ((1 - s * s) / 2 - s * s * mp.log(s) + s * mp.sqrt(s * s - 1) * mp.acosh(s)) / 4
    for d in (1, 2, 3):
        for s in ('0.01', '0.3', '0.9', '1.5', '7'):
            s = mp.mpf(s)
            print('f_%d(%s) quad=%s closed=%s' % (d, s, mp.nstr(f_int(s, d), 17), mp.nstr(f_closed(s, d), 17)))
    for d in (1, 3):
        for s in ('0.1', '1', '10'):
            print('g_%d(%s) =' % (d, s), mp.nstr(g_int(mp.mpf(s), d), 17))
    # average beta: solve x^{d-1} g_d(x y) = f_d(x) for y
    for d, x in ((1, '0.5'), (2, '0.5'), (3, '0.5'), (1, '2'), (3, '0.02'), (1, '0.02')):
        x = mp.mpf(x)
        F = lambda y: x ** (d - 1) * g_int(x * y, d) - f_int(x, d)
        lo, hi = mp.mpf('0.5'), mp.mpf(20)
        flo = F(lo)
        for _ in range(60):
            mid = (lo + hi) / 2
            fm = F(mid)
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        y = (lo + hi) / 2
        print('beta_bar m0 d=%d x=%s =' % (d, x), mp.nstr(y, 15))
