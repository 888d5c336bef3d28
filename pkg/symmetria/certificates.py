"""
Exact verification of the axial-symmetry lower bound and the closed-form
bounds on σ(n, k).

The axial program is checked in ℚ(√2): primal feasibility of named
constraints, dual feasibility of the two certificate points for the
sub-program where a ≥ f and b ≤ e, the crossing of their objective curves,
and the inequality chains that settle the remaining sign cases.
"""
import logging
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction

import pandas as pd

from symmetria.errors import BadParam, InternalInconsistency
from symmetria.qsqrt2 import ONE, SQRT2, ZERO, QSqrt2, qs_min

logger = logging.getLogger(__name__)

AREA_NAMES = ('a', 'b', 'c', 'd', 'e', 'f')
PROGRAM_VARS = ('lam',) + AREA_NAMES
TRIANGLE_FLOOR = 3 * SQRT2 - 4          # 3√2 − 4
T_STAR = (6 - 3 * SQRT2) / 4
AXIAL_BOUND = Fraction(2, 41) * (10 + 3 * SQRT2)
CASE1_FLOOR = Fraction(715, 1000)


def _q(x):
    return QSqrt2.coerce(x)


@dataclass(frozen=True)
class AxialProgramPoint:
    lam: QSqrt2
    a: QSqrt2
    b: QSqrt2
    c: QSqrt2
    d: QSqrt2
    e: QSqrt2
    f: QSqrt2
    t: QSqrt2

    @classmethod
    def make(cls, lam, a, b, c, d, e, f, t=None):
        areas = [_q(v) for v in (a, b, c, d, e, f)]
        total = sum(areas, ZERO) if t is None else _q(t)
        return cls(_q(lam), *areas, total)

    def areas(self):
        return {name: getattr(self, name) for name in AREA_NAMES}

    def to_dict(self):
        out = {f.name: str(getattr(self, f.name)) for f in fields(self)}
        out['lambda'] = out.pop('lam')
        return out


@dataclass(frozen=True)
class DualPoint:
    y1: QSqrt2
    y2: QSqrt2
    y3: QSqrt2
    y4: QSqrt2
    y5: QSqrt2

    @classmethod
    def make(cls, *ys, scale=ONE):
        return cls(*(_q(y) * scale for y in ys))

    def values(self):
        return (self.y1, self.y2, self.y3, self.y4, self.y5)


# ── primal ──

def axial_primal_feasible(x):
    """Names of the axial-program constraints violated by x (empty when feasible)."""
    a, b, c, d, e, f = x.a, x.b, x.c, x.d, x.e, x.f
    scaled = (1 + x.t) * x.lam
    checks = [
        ('nonnegative_areas', all(v.sign() >= 0 for v in (a, b, c, d, e, f))),
        ('total_outside_area', x.t == a + b + c + d + e + f),
        ('bc_cap', b + c <= Fraction(1, 6)),
        ('de_cap', d + e <= Fraction(1, 6)),
        ('abd_cap', a + b + d <= Fraction(1, 3)),
        ('cef_cap', c + e + f <= Fraction(1, 3)),
        ('hexagon_extension', scaled >= 1 + qs_min(a, f) + qs_min(b, e) + qs_min(c, d)),
        ('triangle_ace', scaled >= TRIANGLE_FLOOR + 2 * (a + c + e)),
        ('triangle_bdf', scaled >= TRIANGLE_FLOOR + 2 * (b + d + f)),
    ]
    return [name for name, ok in checks if not ok]


def _case3_rows(t):
    """The sub-program for a ≥ f, b ≤ e, c ≤ d as rows (name, coefficients, rhs) of coeffs·x ≥ rhs."""
    k = 1 + _q(t)
    return [
        ('total_outside_area', {v: ONE for v in AREA_NAMES}, _q(t)),
        ('de_cap', {'d': -ONE, 'e': -ONE}, _q(Fraction(-1, 6))),
        ('abd_cap', {'a': -ONE, 'b': -ONE, 'd': -ONE}, _q(Fraction(-1, 3))),
        ('hexagon_extension', {'lam': k, 'b': -ONE, 'c': -ONE, 'f': -ONE}, ONE),
        ('triangle_ace', {'lam': k, 'a': -2 * ONE, 'c': -2 * ONE, 'e': -2 * ONE}, TRIANGLE_FLOOR),
    ]


def _case4_rows(t):
    """The sub-program for a ≤ f, b ≤ e."""
    k = 1 + _q(t)
    return [
        ('total_outside_area', {v: ONE for v in AREA_NAMES}, _q(t)),
        ('de_cap', {'d': -ONE, 'e': -ONE}, _q(Fraction(-1, 6))),
        ('cef_cap', {'c': -ONE, 'e': -ONE, 'f': -ONE}, _q(Fraction(-1, 3))),
        ('hexagon_extension', {'lam': k, 'a': -ONE, 'b': -ONE, 'c': -ONE}, ONE),
        ('triangle_bdf', {'lam': k, 'b': -2 * ONE, 'd': -2 * ONE, 'f': -2 * ONE}, TRIANGLE_FLOOR),
    ]


_CASE4_SWAP = {'a': 'f', 'f': 'a', 'b': 'c', 'c': 'b', 'd': 'e', 'e': 'd', 'lam': 'lam'}


def _row_key(coeffs, rhs):
    return frozenset((name, v) for name, v in coeffs.items() if v), rhs


def case4_reduces_to_case3(t=T_STAR):
    """True when swapping a↔f, b↔c, d↔e maps the a ≤ f sub-program onto the a ≥ f one."""
    swapped = {_row_key({_CASE4_SWAP[n]: v for n, v in coeffs.items()}, rhs) for _, coeffs, rhs in _case4_rows(t)}
    original = {_row_key(coeffs, rhs) for _, coeffs, rhs in _case3_rows(t)}
    return swapped == original


# ── dual ──

def _listed_dual_rows(t):
    """Dual constraints as printed with the certificate: (name, coefficients on y1..y5, bound)."""
    k = 1 + _q(t)
    return [
        ('lambda', (0, 0, 0, k, k), 1),
        ('a', (1, 0, -1, 0, -2), 0),
        ('b', (1, 0, -1, -1, -1), 0),
        ('c', (1, 0, 0, -1, -2), 0),
        ('d', (1, -1, -1, 0, 0), 0),
        ('e', (1, -1, 0, 0, -2), 0),
        ('f', (1, 0, 0, -1, 0), 0),
    ]


def _derived_dual_rows(t):
    """Dual constraints obtained by transposing the primal rows (one per primal variable)."""
    rows = _case3_rows(t)
    out = []
    for var in PROGRAM_VARS:
        coeffs = tuple(coeffs.get(var, ZERO) for _, coeffs, _ in rows)
        out.append((var, coeffs, 1 if var == 'lam' else 0))
    return out


def dual_violations(t, y):
    """Names of violated dual rows, listed and derived, plus nonnegativity."""
    ys = y.values()
    out = [f'y{i + 1}_nonnegative' for i, v in enumerate(ys) if v.sign() < 0]
    for tag, rows in (('listed', _listed_dual_rows(t)), ('derived', _derived_dual_rows(t))):
        for name, coeffs, bound in rows:
            lhs = sum((_q(c) * v for c, v in zip(coeffs, ys)), ZERO)
            if lhs > bound:
                out.append(f'{tag}:{name}')
    return out


def dual_feasible_case3(t, y):
    if _q(t).sign() < 0:
        raise BadParam('t must be nonnegative')
    return not dual_violations(t, y)


def dual_objective_case3(t, y):
    rows = _case3_rows(t)
    return sum((rhs * v for (_, _, rhs), v in zip(rows, y.values())), ZERO)


def dual_points(t):
    """The two certificate points, both scaled by 1/(1+t)."""
    scale = ONE / (1 + _q(t))
    return (
        DualPoint.make(0, 0, 0, 1, 0, scale=scale),
        DualPoint.make(Fraction(4, 5), Fraction(2, 5), Fraction(2, 5), Fraction(4, 5), Fraction(1, 5), scale=scale),
    )


def tight_case3_primal():
    """The primal point at t = (6−3√2)/4 whose λ meets the bound with equality."""
    d = TRIANGLE_FLOOR / 4
    a = Fraction(1, 3) - d
    e = Fraction(1, 6) - d
    return AxialProgramPoint.make(4 / (10 - 3 * SQRT2), a, 0, 0, d, e, 0)


# ── cases 1 and 2: a ≤ f or b ≥ e ──

# rows coeffs·x ≥ rhs over the areas and s = (1+t)·λ
def _hexagon_row(smaller):
    """hexagon_extension once each min{·,·} is resolved to the named area."""
    return 'hexagon_extension', {'s': ONE, **{v: -ONE for v in smaller}}, ONE


_TRIANGLE_BDF_ROW = ('triangle_bdf', {'s': ONE, 'b': -2 * ONE, 'd': -2 * ONE, 'f': -2 * ONE}, TRIANGLE_FLOOR)
_ABD_CAP_ROW = ('abd_cap', {'a': -ONE, 'b': -ONE, 'd': -ONE}, _q(Fraction(-1, 3)))
_CEF_CAP_ROW = ('cef_cap', {'c': -ONE, 'e': -ONE, 'f': -ONE}, _q(Fraction(-1, 3)))


def _combine(rows, weights):
    coeffs, rhs = {}, ZERO
    for (_, row, b), w in zip(rows, weights):
        for name, v in row.items():
            coeffs[name] = coeffs.get(name, ZERO) + _q(w) * v
        rhs = rhs + _q(w) * b
    return coeffs, rhs


def _case1_combination():
    """3×hexagon_extension + 3/2×triangle_bdf for a ≤ f, b ≥ e, c ≤ d as (s weight, area weight, rhs).

    Every area carries the same weight, so the sum of areas can be replaced by t.
    """
    coeffs, rhs = _combine([_hexagon_row('aec'), _TRIANGLE_BDF_ROW], [3, Fraction(3, 2)])
    area_weights = {coeffs.get(v, ZERO) for v in AREA_NAMES}
    if len(area_weights) != 1:
        raise InternalInconsistency(f'case 1 combination leaves unequal area weights {sorted(map(str, area_weights))}')
    return coeffs['s'], -area_weights.pop(), rhs


def case1_bound(t):
    """λ floor (rhs + w·t) / (S·(1+t)) read off the combined case 1 row."""
    s, w, rhs = _case1_combination()
    t = _q(t)
    return (rhs + w * t) / (s * (1 + t))


def _poly(const, names):
    """Degree-1 polynomial const + Σ names as {monomial: coefficient}."""
    out = {(): _q(const)}
    for v in names:
        out[(v,)] = out.get((v,), ZERO) + ONE
    return out


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, ZERO) + c1 * c2
    return out


def _poly_sub(p, q):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, ZERO) - c
    return {m: c for m, c in out.items() if c}


def case2_product_gap():
    """(1+f+e+c)(1+a+b+d) − (1+t) expanded with t = a+…+f; nonnegative when every term is."""
    return _poly_sub(_poly_mul(_poly(1, 'fec'), _poly(1, 'abd')), _poly(1, AREA_NAMES))


def _record_case1(cert):
    coeffs, _ = _combine([_hexagon_row('aec'), _TRIANGLE_BDF_ROW], [3, Fraction(3, 2)])
    cert.record('case 1: 3×hexagon_extension + 3/2×triangle_bdf weighs every area equally',
                len({coeffs.get(v, ZERO) for v in AREA_NAMES}) == 1)
    s, w, rhs = _case1_combination()
    cert.record('case 1: combined row is 9/2(1+t)λ ≥ 3 + 3/2(3√2−4) + 3t',
                s == Fraction(9, 2) and w == 3 and rhs == 3 + Fraction(3, 2) * TRIANGLE_FLOOR,
                f'{s}·(1+t)λ ≥ {rhs} + {w}·t')

    caps, cap_rhs = _combine([_ABD_CAP_ROW, _CEF_CAP_ROW], [1, 1])
    all_areas = all(caps.get(v, ZERO) == -ONE for v in AREA_NAMES) and len(caps) == len(AREA_NAMES)
    cert.record('case 1: abd_cap + cef_cap gives t ≤ 2/3', all_areas and cap_rhs == Fraction(-2, 3),
                f'−t ≥ {cap_rhs}')
    t_max = -cap_rhs

    # (rhs + w·t)/(s(1+t)) has the sign of w − rhs as its slope
    cert.record('case 1 floor decreasing in t', (w - rhs).sign() < 0, f'{w} − ({rhs}) < 0')
    case1 = case1_bound(t_max)
    cert.record('case 1 at t = 2/3 is (9√2−2)/15', case1 == (9 * SQRT2 - 2) / 15, str(case1))
    cert.record('case 1 above 0.715', case1 > CASE1_FLOOR)
    return case1


def _record_case2(cert):
    _, hexagon, hexagon_rhs = _hexagon_row('fec')
    cert.record('case 2: hexagon_extension reads (1+t)λ ≥ 1+f+e+c',
                hexagon_rhs == ONE and {v for v, c in hexagon.items() if v != 's' and c == -ONE} == set('fec'))
    gap = case2_product_gap()
    quadratic = all(len(m) == 2 for m in gap)
    nonnegative = all(c.sign() > 0 for c in gap.values())
    cert.record('case 2: (1+f+e+c)(1+a+b+d) − (1+t) has only nonnegative quadratic terms',
                quadratic and nonnegative, ' + '.join('·'.join(m) for m in sorted(gap)))
    _, abd, abd_rhs = _ABD_CAP_ROW
    cert.record('case 2: abd_cap bounds the second factor, a+b+d ≤ 1/3',
                set(abd) == set('abd') and abd_rhs == Fraction(-1, 3))
    case2 = ONE / (1 - abd_rhs)
    cert.record('case 2 floor 1/(1 + 1/3) = 3/4', case2 == Fraction(3, 4), str(case2))
    return case2


# ── the certificate ──

@dataclass
class AxialCertificate:
    value: QSqrt2
    t_star: QSqrt2
    case_values: dict
    checks: list = field(default_factory=list)

    def record(self, name, ok, detail=''):
        self.checks.append((name, bool(ok), detail))
        logger.debug('%s: %s %s', name, 'ok' if ok else 'FAILED', detail)
        if not ok:
            raise InternalInconsistency(f'{name} failed {detail}'.strip())

    def transcript(self):
        return [f"{'ok    ' if ok else 'FAILED'} {name}{'  ' + detail if detail else ''}" for name, ok, detail in self.checks]

    def to_dict(self):
        return {
            'value': self.value.to_dict(),
            't_star': self.t_star.to_dict(),
            'cases': {k: v.to_dict() for k, v in self.case_values.items()},
            'checks': [{'name': n, 'ok': ok, 'detail': d} for n, ok, d in self.checks],
            'status': 'exact',
        }


def axial_certificate():
    """Re-derive the axial lower bound (2/41)(10+3√2) in exact arithmetic, recording every check."""
    cert = AxialCertificate(value=ZERO, t_star=T_STAR, case_values={})

    # the λ row is (y4 + y5)(1+t) = 1 for both points at every t and the other rows are homogeneous,
    # so a spread of t values covers the family
    for t in (ZERO, Fraction(1, 2), T_STAR, Fraction(2, 3), ONE, QSqrt2(3, 2)):
        first, second = dual_points(t)
        cert.record(f'dual point 1 feasible at t={t}', dual_feasible_case3(t, first))
        cert.record(f'dual point 2 feasible at t={t}', dual_feasible_case3(t, second))
        cert.record(f'dual objective 1 at t={t}', dual_objective_case3(t, first) == ONE / (1 + t))
        cert.record(f'dual objective 2 at t={t}',
                    dual_objective_case3(t, second) == (4 * _q(t) + 3 * SQRT2 - 1) / (5 * (1 + t)))

    # max of a decreasing and an increasing branch is minimal where they cross
    cert.record('branch 2 increasing in t', (5 - 3 * SQRT2).sign() > 0, '5 − 3√2 > 0')
    cross = (6 - 3 * SQRT2) / 4
    cert.record('crossing solves 5 = 4t + 3√2 − 1', 4 * cross + 3 * SQRT2 - 1 == QSqrt2(5))
    first, second = dual_points(cross)
    g1, g2 = dual_objective_case3(cross, first), dual_objective_case3(cross, second)
    cert.record('branches agree at t*', g1 == g2, str(g1))
    cert.record('value is 4/(10−3√2)', g1 == 4 / (10 - 3 * SQRT2))
    cert.record('value is (2/41)(10+3√2)', g1 == AXIAL_BOUND, str(AXIAL_BOUND))

    tight = tight_case3_primal()
    cert.record('tight primal feasible', not axial_primal_feasible(tight), ', '.join(axial_primal_feasible(tight)))
    cert.record('tight primal in case region', tight.a >= tight.f and tight.b <= tight.e and tight.c <= tight.d)
    cert.record('tight primal total is t*', tight.t == cross)
    cert.record('tight primal attains the bound', tight.lam == g1)
    cert.record('case 4 is case 3 under the swap', case4_reduces_to_case3())

    case1 = _record_case1(cert)
    case2 = _record_case2(cert)
    cert.record('cases 1 and 2 lie above the crossing value', case1 > g1 and case2 > g1)

    cert.case_values = {'case1': case1, 'case2': case2, 'case3': g1, 'case4': g1}
    cert.value = qs_min(*cert.case_values.values())
    cert.record('minimum over cases is the crossing value', cert.value == g1)
    logger.info('axial lower bound certified: %s ≈ %.12g (%d checks)', cert.value, float(cert.value), len(cert.checks))
    return cert


def theorem11_lower_bound():
    return axial_certificate().value


# ── closed-form bounds on σ(n, k) ──

def _check_dim(n, least):
    if not isinstance(n, int) or n < least:
        raise BadParam(f'dimension must be an integer ≥ {least}, got {n!r}')


def bound_glb(n, k):
    """max{k!, (n−k)!} / (2^{n−k}·n!), the general lower bound on σ(n, k)."""
    _check_dim(n, 1)
    if not (isinstance(k, int) and 0 <= k < n):
        raise BadParam(f'k must satisfy 0 ≤ k < n, got k={k!r}, n={n}')
    return Fraction(max(math.factorial(k), math.factorial(n - k)), 2 ** (n - k) * math.factorial(n))


def bound_fary_redei(n):
    """Central symmetry of the regular n-simplex."""
    _check_dim(n, 1)
    total = sum((-1) ** i * math.comb(n + 1, i) * (n + 1 - 2 * i) ** n for i in range(n // 2 + 1))
    return Fraction(total, (n + 1) ** n)


def bound_axlb(n):
    _check_dim(n, 2)
    return Fraction(1, 2 * n)


def bound_pyramid(n):
    _check_dim(n, 2)
    return (2.0 - 2.0 ** (-1.0 / n)) ** (-n)


def separation_check(n):
    """True when the hyperplane-reflection floor beats the simplex central symmetry."""
    _check_dim(n, 2)
    return bound_axlb(n) > bound_fary_redei(n)


def dimension_lift_bound(n, sigma):
    """Upper bound on σ(n+1, n) given the upper bound sigma on σ(n, n−1)."""
    return max(bound_pyramid(n), float(sigma))


def axiality_upper_chain(n_max):
    """[(n, upper bound on σ(n, n−1))] for n = 2..n_max starting from (1+√2)/3."""
    _check_dim(n_max, 2)
    bound = (1.0 + math.sqrt(2.0)) / 3.0
    chain = [(2, bound)]
    for n in range(2, n_max):
        bound = dimension_lift_bound(n, bound)
        chain.append((n + 1, bound))
    return chain


def bounds_table(n_max):
    _check_dim(n_max, 2)
    upper = dict(axiality_upper_chain(n_max))
    rows = []
    for n in range(2, n_max + 1):
        glb, fr, ax = bound_glb(n, n - 1), bound_fary_redei(n), bound_axlb(n)
        rows.append({
            'n': n,
            'general_lower_bound': str(glb),
            'general_lower_bound_value': float(glb),
            'simplex_central_symmetry': str(fr),
            'simplex_central_symmetry_value': float(fr),
            'axial_lower_bound': str(ax),
            'axial_lower_bound_value': float(ax),
            'pyramid_bound': bound_pyramid(n),
            'axial_upper_bound': upper[n],
            'separation': separation_check(n),
        })
    return pd.DataFrame(rows)
