"""Binary forms of degree r and the invariant theory of the quartic.

Coordinates are divided: a form is stored by the coefficients a_0..a_r in
the basis binom(r,i) t0^(r-i) t1^i, so (c t0 + d t1)^r has coordinates
c^(r-i) d^i and the classical quartic invariants

    Q = a0 a4 - 4 a1 a3 + 3 a2^2
    C = a0 a2 a4 - a0 a3^2 + 2 a1 a2 a3 - a1^2 a4 - a2^3

are genuinely invariant under unimodular substitutions (and scale by a
determinant power in general, which cancels in j = Q^3 / D).  Plain
coefficient vectors convert via from_plain / plain_coefficients.

Points of the projective line are identified with linear forms by
[c:d] <-> c t0 + d t1; effective divisors are products of such forms, and
the osculating flag at a point consists of the divisors containing it with
prescribed multiplicity.
"""

from collections import namedtuple
from fractions import Fraction
from math import comb, gcd as _int_gcd

from .poly import FpElement, MultiPoly, poly_gcd, scalar_one_like
from .linalg import det_cofactor


def _as_scalar(c):
    return Fraction(c) if isinstance(c, int) else c


class BinaryForm:
    """A nonzero binary form of degree r in divided coordinates."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs):
        coeffs = tuple(_as_scalar(c) for c in coeffs)
        if len(coeffs) < 2:
            raise ValueError("a binary form needs degree >= 1")
        if not any(coeffs):
            raise ValueError("the zero form is not a projective representative")
        self.degree = len(coeffs) - 1
        self.coeffs = coeffs

    @classmethod
    def from_plain(cls, plain):
        """From coefficients in the plain monomial basis t0^(r-i) t1^i."""
        r = len(plain) - 1
        return cls(tuple(_as_scalar(c) / comb(r, i) for i, c in enumerate(plain)))

    @classmethod
    def from_poly(cls, P):
        """From a homogeneous arity-2 polynomial."""
        if P.arity != 2:
            raise ValueError("binary forms live in two variables")
        r = P.homogeneous_degree()
        plain = [P.terms.get((r - i, i), 0) for i in range(r + 1)]
        return cls.from_plain(plain)

    def plain_coefficients(self):
        r = self.degree
        return tuple(comb(r, i) * c for i, c in enumerate(self.coeffs))

    def realize(self):
        """The form as an arity-2 polynomial in t0, t1."""
        r = self.degree
        return MultiPoly(2, {(r - i, i): c for i, c in enumerate(self.plain_coefficients()) if c})

    def normalized(self):
        """Canonical projective representative.

        Rational: primitive integer vector, first nonzero entry positive.
        F_p: first nonzero entry scaled to 1.
        """
        first = next(c for c in self.coeffs if c)
        if isinstance(first, FpElement):
            inv = 1 / first
            return BinaryForm(tuple(c * inv for c in self.coeffs))
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.coeffs:
            num_gcd = _int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        scale = Fraction(den_lcm, num_gcd)
        if first < 0:
            scale = -scale
        return BinaryForm(tuple(c * scale for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "BinaryForm(%s)" % (self.coeffs,)


def linear_form_of_point(point):
    """The linear form c*t0 + d*t1 attached to the point [c:d]."""
    c, d = (_as_scalar(x) for x in point)
    if not c and not d:
        raise ValueError("zero point has no linear form")
    terms = {}
    if c:
        terms[(1, 0)] = c
    if d:
        terms[(0, 1)] = d
    return MultiPoly(2, terms)


def veronese(r, point):
    """r-th power of the linear form of a point: coordinates c^(r-i) d^i."""
    c, d = (_as_scalar(x) for x in point)
    if not c and not d:
        raise ValueError("zero point")
    return BinaryForm(tuple(c ** (r - i) * d ** i for i in range(r + 1)))


def form_from_divisor(pairs):
    """Product of linear forms: pairs of (point, multiplicity)."""
    total = sum(m for _, m in pairs)
    if any(m <= 0 for _, m in pairs):
        raise ValueError("multiplicities must be positive")
    product = None
    for point, m in pairs:
        factor = linear_form_of_point(point) ** m
        product = factor if product is None else product * factor
    if product is None:
        raise ValueError("empty divisor")
    assert product.homogeneous_degree() == total
    return BinaryForm.from_poly(product).normalized()


RootPattern = namedtuple("RootPattern", ["multiplicities", "orbit_class"])

ORBIT_CLASSES = {
    (4,): "VERONESE",
    (3, 1): "TANGENT",
    (2, 2): "BITANGENT-NODE",
    (2, 1, 1): "ONE-DOUBLE",
    (1, 1, 1, 1): "SIMPLE",
}


def root_pattern(F):
    """Root multiplicities over the algebraic closure, without factoring.

    Dehomogenize with respect to t1; the lost root at [1:0] contributes the
    number of leading zero coefficients.  The finite multiplicities come from
    the chain g_(k+1) = gcd(g_k, g_k'), whose degree drops record how many
    roots survive each differentiation.  Valid in characteristic 0 and over
    F_p with p > r.
    """
    plain = F.plain_coefficients()
    r = F.degree
    m_inf = 0
    while not plain[m_inf]:
        m_inf += 1
    f = MultiPoly(1, {(r - i,): c for i in range(m_inf, r + 1) if (c := plain[i])})
    mults = []
    if f.total_degree() > 0:
        survivors = []  # survivors[k] = number of roots of multiplicity > k
        g = f
        while g.total_degree() > 0:
            survivors.append(g.total_degree())
            g = poly_gcd(g, g.partial_derivative(0))
        survivors.append(0)
        drops = [a - b for a, b in zip(survivors, survivors[1:])]
        for k, (hi, lo) in enumerate(zip(drops, drops[1:] + [0]), start=1):
            mults.extend([k] * (hi - lo))
    if m_inf:
        mults.append(m_inf)
    mults = tuple(sorted(mults, reverse=True))
    assert sum(mults) == r
    return RootPattern(mults, ORBIT_CLASSES.get(mults) if r == 4 else None)


InvariantTriple = namedtuple("InvariantTriple", ["Q", "C", "D"])


def _invariants_from(a):
    """Q, C, D from five ring elements (scalars or polynomials)."""
    q = a[0] * a[4] - 4 * a[1] * a[3] + 3 * a[2] * a[2]
    c = (a[0] * a[2] * a[4] - a[0] * a[3] * a[3] + 2 * a[1] * a[2] * a[3]
         - a[1] * a[1] * a[4] - a[2] * a[2] * a[2])
    d = q * q * q - 27 * c * c
    return InvariantTriple(q, c, d)


def invariants_qcd(F):
    if F.degree != 4:
        raise ValueError("invariants are defined for quartics, got degree %d" % F.degree)
    return _invariants_from(F.coeffs)


def invariant_polys():
    """Q, C, D as polynomials in the five divided coordinates."""
    return _invariants_from([MultiPoly.variable(5, i) for i in range(5)])


class JValue:
    """Value of the j-map: finite, INFINITY (D = 0), or INDETERMINATE
    (Q = C = 0, the base locus).  RAW is Q^3/D; CLASSICAL is 1728 Q^3/D,
    which puts the vanishing of C on the fiber 1728."""

    __slots__ = ("kind", "value", "normalization")

    FINITE = "FINITE"
    INFINITY = "INFINITY"
    INDETERMINATE = "INDETERMINATE"

    def __init__(self, kind, value, normalization):
        self.kind = kind
        self.value = value
        self.normalization = normalization

    def __eq__(self, other):
        if not isinstance(other, JValue):
            return NotImplemented
        return (self.kind, self.value, self.normalization) == (other.kind, other.value, other.normalization)

    def __repr__(self):
        if self.kind == JValue.FINITE:
            return "JValue(%s, %s)" % (self.value, self.normalization)
        return "JValue(%s)" % self.kind


def j_invariant(F, normalization="RAW"):
    if normalization not in ("RAW", "CLASSICAL"):
        raise ValueError("normalization must be RAW or CLASSICAL")
    inv = invariants_qcd(F)
    if not inv.Q and not inv.C:
        return JValue(JValue.INDETERMINATE, None, normalization)
    if not inv.D:
        return JValue(JValue.INFINITY, None, normalization)
    value = inv.Q ** 3 / inv.D
    if normalization == "CLASSICAL":
        value = 1728 * value
    return JValue(JValue.FINITE, value, normalization)


def transform(F, matrix):
    """Coordinate substitution t_i -> sum_j matrix[i][j] t_j."""
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if not det:
        raise ValueError("substitution matrix is singular")
    return BinaryForm.from_poly(F.realize().linear_substitute(matrix))


# -- discriminant oracle ----------------------------------------------------

def _sylvester_resultant(u, v):
    """Resultant of two binary forms given by plain coefficient lists."""
    m = len(u) - 1
    n = len(v) - 1
    rows = []
    for k in range(n):
        rows.append([0] * k + list(u) + [0] * (n - 1 - k))
    for k in range(m):
        rows.append([0] * k + list(v) + [0] * (m - 1 - k))
    return det_cofactor(rows)


def _derivative_coefficient_lists(coeffs, r):
    """Plain coefficients of dF/dt0 and dF/dt1 for divided coordinates."""
    u = [(r - i) * comb(r, i) * coeffs[i] for i in range(r)]
    v = [(i + 1) * comb(r, i + 1) * coeffs[i + 1] for i in range(r)]
    return u, v


def discriminant_oracle(F):
    """Resultant of the two partial derivatives of F.

    Proportional to the discriminant; for quartics this equals a fixed
    rational multiple of D = Q^3 - 27 C^2 (the multiple is pinned by
    discriminant_scale and certified on random samples by the test suite).
    """
    if F.degree < 2:
        raise ValueError("discriminant oracle needs degree >= 2")
    u, v = _derivative_coefficient_lists(F.coeffs, F.degree)
    return _sylvester_resultant(u, v)


def discriminant_oracle_symbolic(r):
    """The oracle with the divided coordinates as polynomial variables."""
    if r < 2:
        raise ValueError("discriminant oracle needs degree >= 2")
    a = [MultiPoly.variable(r + 1, i) for i in range(r + 1)]
    u, v = _derivative_coefficient_lists(a, r)
    return _sylvester_resultant(u, v)


def discriminant_scale():
    """The constant c with oracle = c * D, fixed by one evaluation."""
    ref = BinaryForm((0, 1, 0, -1, 0))
    return discriminant_oracle(ref) / invariants_qcd(ref).D


def cubic_discriminant_plain(a, b, c, d):
    """Discriminant of a t^3 + b t^2 u + c t u^2 + d u^3 (plain basis)."""
    return (18 * a * b * c * d - 4 * b ** 3 * d + b ** 2 * c ** 2
            - 4 * a * c ** 3 - 27 * a ** 2 * d ** 2)


# -- osculating flag --------------------------------------------------------

OsculatingFlag = namedtuple(
    "OsculatingFlag",
    ["point", "hyperplane", "plane", "line", "line_param", "conic_param", "cubic_param"])


def osculating_flag(point, degree=4):
    """Flag of osculating subspaces to the degree-4 Veronese curve at 4p.

    hyperplane / plane / line are lists of 1, 2, 3 linear functionals in the
    divided coordinates a_0..a_4 cutting out the divisors with multiplicity
    >= 1, 2, 3 at p.  The three parametrizations send a point q to the plain
    coordinates (g_0..g_3) of the cubic cofactor of one copy of L_p:

        line_param(q)  : divisor 3p + q, cofactor L_p^2 L_q
        conic_param(q) : divisor 2p + 2q, cofactor L_p L_q^2
        cubic_param(q) : divisor p + 3q, cofactor L_q^3
    """
    if degree != 4:
        raise ValueError("the flag is implemented for quartics")
    c, d = (_as_scalar(x) for x in point)
    if not c and not d:
        raise ValueError("zero point")
    one = scalar_one_like(c)
    # Complete L_p = c t0 + d t1 to a basis (u, v); express t0, t1 in u, v
    # and expand a symbolic quartic, working in arity 7: a_0..a_4, then u, v.
    if c:
        e, f = 0 * one, one
    else:
        e, f = one, 0 * one
    delta = c * f - d * e
    identity_part = [[one if i == j else 0 * one for j in range(7)] for i in range(5)]
    t0_row = [0 * one] * 5 + [f / delta, -d / delta]
    t1_row = [0 * one] * 5 + [-e / delta, c / delta]
    substitution = identity_part + [t0_row, t1_row]
    a_vars = [MultiPoly.variable(7, i) for i in range(5)]
    t0 = MultiPoly.variable(7, 5)
    t1 = MultiPoly.variable(7, 6)
    quartic = MultiPoly.zero(7)
    for i in range(5):
        quartic = quartic + comb(4, i) * a_vars[i] * t0 ** (4 - i) * t1 ** i
    expanded = quartic.linear_substitute(substitution, 7)
    # Coefficient of u^(4-j) v^j, as a linear functional in the a_i.
    functionals = []
    for j in range(5):
        picked = {}
        for exps, coeff in expanded.terms.items():
            if exps[5] == 4 - j and exps[6] == j:
                picked[exps[:5]] = coeff
        functionals.append(MultiPoly(5, picked).normalized())
    L_p = linear_form_of_point(point)

    def cofactor_param(p_mult):
        base = L_p ** p_mult

        def param(q):
            cubic = base * linear_form_of_point(q) ** (3 - p_mult)
            return tuple(cubic.terms.get((3 - i, i), 0 * one) for i in range(4))

        return param

    return OsculatingFlag(
        point=(c, d),
        hyperplane=[functionals[4]],
        plane=[functionals[4], functionals[3]],
        line=[functionals[4], functionals[3], functionals[2]],
        line_param=cofactor_param(2),
        conic_param=cofactor_param(1),
        cubic_param=cofactor_param(0),
    )
