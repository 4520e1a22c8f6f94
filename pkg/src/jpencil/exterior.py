"""Exterior calculus over the polynomial ring.

k-forms carry MultiPoly coefficients on strictly increasing index tuples of
the affine coordinates z_0..z_n; vector fields are polynomial derivations.
Everything needed for the integrability story lives here: wedge, exterior
derivative, interior product, Lie bracket and derivative (Cartan), the Euler
field, the descent and Frobenius residues, and saturation by the coefficient
gcd.  Values are immutable; operations are pure.
"""

from collections import namedtuple
from fractions import Fraction
from math import gcd as integer_gcd

from .poly import FpElement, MultiPoly, coefficient_gcd, exact_divide
from . import polytext


class DiffForm:
    """Polynomial k-form: terms map strictly increasing k-tuples to MultiPoly."""

    __slots__ = ("arity", "degree", "terms")

    def __init__(self, arity, degree, terms=None):
        if not 0 <= degree <= arity:
            raise ValueError("form degree %d invalid for arity %d" % (degree, arity))
        self.arity = arity
        self.degree = degree
        clean = {}
        if terms:
            for idx, coeff in terms.items():
                idx = tuple(idx)
                if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
                    raise ValueError("index tuple %r is not strictly increasing of length %d" % (idx, degree))
                if any(i < 0 or i >= arity for i in idx):
                    raise ValueError("index out of range in %r" % (idx,))
                if coeff.arity != arity:
                    raise ValueError("coefficient arity mismatch")
                if not coeff.is_zero:
                    clean[idx] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, arity, degree):
        return cls(arity, degree, {})

    @classmethod
    def one_form(cls, coeffs):
        """Build sum_i coeffs[i] dz_i from a full coefficient list."""
        arity = len(coeffs)
        return cls(arity, 1, {(i,): c for i, c in enumerate(coeffs) if not c.is_zero})

    @classmethod
    def zero_form(cls, P):
        return cls(P.arity, 0, {(): P})

    def coefficients(self):
        """Dense coefficient list, 1-forms only."""
        if self.degree != 1:
            raise ValueError("coefficient list is defined for 1-forms")
        return [self.terms.get((i,), MultiPoly.zero(self.arity)) for i in range(self.arity)]

    @property
    def is_zero(self):
        return not self.terms

    def coefficient_degrees(self):
        return sorted({c.total_degree() for c in self.terms.values()})

    def has_homogeneous_coefficients(self):
        degrees = set()
        for c in self.terms.values():
            if not c.is_homogeneous():
                return False
            degrees.add(c.homogeneous_degree())
        return len(degrees) <= 1

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.arity, self.degree, self.terms) == (other.arity, other.degree, other.terms)

    def __hash__(self):
        return hash((self.arity, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return "DiffForm(arity=%d, degree=%d, %d terms)" % (self.arity, self.degree, len(self.terms))

    def _check_compatible(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch: %d vs %d" % (self.arity, other.arity))

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check_compatible(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("cannot add forms of degrees %d and %d" % (self.degree, other.degree))
        out = dict(self.terms)
        for idx, c in other.terms.items():
            cur = out.get(idx)
            s = c if cur is None else cur + c
            if s.is_zero:
                out.pop(idx, None)
            else:
                out[idx] = s
        return DiffForm(self.arity, self.degree if self.terms or not other.terms else other.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DiffForm(self.arity, self.degree, {i: -c for i, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_zero:
                return DiffForm.zero(self.arity, self.degree)
            return DiffForm(self.arity, self.degree, {i: c * other for i, c in self.terms.items()})
        if isinstance(other, (int, Fraction, FpElement)):
            if not other:
                return DiffForm.zero(self.arity, self.degree)
            return DiffForm(self.arity, self.degree, {i: c * other for i, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__


class PolyVectorField:
    """Polynomial derivation sum_i coeffs[i] d/dz_i."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        arity = len(coeffs)
        for c in coeffs:
            if c.arity != arity:
                raise ValueError("vector field coefficient arity mismatch")
        self.arity = arity
        self.coeffs = coeffs

    def apply_to(self, P):
        out = MultiPoly.zero(self.arity)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                out = out + c * P.partial_derivative(i)
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __neg__(self):
        return PolyVectorField([-c for c in self.coeffs])

    def __repr__(self):
        return "PolyVectorField(%r)" % (self.coeffs,)


def euler_field(arity):
    """The radial field R = sum z_i d/dz_i."""
    return PolyVectorField([MultiPoly.variable(arity, i) for i in range(arity)])


def volume_form(arity):
    """dz_0 ^ ... ^ dz_{n} with unit coefficient."""
    return DiffForm(arity, arity, {tuple(range(arity)): MultiPoly.constant(arity, Fraction(1))})


def _merge_indices(left, right):
    """Sorted merge of disjoint increasing tuples, with the permutation sign."""
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] == right[j]:
            return None, 0
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            # right[j] hops over the remaining entries of left
            sign *= -1 if (len(left) - i) % 2 else 1
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return tuple(merged), sign


def wedge(alpha, beta):
    alpha._check_compatible(beta)
    degree = alpha.degree + beta.degree
    if degree > alpha.arity:
        return DiffForm.zero(alpha.arity, min(degree, alpha.arity))
    out = {}
    for ia, ca in alpha.terms.items():
        for ib, cb in beta.terms.items():
            merged, sign = _merge_indices(ia, ib)
            if merged is None:
                continue
            coeff = ca * cb
            if sign < 0:
                coeff = -coeff
            cur = out.get(merged)
            s = coeff if cur is None else cur + coeff
            if s.is_zero:
                out.pop(merged, None)
            else:
                out[merged] = s
    return DiffForm(alpha.arity, degree, out)


def exterior_derivative(alpha):
    if alpha.degree == alpha.arity:
        # d of a top form vanishes identically
        return DiffForm.zero(alpha.arity, alpha.arity)
    out = {}
    for idx, coeff in alpha.terms.items():
        for i in range(alpha.arity):
            d = coeff.partial_derivative(i)
            if d.is_zero or i in idx:
                continue
            pos = sum(1 for k in idx if k < i)
            nidx = tuple(sorted(idx + (i,)))
            contrib = d if pos % 2 == 0 else -d
            cur = out.get(nidx)
            s = contrib if cur is None else cur + contrib
            if s.is_zero:
                out.pop(nidx, None)
            else:
                out[nidx] = s
    return DiffForm(alpha.arity, alpha.degree + 1, out)


def differential(P):
    """d of a polynomial, as a 1-form."""
    return exterior_derivative(DiffForm.zero_form(P))


def interior_product(V, alpha):
    if alpha.degree == 0:
        raise ValueError("interior product needs a form of degree >= 1")
    if V.arity != alpha.arity:
        raise ValueError("arity mismatch")
    out = {}
    for idx, coeff in alpha.terms.items():
        for pos, i in enumerate(idx):
            v = V.coeffs[i]
            if v.is_zero:
                continue
            nidx = idx[:pos] + idx[pos + 1:]
            contrib = coeff * v
            if pos % 2:
                contrib = -contrib
            cur = out.get(nidx)
            s = contrib if cur is None else cur + contrib
            if s.is_zero:
                out.pop(nidx, None)
            else:
                out[nidx] = s
    return DiffForm(alpha.arity, alpha.degree - 1, out)


def lie_bracket(V, W):
    if V.arity != W.arity:
        raise ValueError("arity mismatch")
    return PolyVectorField([V.apply_to(w) - W.apply_to(v) for v, w in zip(V.coeffs, W.coeffs)])


def lie_derivative(V, alpha):
    """Cartan formula L_V = i_V d + d i_V (plain V(f) on 0-forms)."""
    if alpha.degree == 0:
        coeff = alpha.terms.get((), MultiPoly.zero(alpha.arity))
        return DiffForm.zero_form(V.apply_to(coeff))
    return interior_product(V, exterior_derivative(alpha)) + exterior_derivative(interior_product(V, alpha))


DescentResult = namedtuple("DescentResult", ["residual", "ok"])
IntegrabilityResult = namedtuple("IntegrabilityResult", ["residual", "ok"])
SaturationResult = namedtuple("SaturationResult", ["form", "factor"])


def descends_check(omega):
    """Residual i_R(omega); zero iff the 1-form descends to projective space."""
    if omega.degree != 1:
        raise ValueError("descent check applies to 1-forms")
    if not omega.has_homogeneous_coefficients():
        raise ValueError("descent check needs homogeneous coefficients of one degree")
    contracted = interior_product(euler_field(omega.arity), omega)
    residual = contracted.terms.get((), MultiPoly.zero(omega.arity))
    return DescentResult(residual, residual.is_zero)


def integrability_check(omega):
    """Residual omega ^ d(omega); zero iff the kernel distribution is integrable."""
    if omega.degree != 1:
        raise ValueError("integrability check applies to 1-forms")
    residual = wedge(omega, exterior_derivative(omega))
    return IntegrabilityResult(residual, residual.is_zero)


def _normalize_form(omega):
    """Scale to primitive integer coefficients, first nonzero coefficient
    polynomial having positive leading coefficient.  Returns (form, scale)
    with form == omega * scale."""
    if omega.is_zero:
        return omega, Fraction(1)
    first_idx = min(omega.terms)
    sample = next(iter(omega.terms[first_idx].terms.values()))
    if isinstance(sample, FpElement):
        lead = omega.terms[first_idx].leading_coefficient()
        scale = 1 / lead
        return omega * scale, scale
    num_gcd = 0
    den_lcm = 1
    for coeff in omega.terms.values():
        for c in coeff.terms.values():
            den_lcm = den_lcm * c.denominator // integer_gcd(den_lcm, c.denominator)
    for coeff in omega.terms.values():
        for c in coeff.terms.values():
            num_gcd = integer_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
    scale = Fraction(den_lcm, num_gcd)
    lead = omega.terms[first_idx].leading_coefficient()
    if lead * scale < 0:
        scale = -scale
    return omega * scale, scale


def saturate(omega):
    """Divide a 1-form by the gcd of its coefficients.

    Returns (form, factor) with factor * form == omega exactly; form is in
    the canonical primitive normalization, so factor is the exact cofactor,
    a scalar multiple of the normalized gcd.
    """
    if omega.degree != 1:
        raise ValueError("saturation applies to 1-forms")
    if omega.is_zero:
        raise ValueError("cannot saturate the zero form")
    coeffs = [c for c in omega.terms.values()]
    g = coefficient_gcd(coeffs)
    divided = DiffForm(omega.arity, 1, {idx: exact_divide(c, g) for idx, c in omega.terms.items()})
    form, scale = _normalize_form(divided)
    factor = g * (1 / scale)
    return SaturationResult(form, factor)


def pullback_form(matrix, eta, new_arity=None):
    """Pull a k-form back along the linear map sending new coordinates y to
    old coordinates z_i = sum_j matrix[i][j] y_j.

    matrix has one row per old variable (eta's arity) and one column per new
    variable.  Coefficients are composed with the map and each dz_i is
    replaced by sum_j matrix[i][j] dy_j.
    """
    if len(matrix) != eta.arity:
        raise ValueError("matrix has %d rows for a form of arity %d" % (len(matrix), eta.arity))
    if new_arity is None:
        new_arity = len(matrix[0]) if matrix else 0
    basis_images = []
    for i in range(eta.arity):
        row = matrix[i]
        basis_images.append(DiffForm(new_arity, 1, {
            (j,): MultiPoly.constant(new_arity, Fraction(row[j]))
            for j in range(new_arity) if row[j]
        }))
    result = DiffForm.zero(new_arity, eta.degree)
    for idx, coeff in eta.terms.items():
        pulled = DiffForm.zero_form(coeff.linear_substitute(matrix, new_arity))
        for i in idx:
            pulled = wedge(pulled, basis_images[i])
        result = result + pulled
    return result


# -- 1-form file format ----------------------------------------------------

def form_to_text(omega, var_names):
    """Serialize a 1-form: a vars line, then one coeff line per variable."""
    if omega.degree != 1:
        raise ValueError("the file format covers 1-forms")
    if len(var_names) != omega.arity:
        raise ValueError("got %d names for arity %d" % (len(var_names), omega.arity))
    lines = ["vars: %s" % " ".join(var_names)]
    for i, name in enumerate(var_names):
        coeff = omega.terms.get((i,), MultiPoly.zero(omega.arity))
        lines.append("coeff %s: %s" % (name, polytext.poly_to_text(coeff, var_names)))
    return "\n".join(lines) + "\n"


def parse_form_text(text):
    """Inverse of form_to_text; returns (DiffForm, var_names)."""
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("vars:"):
        raise polytext.PolyParseError("form file must begin with a 'vars:' line")
    var_names = tuple(lines[0][len("vars:"):].split())
    if not var_names:
        raise polytext.PolyParseError("empty variable list")
    arity = len(var_names)
    coeffs = {}
    for line in lines[1:]:
        if not line.startswith("coeff "):
            raise polytext.PolyParseError("unexpected line %r" % line)
        head, _, poly_text = line.partition(":")
        name = head[len("coeff "):].strip()
        if name not in var_names:
            raise polytext.PolyParseError("coefficient for unknown variable %r" % name)
        if name in coeffs:
            raise polytext.PolyParseError("duplicate coefficient line for %r" % name)
        coeffs[name] = polytext.parse_poly(poly_text.strip(), var_names)
    missing = [n for n in var_names if n not in coeffs]
    if missing:
        raise polytext.PolyParseError("missing coefficient lines for %s" % ", ".join(missing))
    form = DiffForm(arity, 1, {(i,): coeffs[n] for i, n in enumerate(var_names) if not coeffs[n].is_zero})
    return form, var_names


def two_form_report_items(omega2, var_names):
    """(key, polynomial text) pairs for a 2-form, keys like 'd a0^d a2'."""
    if omega2.degree != 2:
        raise ValueError("expected a 2-form")
    items = []
    for idx in sorted(omega2.terms):
        key = "^".join("d %s" % var_names[i] for i in idx)
        items.append((key, polytext.poly_to_text(omega2.terms[idx], var_names)))
    return items
