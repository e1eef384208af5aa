"""Genera as exponential series, their formal group laws, and the catalog.

A genus is described by its exponential series b(x) = x + b1 x^2 + ... over
a graded coefficient ring; the logarithm m(x) is the reverse series and the
group law is F(u1, u2) = b(m(u1) + m(u2)).  The catalog covers the familiar
examples (Todd, signature, c_n, Abel, two-parameter Todd, elliptic) together
with the Krichever genus built from Weierstrass functions.
"""

from __future__ import annotations

from fractions import Fraction

from toricgenera.algebra import (
    MultiSeries,
    Poly,
    QQ,
    make_ring,
)

F1 = Fraction(1)


class BsfglShapeError(ArithmeticError):
    """The group law is not of Krichever form."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or
                         "group law fails the Krichever shape "
                         "at degree %d" % degree)


class GenusSpec:
    """A genus: name, coefficient ring and exponential series.

    The exponential is a univariate series exact to ``order``; the
    logarithm is its reverse series (cached).  ``at_order`` rebuilds the
    same genus to higher precision without changing the ring.
    """

    def __init__(self, name, exponential, builder=None):
        if exponential.k != 1:
            raise ValueError("exponential must be univariate")
        if not exponential.constant_term().is_zero():
            raise ValueError("exponential must have zero constant term")
        if exponential.coefficient((1,)).constant_value() != 1:
            raise ValueError("exponential must start with x")
        self.name = name
        self.ring = exponential.ring
        self.exponential = exponential
        self._builder = builder
        self._logarithm = None

    @property
    def order(self):
        return self.exponential.order

    @property
    def logarithm(self):
        if self._logarithm is None:
            self._logarithm = self.exponential.revert()
        return self._logarithm

    def at_order(self, order):
        if order <= self.order:
            return self
        if self._builder is None:
            raise ValueError("genus %r cannot be extended beyond order %d"
                             % (self.name, self.order))
        return GenusSpec(self.name, self._builder(order), self._builder)

    def b_plus(self):
        """The unit series b(x)/x."""
        return self.exponential.shift_down(0)

    def exp_coefficient(self, j):
        """b_j, the coefficient of x^{j+1} in the exponential."""
        return self.exponential.coefficient((j + 1,))

    def __repr__(self):
        return "GenusSpec(%r, order=%d)" % (self.name, self.order)


class FGL:
    """A formal group law F(u1, u2) attached to a genus."""

    def __init__(self, spec, F):
        self.spec = spec
        self.F = F

    def m_series(self, m):
        """The power system [m](u) = b(m * logarithm(u))."""
        spec = self.spec
        out = spec.exponential.substitute([spec.logarithm.scale(m)])
        return out.truncate(self.F.order)

    def weight_series(self, w, k):
        """[w](u1..uk) = b(sum_i w_i m(u_i)); reduces to w.u mod decomposables."""
        return weight_series(self.spec, w, k).truncate(self.F.order)


def fgl_from_exponential(spec, order=None):
    """F(u1, u2) = b(m(u1) + m(u2)), truncated to the working order."""
    spec = spec if order is None else spec.at_order(order)
    order = spec.order if order is None else order
    m = spec.logarithm.truncate(order)
    g = m.embed(2, [0]) + m.embed(2, [1])
    return FGL(spec, spec.exponential.substitute([g]))


def logarithm_from_fgl(F):
    """Recover m from a group law: m'(u) = 1/(dF/du2 at u2=0), m(0) = 0."""
    if F.k != 2:
        raise ValueError("a formal group law has two variables")
    u = MultiSeries.variable(F.ring, 1, F.order, 0)
    if F.slice_var(1, 0) != u or F.slice_var(0, 0) != u:
        raise ValueError("group law is not unital")
    f1 = F.slice_var(1, 1)
    return f1.invert_unit().integrate().truncate(F.order)


def weight_series(spec, w, k):
    """The first Chern class series of a weight-w line bundle."""
    if len(w) != k:
        raise ValueError("weight length must equal the variable count")
    if not any(w):
        raise ValueError("zero weight vector")
    m = spec.logarithm
    g = MultiSeries.zero(spec.ring, k, m.order)
    for i, wi in enumerate(w):
        if wi:
            g = g + m.embed(k, [i]).scale(wi)
    return spec.exponential.substitute([g])


def conjugate_orientation(spec):
    """The complementary orientation a(x) = x^2 / b(x); a_+ = 1/b_+."""
    x = MultiSeries.variable(spec.ring, 1, spec.order, 0)
    return (x * spec.b_plus().invert_unit()).truncate(spec.order)


def projective_space_value(spec, n):
    """Genus of CP^n through the logarithm: (n+1) * m_n."""
    spec = spec.at_order(n + 1)
    return spec.logarithm.coefficient((n + 1,)) * (n + 1)


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

def _factorials(n):
    out = [1]
    for i in range(1, n + 1):
        out.append(out[-1] * i)
    return out


def _hurewicz(order, generators):
    ring = make_ring(*[("b%d" % j, 2 * j) for j in range(1, generators + 1)])

    def build(M):
        terms = {(1,): Poly.constant(ring, 1)}
        for j in range(1, generators + 1):
            if j + 1 <= M:
                terms[(j + 1,)] = Poly.gen(ring, "b%d" % j)
        return MultiSeries(ring, 1, M, terms)

    return GenusSpec("hurewicz", build(order), build)


def _todd(order):
    ring = make_ring(("z", 2))

    def build(M):
        fact = _factorials(M + 1)
        z = Poly.gen(ring, "z")
        terms = {(j + 1,): z ** j * Fraction(1, fact[j + 1]) for j in range(M)}
        return MultiSeries(ring, 1, M, terms)

    return GenusSpec("todd", build(order), build)


def _cn(order):
    ring = make_ring(("v", 2))

    def build(M):
        v = Poly.gen(ring, "v")
        terms = {(j + 1,): (-v) ** j for j in range(M)}
        return MultiSeries(ring, 1, M, terms)

    return GenusSpec("cn", build(order), build)


def _complete_homogeneous(ring, j):
    """h_j(y, z) = sum_{i=0..j} y^i z^(j-i)."""
    y, z = Poly.gen(ring, "y"), Poly.gen(ring, "z")
    out = Poly.zero(ring)
    for i in range(j + 1):
        out = out + y ** i * z ** (j - i)
    return out


def _abel(order):
    ring = make_ring(("y", 2), ("z", 2))

    def build(M):
        fact = _factorials(M + 1)
        terms = {(j + 1,): _complete_homogeneous(ring, j) * Fraction(1, fact[j + 1])
                 for j in range(M)}
        return MultiSeries(ring, 1, M, terms)

    return GenusSpec("abel", build(order), build)


def _t2(order):
    ring = make_ring(("y", 2), ("z", 2))

    def build(M):
        # (e^{yx} - e^{zx}) / (y e^{zx} - z e^{yx}), with the factor y - z
        # cancelled exactly from numerator and denominator so that y = z is
        # a legal specialization.
        fact = _factorials(M + 2)
        yz = Poly.gen(ring, "y") * Poly.gen(ring, "z")
        num = MultiSeries(ring, 1, M, {
            (j + 1,): _complete_homogeneous(ring, j) * Fraction(1, fact[j + 1])
            for j in range(M)})
        den_terms = {(0,): Poly.constant(ring, 1)}
        for m in range(2, M + 1):
            den_terms[(m,)] = -yz * _complete_homogeneous(ring, m - 2) \
                * Fraction(1, fact[m])
        den = MultiSeries(ring, 1, M, den_terms)
        return num * den.invert_unit()

    return GenusSpec("t2", build(order), build)


def _signature(order):
    ring = make_ring(("z", 2))

    def build(M):
        fact = _factorials(M + 1)
        z = Poly.gen(ring, "z")
        sinh = MultiSeries(ring, 1, M, {
            (2 * j + 1,): z ** (2 * j) * Fraction(1, fact[2 * j + 1])
            for j in range(0, (M + 1) // 2)})
        cosh = MultiSeries(ring, 1, M, {
            (2 * j,): z ** (2 * j) * Fraction(1, fact[2 * j])
            for j in range(0, M // 2 + 1)})
        return sinh * cosh.invert_unit()

    return GenusSpec("signature", build(order), build)


def _binomial_half(j):
    """Coefficient of w^j in (1+w)^(-1/2)."""
    out = F1
    for i in range(j):
        out *= Fraction(-1 - 2 * i, 2 * (i + 1))
    return out


def _elliptic(order):
    ring = make_ring(("delta", 4), ("eps", 8))

    def build(M):
        d, e = Poly.gen(ring, "delta"), Poly.gen(ring, "eps")
        # (1 - 2 delta t^2 + eps t^4)^(-1/2), integrated, then reverted
        w = MultiSeries(ring, 1, M, {(2,): d * -2, (4,): e})
        integrand = MultiSeries.constant(ring, 1, M, 1)
        power = MultiSeries.constant(ring, 1, M, 1)
        for j in range(1, M // 2 + 1):
            power = power * w
            if power.is_zero():
                break
            integrand = integrand + power.scale(_binomial_half(j))
        m = integrand.integrate().truncate(M)
        return m.revert()

    return GenusSpec("elliptic", build(order), build)


# -- Krichever genus --------------------------------------------------------

_KRING = make_ring(("a", 2), ("p2", 4), ("p3", 6), ("g2", 8))


def _weierstrass_derivative(poly):
    """The z-derivative on Q[a, p2, p3, g2]: p2 -> p3, p3 -> 6 p2^2 - g2/2."""
    ring = poly.ring
    images = {
        "a": Poly.zero(ring),
        "p2": Poly.gen(ring, "p3"),
        "p3": Poly.gen(ring, "p2") ** 2 * 6 - Poly.gen(ring, "g2") * Fraction(1, 2),
        "g2": Poly.zero(ring),
    }
    out = Poly.zero(ring)
    for e, c in poly.terms.items():
        for i, ei in enumerate(e):
            if not ei:
                continue
            name = ring[i].name
            de = list(e)
            de[i] -= 1
            out = out + Poly(ring, {tuple(de): c * ei}) * images[name]
    return out


def weierstrass_p_coefficients(count):
    """Laurent coefficients c_j of p(x) = 1/x^2 + sum c_j x^{2j-2}, j >= 2."""
    ring = _KRING
    p2, p3, g2 = (Poly.gen(ring, n) for n in ("p2", "p3", "g2"))
    g3 = p2 ** 3 * 4 - g2 * p2 - p3 ** 2
    c = {2: g2 * Fraction(1, 20), 3: g3 * Fraction(1, 28)}
    for j in range(4, count + 1):
        acc = Poly.zero(ring)
        for i in range(2, j - 1):
            acc = acc + c[i] * c[j - i]
        c[j] = acc * Fraction(3, (2 * j + 1) * (j - 3))
    return c


def _krichever(order):
    ring = _KRING

    def build(M):
        fact = _factorials(M + 2)
        # Taylor coefficients of p(z - s) in s, via the algebraic derivative
        wp = [Poly.gen(ring, "p2")]
        for _ in range(M):
            wp.append(_weierstrass_derivative(wp[-1]))
        # integral of zeta(z - s) - zeta(z) from 0 to x
        terms = {}
        for j in range(0, M - 1):
            coeff = wp[j] * Fraction((-1) ** j, fact[j + 2])
            terms[(j + 2,)] = coeff
        integral = MultiSeries(ring, 1, M, terms)
        # log(sigma(x)/x) = - sum c_j x^{2j} / (2j (2j-1))
        cs = weierstrass_p_coefficients(M // 2 + 1)
        sig_terms = {}
        for j, cj in cs.items():
            if 2 * j <= M:
                sig_terms[(2 * j,)] = cj * Fraction(-1, 2 * j * (2 * j - 1))
        log_sigma = MultiSeries(ring, 1, M, sig_terms)
        ax = MultiSeries(ring, 1, M, {(1,): Poly.gen(ring, "a")})
        exponent = ax + integral + log_sigma
        x = MultiSeries.variable(ring, 1, M, 0)
        return (x * exponent.exp()).truncate(M)

    return GenusSpec("krichever", build(order), build)


def krichever_exponential(order):
    """The Baker-Akhiezer exponential x e^{ax} / (x phi(x, z)) over
    Q[a, p2, p3, g2] with p2 = p(z), p3 = p'(z)."""
    return _krichever(order)


CATALOG_NAMES = ("augmentation", "hurewicz", "todd", "cn", "abel", "t2",
                 "signature", "elliptic", "krichever")


def catalog(name, order, generators=None):
    """Build a named genus to the requested order.

    ``generators`` selects the polynomial generator count of the hurewicz
    genus (default: order).  Exponentials are computed to order + 2 so a
    reversion or quotient never loses the requested precision.
    """
    internal = order + 2
    if name == "augmentation":
        def build(M):
            return MultiSeries.variable(QQ, 1, M, 0)
        return GenusSpec("augmentation", build(internal), build)
    if name == "hurewicz":
        return _hurewicz(internal, generators if generators else order)
    if name == "todd":
        return _todd(internal)
    if name == "cn":
        return _cn(internal)
    if name == "abel":
        return _abel(internal)
    if name == "t2":
        return _t2(internal)
    if name == "signature":
        return _signature(internal)
    if name == "elliptic":
        return _elliptic(internal)
    if name == "krichever":
        return _krichever(internal)
    raise KeyError("unknown genus %r" % name)


# ---------------------------------------------------------------------------
# Krichever shape of a group law
# ---------------------------------------------------------------------------

class BsfglShape:
    """Recovered parameters of F = u1 c(u2) + u2 c(u1) - a u1 u2 - Q u1^2 u2^2."""

    def __init__(self, a, c, d):
        self.a = a
        self.c = c
        self.d = d


def verify_bsfgl_shape(spec, order):
    """Recover (a, c, d) from the group law of ``spec`` and verify

        F = u1 c(u2) + u2 c(u1) - a u1 u2
            - u1^2 u2^2 (d(u1) - d(u2)) / (u1 c(u2) - u2 c(u1))

    as an identity of truncated series.  a is -2 f1 (forced: the linear
    coefficient of c must vanish), c = 1/m'(u) + a u, and d is read off the
    u2^2 coefficient of F.  Raises BsfglShapeError on failure.
    """
    M = order + 4  # margin so every recovered series is exact past `order`
    spec = spec.at_order(M)
    ring = spec.ring
    a = spec.exp_coefficient(1) * -2
    F = fgl_from_exponential(spec, M).F
    mprime = spec.logarithm.derivative()
    au = MultiSeries(ring, 1, M - 1, {(1,): a})
    c = mprime.invert_unit() + au
    if not c.coefficient((1,)).is_zero():
        raise BsfglShapeError(1, "linear term of c does not cancel")
    c2 = c.coefficient((2,))
    F2 = F.slice_var(1, 2)
    if not F2.constant_term().is_zero():
        raise BsfglShapeError(2, "group law is not unital")
    d = MultiSeries.constant(ring, 1, F2.order - 1, c2) - F2.shift_down(0)

    ce1 = c.embed(2, [0])
    ce2 = c.embed(2, [1])
    u1 = MultiSeries.variable(ring, 2, M, 0)
    u2 = MultiSeries.variable(ring, 2, M, 1)
    head = u1 * ce2 + u2 * ce1 - (u1 * u2).scale(a)
    dnum = d.embed(2, [0]) - d.embed(2, [1])
    dden = u1 * ce2 - u2 * ce1
    q = dnum.divide_linear((1, -1)) * dden.divide_linear((1, -1)).invert_unit()
    rhs = head - q * u1 * u1 * u2 * u2
    if not rhs.agrees_with(F, order):
        diff = rhs.truncate(order) - F.truncate(order)
        bad = min(sum(e) for e in diff.terms)
        raise BsfglShapeError(bad)
    return BsfglShape(a, c.truncate(order), d.truncate(order))


def elliptic_fgl_check(order):
    """Does the elliptic group law equal Euler's addition formula?"""
    spec = catalog("elliptic", order)
    F = fgl_from_exponential(spec, order).F
    ring = spec.ring
    d, e = Poly.gen(ring, "delta"), Poly.gen(ring, "eps")
    R = MultiSeries(ring, 1, order, {(0,): Poly.constant(ring, 1),
                                     (2,): d * -2, (4,): e})
    c = R.sqrt_unit()
    u1 = MultiSeries.variable(ring, 2, order, 0)
    u2 = MultiSeries.variable(ring, 2, order, 1)
    num = u1 * c.embed(2, [1]) + u2 * c.embed(2, [0])
    den = MultiSeries.constant(ring, 2, order, 1) - (u1 * u1 * u2 * u2).scale(e)
    return F.agrees_with(num * den.invert_unit(), order)


# ---------------------------------------------------------------------------
# characteristic-number evaluation
# ---------------------------------------------------------------------------

def partitions(n, cap=None):
    """All partitions of n as descending tuples."""
    cap = n if cap is None else cap
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def genus_from_chern_numbers(spec, n, chern):
    """Evaluate the genus from tangential characteristic numbers.

    ``chern`` maps each partition of n (descending tuple) to the
    characteristic number against the monomial-symmetric class of the
    normal bundle; the result is sum_w b^w chern(w).
    """
    spec = spec.at_order(n + 1)
    total = Poly.zero(spec.ring)
    for part in partitions(n):
        if part not in chern:
            raise KeyError("missing Chern number for partition %r" % (part,))
        coeff = Poly.constant(spec.ring, 1)
        for j in part:
            coeff = coeff * spec.exp_coefficient(j)
        total = total + coeff * Fraction(chern[part])
    return total


# monomial symmetric functions in terms of elementary symmetric ones, n <= 4
_MONOMIAL_IN_ELEMENTARY = {
    (1,): {(1,): 1},
    (2,): {(1, 1): 1, (2,): -2},
    (1, 1): {(2,): 1},
    (3,): {(1, 1, 1): 1, (2, 1): -3, (3,): 3},
    (2, 1): {(2, 1): 1, (3,): -3},
    (1, 1, 1): {(3,): 1},
    (4,): {(1, 1, 1, 1): 1, (2, 1, 1): -4, (2, 2): 2, (3, 1): 4, (4,): -4},
    (3, 1): {(2, 1, 1): 1, (2, 2): -2, (3, 1): -1, (4,): 4},
    (2, 2): {(2, 2): 1, (3, 1): -2, (4,): 2},
    (2, 1, 1): {(3, 1): 1, (4,): -4},
    (1, 1, 1, 1): {(4,): 1},
}


def chern_from_elementary(n, elementary):
    """Convert Chern data c_1..c_n (elementary basis) to the monomial basis.

    ``elementary`` maps j to the number for c_j; values may be any exact
    rationals.  Supported for n <= 4.
    """
    if n > 4:
        raise ValueError("conversion table only covers n <= 4")
    out = {}
    for part in partitions(n):
        total = Fraction(0)
        for epart, coeff in _MONOMIAL_IN_ELEMENTARY.get(part, {}).items():
            prod = Fraction(coeff)
            for j in epart:
                prod *= Fraction(elementary.get(j, 0))
            total += prod
        out[part] = total
    return out
