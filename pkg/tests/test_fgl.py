from fractions import Fraction

import pytest

from toricgenera.algebra import MultiSeries, Poly, QQ, make_ring
from toricgenera.fgl import (
    CATALOG_NAMES,
    BsfglShapeError,
    catalog,
    chern_from_elementary,
    conjugate_orientation,
    elliptic_fgl_check,
    fgl_from_exponential,
    genus_from_chern_numbers,
    krichever_exponential,
    logarithm_from_fgl,
    partitions,
    projective_space_value,
    verify_bsfgl_shape,
    weight_series,
)

F = Fraction


def _gen(ring, name):
    return Poly.gen(ring, name)


# ---------------------------------------------------------------------------
# catalog exponentials: frozen low-order coefficients
# ---------------------------------------------------------------------------

def test_todd_coefficients():
    td = catalog("todd", 6)
    z = _gen(td.ring, "z")
    assert td.exp_coefficient(1) == z * F(1, 2)
    assert td.exp_coefficient(2) == z * z * F(1, 6)


def test_cn_coefficients():
    cg = catalog("cn", 6)
    v = _gen(cg.ring, "v")
    assert cg.exp_coefficient(1) == -v
    assert cg.exp_coefficient(2) == v * v
    assert cg.exp_coefficient(3) == -(v ** 3)


def test_abel_specialization_y_equals_z():
    # at y = z the exponential degenerates to x e^{yx}
    ab = catalog("abel", 6)
    ring = ab.ring
    y = _gen(ring, "y")
    fact = 1
    for j in range(0, 6):
        if j:
            fact *= j
        coeff = ab.exp_coefficient(j).substitute_gens(ring, {"z": y})
        assert coeff == y ** j * F(1, fact)


def test_signature_is_tanh():
    sg = catalog("signature", 7)
    z = _gen(sg.ring, "z")
    # tanh(zx)/z = x - z^2 x^3/3 + 2 z^4 x^5/15 - 17 z^6 x^7/315
    assert sg.exp_coefficient(1).is_zero()
    assert sg.exp_coefficient(2) == z * z * F(-1, 3)
    assert sg.exp_coefficient(4) == z ** 4 * F(2, 15)
    assert sg.exp_coefficient(6) == z ** 6 * F(-17, 315)


def test_elliptic_logarithm_integrand():
    ell = catalog("elliptic", 6)
    d, e = _gen(ell.ring, "delta"), _gen(ell.ring, "eps")
    m = ell.logarithm
    # integral of (1 - 2 d t^2 + e t^4)^(-1/2): x + d x^3/3 + (3d^2 - e) x^5/10
    assert m.coefficient((3,)) == d * F(1, 3)
    assert m.coefficient((5,)) == (d * d * 3 - e) * F(1, 10)


def test_hurewicz_is_generic_polynomial():
    hr = catalog("hurewicz", 5)
    assert hr.exp_coefficient(1) == _gen(hr.ring, "b1")
    assert hr.exp_coefficient(4) == _gen(hr.ring, "b4")
    # m1 = -b1 under reversion
    assert hr.logarithm.coefficient((2,)) == -_gen(hr.ring, "b1")


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        catalog("nope", 4)


# ---------------------------------------------------------------------------
# group laws
# ---------------------------------------------------------------------------

def test_fgl_additive():
    ag = catalog("augmentation", 6)
    Fs = fgl_from_exponential(ag).F
    u1 = MultiSeries.variable(QQ, 2, Fs.order, 0)
    u2 = MultiSeries.variable(QQ, 2, Fs.order, 1)
    assert Fs == u1 + u2


def test_fgl_todd_multiplicative():
    td = catalog("todd", 6)
    Fs = fgl_from_exponential(td, 4).F
    z = _gen(td.ring, "z")
    u1 = MultiSeries.variable(td.ring, 2, 4, 0)
    u2 = MultiSeries.variable(td.ring, 2, 4, 1)
    assert Fs == u1 + u2 + (u1 * u2).scale(z)


def test_fgl_hurewicz_leading_terms_and_associativity():
    hr = catalog("hurewicz", 6)
    law = fgl_from_exponential(hr, 6)
    b1 = _gen(hr.ring, "b1")
    assert law.F.coefficient((1, 1)) == b1 * 2  # equals -2 m1
    _assert_fgl_axioms(law.F, 6)


def _assert_fgl_axioms(Fs, order):
    ring = Fs.ring
    u = MultiSeries.variable(ring, 1, order, 0)
    # unitality
    assert Fs.slice_var(1, 0).agrees_with(u, order)
    assert Fs.slice_var(0, 0).agrees_with(u, order)
    # commutativity
    flipped = MultiSeries(ring, 2, Fs.order,
                          {(e[1], e[0]): p for e, p in Fs.terms.items()})
    assert flipped == Fs
    # associativity on three variables
    u1 = MultiSeries.variable(ring, 3, order, 0)
    u2 = MultiSeries.variable(ring, 3, order, 1)
    u3 = MultiSeries.variable(ring, 3, order, 2)
    F12 = Fs.substitute([u1, u2])
    F23 = Fs.substitute([u2, u3])
    left = Fs.substitute([F12, u3])
    right = Fs.substitute([u1, F23])
    assert left == right


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_fgl_axioms_all_catalog(name):
    spec = catalog(name, 4)
    law = fgl_from_exponential(spec, 4)
    _assert_fgl_axioms(law.F, 4)


def test_logarithm_from_fgl_roundtrips():
    for name in ("todd", "t2", "elliptic"):
        spec = catalog(name, 6)
        law = fgl_from_exponential(spec, 6)
        m = logarithm_from_fgl(law.F)
        assert m.agrees_with(spec.logarithm, 6)


def test_logarithm_from_fgl_todd_closed_form():
    td = catalog("todd", 6)
    m = logarithm_from_fgl(fgl_from_exponential(td, 6).F)
    z = _gen(td.ring, "z")
    for j in range(1, 7):
        assert m.coefficient((j,)) == z ** (j - 1) * F((-1) ** (j - 1), j)


def test_m_series():
    td = catalog("todd", 6)
    law = fgl_from_exponential(td, 6)
    u = MultiSeries.variable(td.ring, 1, 6, 0)
    assert law.m_series(1) == u
    assert law.m_series(0).is_zero()
    # [-1](u) = -u/(1 + zu)
    z = _gen(td.ring, "z")
    expect = MultiSeries(td.ring, 1, 6, {
        (j,): z ** (j - 1) * F((-1) ** j) for j in range(1, 7)})
    assert law.m_series(-1) == expect


def test_m_series_homomorphism_property():
    for name in CATALOG_NAMES:
        spec = catalog(name, 6)
        law = fgl_from_exponential(spec, 6)
        series = {m: law.m_series(m) for m in range(-2, 4)}
        for p in range(-2, 4):
            for q in range(-2, 4):
                if -2 <= p + q <= 3:
                    got = law.F.substitute([series[p], series[q]])
                    assert got == series[p + q], (name, p, q)


def test_weight_series():
    ag = catalog("augmentation", 6)
    ws = weight_series(ag, (2, -1), 2)
    u1 = MultiSeries.variable(QQ, 2, 6, 0)
    u2 = MultiSeries.variable(QQ, 2, 6, 1)
    assert ws == u1.scale(2) - u2

    td = catalog("todd", 6)
    for name in ("todd", "t2", "krichever"):
        spec = catalog(name, 5)
        k = 3
        for i in range(k):
            w = tuple(1 if j == i else 0 for j in range(k))
            assert weight_series(spec, w, k) == \
                MultiSeries.variable(spec.ring, k, spec.order, i)

    # todd with w = (1, 1) is the multiplicative group law on the diagonal
    ws = weight_series(td, (1, 1), 2)
    law = fgl_from_exponential(td, ws.order)
    assert ws == law.F

    with pytest.raises(ValueError):
        weight_series(td, (0, 0), 2)


def test_weight_series_reduces_to_linear_mod_decomposables():
    for name in ("t2", "elliptic", "krichever", "hurewicz"):
        spec = catalog(name, 4)
        ws = weight_series(spec, (2, -3), 2)
        lin = ws.homogeneous_component(1)
        expect = MultiSeries.linear_form(spec.ring, 2, ws.order, (2, -3))
        assert lin == expect


# ---------------------------------------------------------------------------
# specialization lattice
# ---------------------------------------------------------------------------

def _specialized(spec, images, target):
    """Exponential of ``spec`` with generators mapped into target's ring."""
    return MultiSeries(target.ring, 1, spec.order, {
        e: p.substitute_gens(target.ring, images)
        for e, p in spec.exponential.terms.items()})


def test_t2_specializes_to_todd_signature_cn():
    t2 = catalog("t2", 8)
    td = catalog("todd", 8)
    sg = catalog("signature", 8)
    cg = catalog("cn", 8)
    z_td = _gen(td.ring, "z")
    assert _specialized(t2, {"y": 0, "z": z_td}, td) == td.exponential
    z_sg = _gen(sg.ring, "z")
    assert _specialized(t2, {"y": -z_sg, "z": z_sg}, sg) == sg.exponential
    v = _gen(cg.ring, "v")
    assert _specialized(t2, {"y": -v, "z": -v}, cg) == cg.exponential


def test_abel_agrees_with_t2_and_todd_at_y_zero():
    ab = catalog("abel", 8)
    td = catalog("todd", 8)
    z_td = _gen(td.ring, "z")
    assert _specialized(ab, {"y": 0, "z": z_td}, td) == td.exponential


# ---------------------------------------------------------------------------
# conjugate orientation
# ---------------------------------------------------------------------------

def test_conjugate_orientation_hurewicz():
    hr = catalog("hurewicz", 6)
    a = conjugate_orientation(hr)
    b1, b2, b3 = (_gen(hr.ring, n) for n in ("b1", "b2", "b3"))
    assert a.coefficient((2,)) == -b1
    assert a.coefficient((3,)) == b1 * b1 - b2
    assert a.coefficient((4,)) == -(b1 ** 3) + b1 * b2 * 2 - b3


def test_conjugate_orientation_additive():
    ag = catalog("augmentation", 6)
    a = conjugate_orientation(ag)
    assert a == MultiSeries.variable(QQ, 1, 6, 0)


# ---------------------------------------------------------------------------
# Krichever exponential and the Krichever shape
# ---------------------------------------------------------------------------

def test_krichever_low_coefficients():
    kv = krichever_exponential(6)
    ring = kv.ring
    a, p2, p3 = (_gen(ring, n) for n in ("a", "p2", "p3"))
    # f = x (1 + a x + (a^2/2 + p2/2) x^2 + ...)
    assert kv.exp_coefficient(1) == a
    assert kv.exp_coefficient(2) == (a * a + p2) * F(1, 2)
    x4 = kv.exp_coefficient(3)
    # x^4 coefficient: a^3/6 + a p2/2 - p3/6
    assert x4 == a ** 3 * F(1, 6) + a * p2 * F(1, 2) - p3 * F(1, 6)


def test_krichever_homogeneous_grading():
    kv = krichever_exponential(8)
    for j in range(1, 8):
        degs = kv.exp_coefficient(j).weighted_degrees()
        assert degs <= {2 * j}


def test_bsfgl_shape_abel():
    ab = catalog("abel", 6)
    shape = verify_bsfgl_shape(ab, 6)
    y, z = _gen(ab.ring, "y"), _gen(ab.ring, "z")
    assert shape.a == -(y + z)
    assert shape.d.is_zero()


def test_bsfgl_shape_t2():
    t2 = catalog("t2", 6)
    shape = verify_bsfgl_shape(t2, 6)
    y, z = _gen(t2.ring, "y"), _gen(t2.ring, "z")
    yz = y * z
    u = MultiSeries.variable(t2.ring, 1, 6, 0)
    assert shape.a == -(y + z)
    assert shape.c == MultiSeries.constant(t2.ring, 1, 6, 1) + (u * u).scale(yz)
    expect_d = -u.scale(yz * (y + z)) - (u * u).scale(yz * yz)
    assert shape.d == expect_d


def test_bsfgl_shape_elliptic():
    ell = catalog("elliptic", 6)
    shape = verify_bsfgl_shape(ell, 6)
    d, e = _gen(ell.ring, "delta"), _gen(ell.ring, "eps")
    u = MultiSeries.variable(ell.ring, 1, 6, 0)
    assert shape.a.is_zero()
    assert shape.d == -(u * u).scale(e)
    R = MultiSeries(ell.ring, 1, 6, {(0,): Poly.constant(ell.ring, 1),
                                     (2,): d * -2, (4,): e})
    assert (shape.c * shape.c) == R


def test_bsfgl_shape_krichever_passes():
    kv = krichever_exponential(6)
    shape = verify_bsfgl_shape(kv, 6)
    a = _gen(kv.ring, "a")
    assert shape.a == a * -2


def test_bsfgl_shape_rejects_generic_law():
    hr = catalog("hurewicz", 6, generators=6)
    with pytest.raises(BsfglShapeError):
        verify_bsfgl_shape(hr, 6)


def test_fks_congruences_krichever():
    # 2f1 = -a, 3f2 = c2, 4f3 = c3, 6f3 = -d1, 5f4 = c4, 10f4 = -d2,
    # modulo monomials that are decomposable (generator-exponent sum >= 2)
    kv = krichever_exponential(8)
    shape = verify_bsfgl_shape(kv, 6)

    def indecomposable(poly):
        return Poly(poly.ring, {e: c for e, c in poly.terms.items()
                                if sum(e) < 2})

    f = [kv.exp_coefficient(j) for j in range(5)]
    c = [shape.c.coefficient((j,)) for j in range(5)]
    d = [shape.d.coefficient((j,)) for j in range(3)]
    assert f[1] * 2 == -shape.a
    assert indecomposable(f[2] * 3) == indecomposable(c[2])
    assert indecomposable(f[3] * 4) == indecomposable(c[3])
    assert indecomposable(f[3] * 6) == indecomposable(-d[1])
    assert indecomposable(f[4] * 5) == indecomposable(c[4])
    assert indecomposable(f[4] * 10) == indecomposable(-d[2])


def test_elliptic_fgl_check():
    assert elliptic_fgl_check(4)
    assert elliptic_fgl_check(8)


# ---------------------------------------------------------------------------
# characteristic numbers
# ---------------------------------------------------------------------------

def test_genus_from_chern_numbers_todd_cp2():
    td = catalog("todd", 4)
    z = _gen(td.ring, "z")
    value = genus_from_chern_numbers(td, 2, {(1, 1): 6, (2,): -3})
    assert value == z * z
    assert value == projective_space_value(td, 2)


def test_genus_from_chern_numbers_augmentation_and_point():
    ag = catalog("augmentation", 4)
    assert genus_from_chern_numbers(ag, 2, {(1, 1): 5, (2,): 7}).is_zero()
    assert genus_from_chern_numbers(ag, 0, {(): 1}).constant_value() == 1


def test_genus_from_chern_numbers_missing_partition():
    td = catalog("todd", 4)
    with pytest.raises(KeyError):
        genus_from_chern_numbers(td, 2, {(2,): -3})


def test_chern_from_elementary_against_brute_force():
    # the monomial-in-elementary table, verified symbolically in four
    # variables (enough for every partition of n <= 4)
    from itertools import combinations, permutations

    from toricgenera.fgl import _MONOMIAL_IN_ELEMENTARY

    xs = make_ring(("x1", 2), ("x2", 2), ("x3", 2), ("x4", 2))
    gens = [Poly.gen(xs, "x%d" % i) for i in range(1, 5)]

    def elementary(j):
        out = Poly.zero(xs)
        for combo in combinations(range(4), j):
            prod = Poly.constant(xs, 1)
            for i in combo:
                prod = prod * gens[i]
            out = out + prod
        return out

    def monomial(part):
        out = Poly.zero(xs)
        exps = tuple(part) + (0,) * (4 - len(part))
        for perm in set(permutations(exps)):
            prod = Poly.constant(xs, 1)
            for i, e in enumerate(perm):
                prod = prod * gens[i] ** e
            out = out + prod
        return out

    for part, table in _MONOMIAL_IN_ELEMENTARY.items():
        rhs = Poly.zero(xs)
        for epart, coeff in table.items():
            prod = Poly.constant(xs, coeff)
            for j in epart:
                prod = prod * elementary(j)
            rhs = rhs + prod
        assert monomial(part) == rhs, part

    # spot value check through the conversion helper
    converted = chern_from_elementary(2, {1: F(-3), 2: F(6)})
    assert converted[(1, 1)] == 6
    assert converted[(2,)] == F(-3) ** 2 - 12


def test_projective_space_values():
    td = catalog("todd", 5)
    z = _gen(td.ring, "z")
    for n in range(1, 5):
        assert projective_space_value(td, n) == (-z) ** n
    cg = catalog("cn", 5)
    v = _gen(cg.ring, "v")
    for n in range(1, 4):
        assert projective_space_value(cg, n) == v ** n * (n + 1)
    t2 = catalog("t2", 4)
    y, z = _gen(t2.ring, "y"), _gen(t2.ring, "z")
    # t2(CP^j) = (-1)^j sum y^i z^(j-i)
    assert projective_space_value(t2, 1) == -(y + z)
    assert projective_space_value(t2, 2) == y * y + y * z + z * z
