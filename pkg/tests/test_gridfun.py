"""Grid functions: evaluation, algebra, certificates, comparisons,
transport between grids, and the three-valued continuity check."""

from fractions import Fraction

import pytest

from hypergrid import (
    Certificate,
    ContinuityVerdict,
    DomainError,
    GridFunction,
    GridMismatchError,
    GridSpec,
    ObservationContext,
    ResourceLimitError,
    SamplingPlan,
    constant,
    continuity_check,
    exp_fn,
    fn_indiscernible,
    grid_maps,
    identity,
    monomial,
    square,
    step,
    transport,
)
from hypergrid.gridfun import (
    add_certificates,
    constant_certificate,
    identity_certificate,
    multiply_certificates,
    scale_certificate,
)

CTX = ObservationContext(H=1000, K=10**6)
PLAN = SamplingPlan(random_points=64, dyadic_depth=6, exhaustive_limit=4097)


def test_evaluation_follows_the_rule():
    spec = GridSpec(10)
    f = square(spec)
    assert f(spec.point(3)) == Fraction(9, 100)
    assert f(spec.point(10)) == 1


def test_points_from_other_grids_are_rejected():
    f = square(GridSpec(10))
    with pytest.raises(GridMismatchError):
        f(GridSpec(11).point(3))


def test_pointwise_builds_from_a_value_rule():
    spec = GridSpec(8)
    f = GridFunction.pointwise(spec, lambda v: 2 * v + 1)
    assert f(spec.point(4)) == 2


def test_memoized_rules_are_evaluated_once_per_point():
    spec = GridSpec(16)
    calls = []
    f = GridFunction(spec, lambda p: (calls.append(p.index), p.value)[1], memoize=True)
    p = spec.point(5)
    assert f(p) == f(p) == Fraction(5, 16)
    assert calls == [5]


def test_difference_and_quotient_of_the_square():
    spec = GridSpec(100)
    f = square(spec)
    p = spec.point(30)
    # f(x + eps) - f(x) = 2 x eps + eps^2
    assert f.difference(p) == 2 * p.value * spec.epsilon + spec.epsilon**2
    assert f.quotient(p) == 2 * p.value + spec.epsilon


def test_materialize_small_grids():
    spec = GridSpec(4)
    assert identity(spec).materialize() == [Fraction(n, 4) for n in range(5)]


def test_materialize_refuses_astronomical_grids():
    f = identity(GridSpec(2**24))
    with pytest.raises(ResourceLimitError):
        f.materialize()


def test_algebra_matches_pointwise_arithmetic():
    spec = GridSpec(50)
    f, g = square(spec), identity(spec)
    p = spec.point(20)
    v = p.value
    assert (f + g)(p) == v**2 + v
    assert (f - g)(p) == v**2 - v
    assert (f * g)(p) == v**3
    assert (-f)(p) == -(v**2)
    assert (f + 1)(p) == v**2 + 1
    assert (1 + f)(p) == v**2 + 1
    assert (2 - f)(p) == 2 - v**2
    assert (f * 3)(p) == 3 * v**2
    assert (Fraction(1, 2) * f)(p) == v**2 / 2


def test_algebra_rejects_mixed_grids():
    with pytest.raises(GridMismatchError):
        square(GridSpec(10)) + square(GridSpec(20))


def test_certificates_propagate_through_the_algebra():
    spec = GridSpec(100)
    f, g = square(spec), identity(spec)
    for h in (f + g, f - g, f * g, 3 * f, f + 1, -f):
        assert h.certificate is not None
        assert h.quotient_certificate is not None


def test_uncertified_operands_drop_certificates():
    spec = GridSpec(100)
    bare = GridFunction(spec, lambda p: p.value)
    assert bare.certificate is None
    assert (square(spec) + bare).certificate is None
    assert (square(spec) * bare).quotient_certificate is None


def test_certificate_combinators():
    c = constant_certificate(Fraction(-5))
    assert c.bound == 5 and c(Fraction(1, 2)) == 0
    i = identity_certificate()
    assert i.bound == 1 and i(Fraction(1, 3)) == Fraction(1, 3)
    s = add_certificates(c, i)
    assert s.bound == 6 and s(Fraction(1, 4)) == Fraction(1, 4)
    t = scale_certificate(Fraction(-2), i)
    assert t.bound == 2 and t(Fraction(1, 4)) == Fraction(1, 2)
    m = multiply_certificates(Certificate(Fraction(2), lambda d: d), i)
    assert m.bound == 2
    # bounded-factor rule: 2 * d + 1 * d
    assert m(Fraction(1, 8)) == Fraction(3, 8)


def test_scalar_shift_keeps_the_quotient_certificate():
    # shifting by a constant changes the bound but not any modulus
    spec = GridSpec(100)
    shifted = square(spec) + 7
    assert shifted.certificate.bound == Fraction(8)
    assert shifted.certificate(Fraction(1, 10)) == Fraction(2, 10)
    assert shifted.quotient_certificate.bound == 2


def test_fn_indiscernible_accepts_identical_functions():
    spec = GridSpec(200)
    result = fn_indiscernible(square(spec), square(spec), CTX, PLAN)
    assert result
    assert result.max_gap == 0
    assert result.mode == "exhaustive"
    assert result.witness is None


def test_fn_indiscernible_reports_a_witness():
    spec = GridSpec(200)
    result = fn_indiscernible(square(spec), identity(spec), CTX, PLAN)
    assert not result
    assert result.witness is not None
    assert result.max_gap > CTX.infinitesimal_scale


def test_fn_indiscernible_requires_a_common_grid():
    with pytest.raises(GridMismatchError):
        fn_indiscernible(square(GridSpec(10)), square(GridSpec(20)), CTX)


def test_grid_maps_round_between_grids():
    a, b = GridSpec(10), GridSpec(30)
    to_b, from_b = grid_maps(a, b)
    assert to_b(a.point(3)).value == Fraction(3, 10)
    assert from_b(b.point(7)).value == Fraction(2, 10)
    # roundtrip moves a point by less than both mesh widths combined
    for p in a.points():
        back = from_b(to_b(p))
        assert abs(back.value - p.value) < a.epsilon + b.epsilon


def test_transport_carries_values_along_the_equivalence():
    a, b = GridSpec(10), GridSpec(30)
    to_b, from_b = grid_maps(a, b)
    g = transport(square(a), to_b, from_b)
    assert g.spec == b
    assert g(b.point(9)) == Fraction(3, 10) ** 2


def test_transport_rejects_maps_landing_off_the_source_grid():
    a, b = GridSpec(10), GridSpec(30)
    to_b, _ = grid_maps(a, b)
    bad_from = lambda y: GridSpec(17).point(0)
    with pytest.raises(GridMismatchError):
        transport(square(a), to_b, bad_from)


def test_transport_stretches_the_certificate_by_one_source_mesh():
    a, b = GridSpec(10), GridSpec(30)
    to_b, from_b = grid_maps(a, b)
    g = transport(square(a), to_b, from_b)
    src = square(a).certificate
    d = Fraction(1, 7)
    assert g.certificate.bound == src.bound
    assert g.certificate(d) == src.modulus(d + a.epsilon)


def test_continuity_certified_for_certified_functions():
    verdict = continuity_check(square(GridSpec(10**6)), CTX, PLAN)
    assert verdict.status == ContinuityVerdict.CERTIFIED
    assert bool(verdict)
    # the reported scale is admissible and actually works
    assert GridSpec(10**6).epsilon <= verdict.scale <= CTX.infinitesimal_scale
    assert square(GridSpec(10**6)).certificate(verdict.scale) <= CTX.infinitesimal_scale


def test_continuity_sampled_ok_without_a_certificate():
    spec = GridSpec(4096)
    bare = GridFunction(spec, lambda p: p.value)
    verdict = continuity_check(bare, CTX, PLAN)
    assert verdict.status == ContinuityVerdict.SAMPLED_OK
    assert bool(verdict)


def test_continuity_refuted_with_an_adjacent_witness():
    spec = GridSpec(4096)
    verdict = continuity_check(step(spec), CTX, PLAN)
    assert verdict.status == ContinuityVerdict.REFUTED
    assert not verdict
    a, b = verdict.witness
    assert b.index == a.index + 1
    assert abs(step(spec)(b) - step(spec)(a)) > CTX.infinitesimal_scale


def test_weak_certificates_fall_back_to_sampling():
    spec = GridSpec(4096)
    # modulus too large to certify at H=1000, but values are constant
    f = GridFunction(spec, lambda p: Fraction(0), Certificate(Fraction(1), lambda d: Fraction(1)))
    verdict = continuity_check(f, CTX, PLAN)
    assert verdict.status == ContinuityVerdict.SAMPLED_OK


def test_exp_fn_is_certified_continuous():
    verdict = continuity_check(exp_fn(GridSpec(2**20)), CTX, PLAN)
    assert verdict.status == ContinuityVerdict.CERTIFIED


def test_constant_has_zero_moduli():
    spec = GridSpec(10)
    f = constant(spec, Fraction(5, 3))
    assert f.certificate.bound == Fraction(5, 3)
    assert f.certificate(Fraction(1)) == 0
    assert f.quotient_certificate(Fraction(1)) == 0


def test_monomial_certificates_are_sound_on_sampled_pairs():
    spec = GridSpec(512)
    f = monomial(spec, 3)
    omega = f.certificate.modulus
    for i in range(0, 512, 7):
        for j in range(i + 1, min(i + 40, 513), 11):
            a, b = spec.point(i), spec.point(j)
            assert abs(f(b) - f(a)) <= omega(b.value - a.value)


def test_monomial_rejects_negative_exponents():
    with pytest.raises(DomainError):
        monomial(GridSpec(10), -1)
