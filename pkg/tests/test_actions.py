import random

import pytest

from noethercheck.actions import (
    FieldAutomorphism,
    GroupAction,
    check_affine_form,
    check_affine_single,
    check_claimed_action,
    check_faithful,
    check_relations,
    dihedral_eigenvector,
    modular_eigenvector,
    regular_representation,
    regular_variable,
    twisted_eigenvector_pair,
    verify_theorem_2_3,
    verify_theorem_2_3_hypotheses,
)
from noethercheck.cyclotomic import CycField
from noethercheck.groups import GroupElement, GroupSpec, enumerate_elements, multiply, sigma, tau
from noethercheck.ratfield import FuncField


def test_regular_representation_matches_multiplication():
    spec = GroupSpec("M", 2, 3)
    ff, action = regular_representation(spec, CycField(2))
    for h in enumerate_elements(spec):
        expected = regular_variable(ff, multiply(sigma(), h, spec))
        assert action.sigma.apply(regular_variable(ff, h)).equals(expected)
        expected_t = regular_variable(ff, multiply(tau(), h, spec))
        assert action.tau.apply(regular_variable(ff, h)).equals(expected_t)


def test_identity_element_acts_trivially():
    spec = GroupSpec("D", 2, 4)
    ff, action = regular_representation(spec, CycField(4))
    ident = action.element_automorphism(GroupElement(0, 0))
    for name in ff.space.names:
        assert ident.images[name].equals(ff.var(name))


@pytest.mark.parametrize("family", ["M", "D", "SD", "Q"])
def test_regular_representation_faithful(family):
    spec = GroupSpec(family, 2, 4)
    ff, action = regular_representation(spec, CycField(4))
    verdict = check_faithful(action, list(ff.space.names))
    assert verdict.ok, verdict.detail


def test_regular_representation_relations():
    spec = GroupSpec("D", 2, 4)
    _, action = regular_representation(spec, CycField(4))
    verdict = check_relations(action)
    assert verdict.ok, verdict.detail


def test_modular_eigenvector_claims():
    # sigma^p(v) = xi v and tau(v) = v for the modular group at p = 3, n = 3
    spec = GroupSpec("M", 3, 3)
    field = CycField(3)
    ff, action = regular_representation(spec, field)
    v = modular_eigenvector(spec, ff)
    sigma_p = action.sigma.power(3)
    assert sigma_p.apply(v).equals(ff.zeta() * v)
    assert action.tau.apply(v).equals(v)


def test_modular_eigenvector_orbit_properties():
    # sigma(x_{p-1}) = xi x_0 and tau(x_i) = eta^-i x_i
    spec = GroupSpec("M", 3, 3)
    field = CycField(3)
    ff, action = regular_representation(spec, field)
    v = modular_eigenvector(spec, ff)
    xs = [v]
    for _ in range(2):
        xs.append(action.sigma.apply(xs[-1]))
    assert action.sigma.apply(xs[2]).equals(ff.zeta() * xs[0])
    eta = field.zeta()  # eta = xi^(p^(n-3)) = xi at n = 3
    for i, x in enumerate(xs):
        assert action.tau.apply(x).equals(ff.const(eta ** (-i)) * x)


def test_dihedral_eigenvector_claim():
    spec = GroupSpec("D", 2, 4)
    ff, action = regular_representation(spec, CycField(4))
    v = dihedral_eigenvector(spec, ff)
    assert action.sigma.power(2).apply(v).equals(ff.zeta() * v)


def test_twisted_eigenvector_pair_claims():
    spec = GroupSpec("D", 2, 4)
    a = -1 % 8
    ff, action = regular_representation(spec, CycField(8), galois_exp=a)
    v1, v2 = twisted_eigenvector_pair(spec, ff, a)
    assert action.sigma.apply(v1).equals(ff.zeta() * v1)
    assert action.sigma.apply(v2).equals(ff.zeta(a) * v2)
    assert action.lam.apply(v1).equals(v2)
    assert action.lam.apply(v2).equals(v1)


def test_check_claimed_action_identity():
    ff = FuncField.make(["x", "y"], CycField(4))
    ident = FieldAutomorphism.identity(ff)
    subject = (ff.var("x") + ff.one()) / ff.var("y")
    assert check_claimed_action(ident, subject, subject).ok
    bad = check_claimed_action(ident, subject, subject + ff.one())
    assert not bad.ok and "difference" in bad.detail


def test_claimed_action_with_galois_coefficients():
    # lambda(z0) = 1/z0 for z0 = y0 y1^-4 y2^-2 y3^2 under the first twisted
    # subcase's y-stage table at n = 4
    field = CycField(8)
    ff = FuncField.make(["y0", "y1", "y2", "y3"], field)
    y0, y1, y2, y3 = (ff.var(f"y{i}") for i in range(4))
    lam = FieldAutomorphism.make(
        ff,
        {"y0": y2**8 / y0, "y1": y2 * y3 / y1, "y2": y2, "y3": y3},
        coeff_exp=-1, name="lambda",
    )
    z0 = y0 * y1**-4 * y2**-2 * y3**2
    assert check_claimed_action(lam, z0, 1 / z0).ok


def test_semilinearity():
    rng = random.Random(19)
    field = CycField(8)
    ff = FuncField.make(["x", "y"], field)
    auto = FieldAutomorphism.make(
        ff, {"x": 1 / ff.var("x"), "y": ff.var("x") * ff.var("y")},
        coeff_exp=3, name="phi",
    )
    for _ in range(5):
        c = field.zeta(rng.randrange(8)) + field.from_rational(rng.randint(-3, 3))
        f = ff.var("x") ** rng.randint(-2, 2) + ff.const(rng.randint(1, 4)) * ff.var("y")
        lhs = auto.apply(ff.const(c) * f)
        rhs = ff.const(c.galois(3)) * auto.apply(f)
        assert lhs.equals(rhs)


def test_relations_quaternion_four_variable_table():
    # the twisted four-variable action with eps = -1 satisfies the
    # quaternion relations, including tau^2 = sigma^(2^(n-2))
    n = 4
    spec = GroupSpec("Q", 2, n)
    field = CycField(8)
    ff = FuncField.make(["x0", "x1", "x2", "x3"], field)
    xv = {nm: ff.var(nm) for nm in ff.space.names}
    a, k = -1, spec.twist
    sigma_t = FieldAutomorphism.make(ff, {
        "x0": ff.zeta() * xv["x0"], "x1": ff.zeta(k) * xv["x1"],
        "x2": ff.zeta(a) * xv["x2"], "x3": ff.zeta(a * k) * xv["x3"]}, name="sigma")
    tau_t = FieldAutomorphism.make(ff, {
        "x0": xv["x1"], "x1": -xv["x0"], "x2": xv["x3"], "x3": -xv["x2"]}, name="tau")
    lam_t = FieldAutomorphism.make(ff, {
        "x0": xv["x2"], "x2": xv["x0"], "x1": xv["x3"], "x3": xv["x1"]},
        coeff_exp=a, name="lambda")
    action = GroupAction(spec=spec, ff=ff, sigma=sigma_t, tau=tau_t, lam=lam_t)
    verdict = check_relations(action)
    assert verdict.ok, verdict.detail
    assert check_faithful(action, list(ff.space.names)).ok


def test_relations_reject_bad_galois_exponent():
    spec = GroupSpec("D", 2, 4)
    ff, action = regular_representation(spec, CycField(16), galois_exp=3)
    # 3^2 = 9 != 1 mod 16, so lambda is not an involution
    verdict = check_relations(action)
    assert not verdict.ok and "lambda" in verdict.detail


def test_faithful_on_modular_subspace():
    spec = GroupSpec("M", 3, 3)
    field = CycField(3)
    ff = FuncField.make(["x0", "x1", "x2"], field)
    eta = field.zeta()
    sigma_t = FieldAutomorphism.make(ff, {
        "x0": ff.var("x1"), "x1": ff.var("x2"), "x2": ff.zeta() * ff.var("x0")},
        name="sigma")
    tau_t = FieldAutomorphism.make(ff, {
        f"x{i}": ff.const(eta ** (-i)) * ff.var(f"x{i}") for i in range(3)},
        name="tau")
    action = GroupAction(spec=spec, ff=ff, sigma=sigma_t, tau=tau_t)
    assert check_relations(action).ok
    assert check_faithful(action, ["x0", "x1", "x2"]).ok


def test_single_variable_subset_fails_stability_not_fixing():
    # every nonidentity element moves x(0,0), so the fixing check passes
    # trivially; the operative failure is that the one-variable subset is
    # not stable, which the affine-form check reports
    spec = GroupSpec("D", 2, 4)
    ff, action = regular_representation(spec, CycField(4))
    name = ff.space.names[0]
    assert check_faithful(action, [name]).ok
    verdict, _ = check_affine_form(action, [name])
    assert not verdict.ok


def test_affine_form_of_regular_representation():
    spec = GroupSpec("Q", 2, 3)
    ff, action = regular_representation(spec, CycField(2))
    verdict, forms = check_affine_form(action, list(ff.space.names))
    assert verdict.ok, verdict.detail
    # permutation matrices with zero translation
    for form in forms.values():
        assert all(c.is_zero() for c in form.translation)
        for row in form.matrix:
            assert sum(0 if c.is_zero() else 1 for c in row) == 1


def test_affine_single_variable():
    field = CycField(4)
    ff = FuncField.make(["z0", "z1", "z2", "z3"], field)
    zv = {nm: ff.var(nm) for nm in ff.space.names}
    sigma_t = FieldAutomorphism.make(ff, {
        "z0": -zv["z0"], "z1": ff.zeta() / zv["z1"],
        "z2": ff.zeta(2) / zv["z2"],
        "z3": ff.zeta(-1) * zv["z2"] * zv["z3"]}, name="sigma")
    tau_t = FieldAutomorphism.make(ff, {
        "z0": 1 / zv["z0"], "z1": zv["z2"] / zv["z1"],
        "z2": zv["z2"], "z3": -zv["z3"]}, name="tau")
    for auto in (sigma_t, tau_t):
        verdict, parts = check_affine_single(auto, "z3")
        assert verdict.ok, verdict.detail
        a, b = parts
        assert not a.is_zero() and b.is_zero()
    bad = FieldAutomorphism.make(ff, {
        "z0": zv["z0"], "z1": zv["z1"], "z2": zv["z2"], "z3": 1 / zv["z3"]},
        name="bad")
    verdict, _ = check_affine_single(bad, "z3")
    assert not verdict.ok


def test_theorem_2_3_symbolic_certificate():
    ff = FuncField.make(["x", "y", "a", "b"], CycField(1))
    x, y, a, b = (ff.var(v) for v in "xyab")
    inv = FieldAutomorphism.make(ff, {"x": a / x, "y": b / y, "a": a, "b": b},
                                 name="involution")
    verdict = verify_theorem_2_3(x, y, a, b, inv)
    assert verdict.ok, verdict.detail


def test_theorem_2_3_specialization_a_b_one():
    ff = FuncField.make(["x", "y"], CycField(1))
    x, y = ff.var("x"), ff.var("y")
    inv = FieldAutomorphism.make(ff, {"x": 1 / x, "y": 1 / y}, name="involution")
    assert verify_theorem_2_3(x, y, ff.one(), ff.one(), inv).ok


def test_theorem_2_3_application_with_b_z2():
    # x = z0, y = z1, a = 1, b = z2 under the residual involution
    field = CycField(4)
    ff = FuncField.make(["z0", "z1", "z2"], field)
    z0, z1, z2 = (ff.var(nm) for nm in ff.space.names)
    tau_t = FieldAutomorphism.make(
        ff, {"z0": 1 / z0, "z1": z2 / z1, "z2": z2}, name="tau")
    assert verify_theorem_2_3_hypotheses(z0, z1, ff.one(), z2, tau_t).ok
    assert verify_theorem_2_3(z0, z1, ff.one(), z2, tau_t).ok


def test_theorem_2_3_rejects_moved_b():
    ff = FuncField.make(["x", "y", "c"], CycField(1))
    x, y, c = (ff.var(v) for v in ("x", "y", "c"))
    inv = FieldAutomorphism.make(ff, {"x": c / x, "y": x / y, "c": c}, name="bad")
    assert not verify_theorem_2_3_hypotheses(x, y, c, x, inv).ok


def test_random_words_compose_consistently():
    # the automorphism of a normal-form product equals the composition of
    # the generators along the word
    rng = random.Random(29)
    spec = GroupSpec("D", 2, 4)
    ff, action = regular_representation(spec, CycField(4))
    from noethercheck.groups import identity as group_identity

    for _ in range(6):
        word = [rng.choice(["s", "t"]) for _ in range(rng.randint(1, 8))]
        g = group_identity()
        for letter in word:
            g = multiply(g, sigma() if letter == "s" else tau(), spec)
        composed = FieldAutomorphism.identity(ff)
        for letter in word:
            composed = composed.compose(action.sigma if letter == "s" else action.tau)
        assert composed.same_map_as(action.element_automorphism(g))
