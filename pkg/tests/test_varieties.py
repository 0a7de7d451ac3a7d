"""Point sets, rho-images, supports, psi, and the dilation action."""

import random

import numpy as np
import pytest

from supvar.errors import ValidationError
from supvar.gfield import make_field
from supvar.smod import build_L, random_module, restrict_module, trivial_module, regular_module
from supvar.superalg.algebra import GroupAlgebraSpec, build_group_algebra
from supvar.varieties import (
    GroupPoint,
    admissible_scalings,
    enumerate_points,
    family_points,
    m11_subgroup_embeddings,
    monoid_scale,
    point_images,
    point_to_p1,
    psi_map,
    psi_target_points,
    support_set,
    _algebra_for,
)

F3 = make_field(3, 1)
F9 = make_field(3, 2)
M11 = GroupAlgebraSpec("Mrs", 3, r=1, s=1)
M21 = GroupAlgebraSpec("Mrs", 3, r=2, s=1)
M12 = GroupAlgebraSpec("Mrs", 3, r=1, s=2)
M22 = GroupAlgebraSpec("Mrs", 3, r=2, s=2)


def test_point_counts():
    assert len(family_points(M11, F3)) == 9
    assert len(family_points(M21, F3)) == 27
    assert len(family_points(M12, F3)) == 9
    assert len(family_points(M22, F3)) == 27  # (1+2+0)*3*3 over F_3
    assert len(family_points(GroupAlgebraSpec("Gar", 3, r=1), F3)) == 3
    assert len(family_points(GroupAlgebraSpec("GaMinus", 3), F3)) == 3
    assert len(family_points(M11, F9)) == 81


def test_points_sorted_and_rendered():
    pts = enumerate_points(M11, F3)
    keys = [p.key() for p in pts.points]
    assert keys == sorted(keys)
    assert pts.points[0].encode() == "0,0"  # zero point first
    lines = pts.render().splitlines()
    assert lines == sorted(lines)


def test_point_images_m11():
    alg = _algebra_for(M11, F3)
    pt = GroupPoint((F3.element(2), F3.element(1)))  # (d, c)
    im = point_images(M11, alg, pt)
    want_u = alg.el_zero()
    want_u[1] = 1  # c * gamma_1
    want_v = alg.el_zero()
    want_v[alg.generators["v"]] = 2  # d * v
    assert np.array_equal(im["u0"], want_u)
    assert np.array_equal(im["v"], want_v)


def test_point_images_m21():
    # image of u_1 at (mu, a_0, a_1) is a_0^3 gamma_3 + a_1 gamma_1
    alg = _algebra_for(M21, F3)
    pt = GroupPoint((F3.element(1), F3.element(2), F3.element(1)))
    im = point_images(M21, alg, pt)
    want = alg.el_zero()
    want[3] = (F3.element(2) ** 3).index
    want[1] = 1
    assert np.array_equal(im["u1"], want)
    # zero point gives zero images
    zero = GroupPoint((F3.element(0),) * 3)
    imz = point_images(M21, alg, zero)
    assert all(not np.any(imz[g]) for g in ("u0", "u1", "v"))


def test_point_images_match_dual_oracle_comorphism():
    """rho-images agree with honest dualization of the comorphism of k[M_{r;s}]."""
    from supvar.superalg.dual_oracle import km_r_dual_oracle
    import supvar.linalg as la

    orc = km_r_dual_oracle(3, 2, 1)
    alg = _algebra_for(M21, F3)
    F = la.tables(F3)
    rng = random.Random(0)
    pts = family_points(M21, F3)
    for pt in [pts[i] for i in rng.sample(range(len(pts)), 6)]:
        mu, a0, a1 = pt.coords
        # comorphism phi: K[M_{2;1}] -> K[M_2]: tau -> mu tau, theta -> a0 theta + a1 theta^3,
        # sigma_1 -> a0^{p} sigma_1 (+ nothing else inside the truncation)
        # rho(u_j)(m) = <u_j, phi(m)>; evaluate on the monomial basis directly
        p = 3
        ptheta = 3  # p^{r-1}
        images = point_images(M21, alg, pt)
        for j, gen in ((0, "u0"), (1, "u1")):
            got = images[gen]
            # build the functional values <u_j, phi(theta^i sigma_jj tau^eps)>
            vals = np.zeros(orc.dim, dtype=la.DT)
            for m_idx, (eps, i, jj) in enumerate(orc.basis):
                if eps or jj:
                    # phi(tau), phi(sigma_1) contribute no theta^{p^j} terms
                    # except sigma_1 -> a0^p sigma_1 for u_1 (dual to sigma_1)
                    if eps == 0 and jj == 1 and i == 0 and j == 1:
                        vals[m_idx] = (a0**p).index
                    continue
                # phi(theta^i) = (a0 theta + a1 theta^p)^i; coefficient of theta^{p^j}
                coeff = F3.zero()
                for t in range(i + 1):
                    if t + (i - t) * p == p**j:
                        from math import comb

                        coeff = coeff + F3.element(comb(i, t)) * a0**t * a1 ** (i - t)
                vals[m_idx] = coeff.index
            # convert from the dual-of-monomial basis to the gamma basis
            Cinv = la.solve(F, orc.change_of_basis, la.identity(orc.dim))
            gamma_coords = la.matvec(F, Cinv, vals)
            assert np.array_equal(gamma_coords, got), (pt.encode(), gen)


def test_point_relation_validation():
    alg, u_img, v_img = point_to_p1(M11, GroupPoint((F3.element(1), F3.element(2))), F3)
    rel = alg.el_add(alg.el_pow(u_img, 3), alg.el_mul(v_img, v_img))
    assert not np.any(rel)


def test_constraint_violation_rejected():
    # mu^2 = a_0^p fails for (1, 2) in the s = 2 family over F_3
    bad = GroupPoint((F3.element(1), F3.element(2), F3.element(0)))
    with pytest.raises(ValidationError):
        point_to_p1(M12, bad, F3)


def test_point_images_are_hopf_morphisms():
    """The coordinate formulas define honest Hopf superalgebra maps."""
    from supvar.superalg.morphisms import PrPresentation, SuperalgebraMorphism
    from supvar.varieties import _hom_height

    specs = [M11, M21, M12, M22, GroupAlgebraSpec("Gar", 3, r=2),
             GroupAlgebraSpec("Mrs", 3, r=2, s=1, eta=1)]
    rng = random.Random(5)
    for spec in specs:
        alg = _algebra_for(spec, F3)
        pres = PrPresentation(3, _hom_height(spec))
        pts = family_points(spec, F3)
        for pt in [pts[i] for i in rng.sample(range(len(pts)), min(4, len(pts)))]:
            images = point_images(spec, alg, pt)
            phi = SuperalgebraMorphism(pres, alg, images)
            phi.verify_hopf()  # raises on any incompatibility


def test_param_points_satisfy_hom_ideal_beyond_solver():
    """Where brute force is out of reach, the parametrized points still
    satisfy every generator of the Hom-scheme ideal."""
    from supvar.superalg.homscheme import hom_scheme_ideal
    from supvar.superalg.morphisms import PrPresentation

    for spec in (M21, M12):
        alg = _algebra_for(spec, F3)
        pres = PrPresentation(3, spec.r)
        ideal = hom_scheme_ideal(pres, alg)
        polys = [g for _, g in ideal.generators if not g.is_zero()]
        nonunit = [j for j in range(alg.dim) if j != alg.unit_index]
        for pt in family_points(spec, F3):
            images = point_images(spec, alg, pt)
            assignment = [0] * len(ideal.ring.variables)
            for gi, g in enumerate(pres.gen_names, start=1):
                for j in nonunit:
                    idx = ideal.ring.name_index[f"x_{gi}_{j}"]
                    assignment[idx] = int(images[g][j])
            # parity-homogeneous images put zero in every odd variable
            for pos, (_, par) in enumerate(ideal.ring.variables):
                if par:
                    assert assignment[pos] == 0
            for P in polys:
                assert P.evaluate(assignment) == 0, pt.encode()


def test_solver_matches_param():
    for spec in (M11, GroupAlgebraSpec("Gar", 3, r=1), GroupAlgebraSpec("GaMinus", 3)):
        a = enumerate_points(spec, F3, method="param")
        b = enumerate_points(spec, F3, method="solve")
        assert [p.key() for p in a.points] == [p.key() for p in b.points]


def test_support_lines():
    for mu_i, a_i in ((0, 1), (1, 0), (1, 1), (1, 2)):
        mu, a = F3.element(mu_i), F3.element(a_i)
        L = build_L(mu, a**3)
        for field in (F3,):
            sup = support_set(M11, L, field)
            want = {
                (d.index, c.index)
                for d in field.elements()
                for c in field.elements()
                if (a**3) * d * d == (c**3) * mu * mu
            }
            assert {p.key() for p in sup.points} == want


def test_support_trivial_and_regular():
    A = _algebra_for(M11, F3)
    k = trivial_module(A)
    sup = support_set(M11, k, F3)
    assert len(sup.points) == 9  # every point
    R = regular_module(A)
    supR = support_set(M11, R, F3)
    assert [p.encode() for p in supR.points] == ["0,0"]  # only the zero point


def test_psi_examples_and_bijectivity():
    pt = GroupPoint((F3.element(1), F3.element(2)))
    assert tuple(c.encode() for c in psi_map(M11, pt)) == ("1", "2")
    zero = GroupPoint((F3.element(0), F3.element(0)))
    assert all(c.is_zero() for c in psi_map(M11, zero))
    for spec in (M11, M21, M12, M22):
        for field in (F3, F9):
            pts = family_points(spec, field)
            imgs = [GroupPoint(psi_map(spec, p)) for p in pts]
            assert len({p.key() for p in imgs}) == len(pts)  # injective
            assert {p.key() for p in imgs} == {
                p.key() for p in psi_target_points(spec, field)
            }  # onto the spectrum


def test_psi_eta_family():
    spec = GroupAlgebraSpec("Mrs", 3, r=2, s=1, eta=1)
    pts = family_points(spec, F3)
    imgs = [GroupPoint(psi_map(spec, p)) for p in pts]
    assert len({p.key() for p in imgs}) == len(pts)
    assert {p.key() for p in imgs} == {p.key() for p in psi_target_points(spec, F3)}


def test_monoid_scale_m11_formula_and_composition():
    scs = admissible_scalings(F9, 1)
    assert len(scs) == 9
    rng = random.Random(0)
    pts = family_points(M11, F9)
    for _ in range(30):
        pt = rng.choice(pts)
        m1, a1 = rng.choice(scs)
        m2, a2 = rng.choice(scs)
        s12 = monoid_scale(M11, monoid_scale(M11, pt, m1, a1), m2, a2)
        direct = monoid_scale(M11, pt, m1 * m2, a1 * a2)
        assert s12.key() == direct.key()
        sc = monoid_scale(M11, pt, m1, a1)
        assert sc.key() == ((m1 * pt.coords[0]).index, (a1 * pt.coords[1]).index)
    one = F9.one()
    assert monoid_scale(M11, pts[7], one, one).key() == pts[7].key()


def test_monoid_scale_lambda_pairs():
    # (mu, a) = (lambda^p, lambda^2) is always admissible
    pt = GroupPoint((F9.from_index(4), F9.from_index(7)))
    for lam in F9.elements():
        if lam.is_zero():
            continue
        out = monoid_scale(M11, pt, lam**3, lam * lam)
        assert out.coords[0] == lam**3 * pt.coords[0]


def test_monoid_scale_inadmissible():
    pt = GroupPoint((F3.element(1), F3.element(1)))
    with pytest.raises(ValidationError):
        monoid_scale(M11, pt, F3.element(1), F3.element(2))  # 2^3 != 1


def test_monoid_scale_verifies_on_higher_rank():
    pts = family_points(M21, F3)
    for pt in pts[:9]:
        for mt, at in admissible_scalings(F3, 2):
            monoid_scale(M21, pt, mt, at)
    # the b-coordinate of the s >= 2 family scales and re-matches too
    for pt in family_points(M22, F3):
        for mt, at in admissible_scalings(F3, 2):
            out = monoid_scale(M22, pt, mt, at)
            assert out.coords[0] == mt * pt.coords[0]


def test_support_and_scaling_over_eta_family():
    spec = GroupAlgebraSpec("Mrs", 3, r=2, s=1, eta=1)
    alg = _algebra_for(spec, F3)
    pts = enumerate_points(spec, F3)
    assert len(pts.points) == 9  # mu^2 = a_0^{p^2} cuts 27 down to 9 over F_3
    sup_triv = support_set(spec, trivial_module(alg), F3)
    assert len(sup_triv.points) == len(pts.points)
    sup_reg = support_set(spec, regular_module(alg), F3)
    assert [p.encode() for p in sup_reg.points] == ["0,0,0"]
    keys = {p.key() for p in pts.points}
    for pt in pts.points:
        for mt, at in admissible_scalings(F3, 2):
            assert monoid_scale(spec, pt, mt, at).key() in keys


def test_supports_over_height_two_family():
    # exercises the multinomial rho-images of kM_{2;1} inside the pd pipeline
    alg = _algebra_for(M21, F3)
    npts = len(enumerate_points(M21, F3).points)
    assert npts == 27
    sup_triv = support_set(M21, trivial_module(alg), F3)
    assert len(sup_triv.points) == npts
    sup_reg = support_set(M21, regular_module(alg), F3)
    assert [p.encode() for p in sup_reg.points] == ["0,0,0"]
    for seed in (0, 1, 2):
        M = random_module(seed, alg, 6)
        keys = {p.key() for p in support_set(M21, M, F3).points}
        assert (0, 0, 0) in keys  # the zero point is always in the support
        for pt in support_set(M21, M, F3).points:
            for mt, at in admissible_scalings(F3, 2):
                assert monoid_scale(M21, pt, mt, at).key() in keys  # conical


def test_naturality_via_embeddings():
    A = _algebra_for(M11, F3)
    embs = m11_subgroup_embeddings(3)
    for seed in range(6):
        M = random_module(seed, A, 6)
        amb = {p.key() for p in support_set(M11, M, F3).points}
        for name, subspec, embed, gmap in embs:
            subalg, _ = build_group_algebra(subspec)
            sub = restrict_module(M, subalg, gmap)
            ssub = {embed(p, F3).key() for p in support_set(subspec, sub, F3).points}
            line = {embed(p, F3).key() for p in enumerate_points(subspec, F3).points}
            assert ssub == (amb & line), (seed, name)


def test_naturality_across_heights():
    # G_{a(1)} sits inside G_{a(2)} as the span of gamma_0..gamma_2; its
    # height-one points embed as the line {(0, a)} in V_2(G_{a(2)})
    gar2 = GroupAlgebraSpec("Gar", 3, r=2)
    gar1 = GroupAlgebraSpec("Gar", 3, r=1)
    amb_alg = _algebra_for(gar2, F3)
    sub_alg = _algebra_for(gar1, F3)

    def embed(pt):
        return GroupPoint((F3.element(0), pt.coords[0]))

    line = {embed(p).key() for p in enumerate_points(gar1, F3).points}
    for seed in range(5):
        M = random_module(seed, amb_alg, 6)
        sub = restrict_module(M, sub_alg, {"u0": "u0"})
        amb_sup = {p.key() for p in support_set(gar2, M, F3).points}
        sub_sup = {embed(p).key() for p in support_set(gar1, sub, F3).points}
        assert sub_sup == (amb_sup & line), seed


def test_hom_ideal_golden_ga1():
    from supvar.superalg.homscheme import hom_scheme_ideal
    from supvar.superalg.morphisms import PrPresentation

    ga1, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=1))
    text = hom_scheme_ideal(PrPresentation(3, 1), ga1).render()
    # primitivity of u and v forces the gamma_2 coefficients to vanish;
    # the algebra relations hold identically for this target
    assert text == "2*x_1_2\n2*x_2_2\n1*x_1_2\n1*x_2_2"


def test_decomposition_union():
    embs = m11_subgroup_embeddings(3)
    union = {GroupPoint((F3.element(0), F3.element(0))).key()}
    for name, subspec, embed, gmap in embs:
        union |= {embed(p, F3).key() for p in enumerate_points(subspec, F3).points}
    union |= {p.key() for p in enumerate_points(M11, F3).points}  # E = G itself
    assert union == {p.key() for p in enumerate_points(M11, F3).points}
