"""Group algebra constructors, Hopf axioms, tensor products, classification."""

import numpy as np
import pytest

from supvar.errors import BoundExceeded, ValidationError
from supvar.gfield import make_field
from supvar.superalg.algebra import (
    AlgebraError,
    GroupAlgebraSpec,
    build_group_algebra,
    rename_generators,
    tensor_algebra,
    verify_algebra,
    verify_hopf,
)
from supvar.superalg.morphisms import (
    PrPresentation,
    SuperalgebraMorphism,
    canonical_quotient_morphism,
    classify_quotient,
)

F3 = make_field(3, 1)

ALL_SPECS = [
    GroupAlgebraSpec("Mrs", 3, r=1, s=1),
    GroupAlgebraSpec("Mrs", 3, r=1, s=2),
    GroupAlgebraSpec("Mrs", 3, r=2, s=1),
    GroupAlgebraSpec("Mrs", 3, r=2, s=2),
    GroupAlgebraSpec("Mrs", 3, r=1, s=1, eta=2),
    GroupAlgebraSpec("Mrs", 3, r=2, s=1, eta=1),
    GroupAlgebraSpec("Gar", 3, r=1),
    GroupAlgebraSpec("Gar", 3, r=2),
    GroupAlgebraSpec("GaMinus", 3),
    GroupAlgebraSpec("TruncEven", 3, t=1),
    GroupAlgebraSpec("Mrs", 5, r=1, s=1),
]


def test_dimensions():
    assert build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))[0].dim == 6
    assert build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=2, s=1))[0].dim == 18
    assert build_group_algebra(GroupAlgebraSpec("Gar", 3, r=2))[0].dim == 9
    assert build_group_algebra(GroupAlgebraSpec("GaMinus", 3))[0].dim == 2
    assert build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=2, s=2))[0].dim == 54


def test_m11_presentation():
    # kM_{1;1} = k[s,t]/(s^p, t^2): the v^2 and u^p rewrites both vanish
    alg, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    s = alg.el_gen("u0")
    t = alg.el_gen("v")
    assert not np.any(alg.el_pow(s, 3))
    assert not np.any(alg.el_mul(t, t))
    assert np.array_equal(alg.el_mul(s, t), alg.el_mul(t, s))


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label())
def test_hopf_axioms(spec):
    alg, hopf = build_group_algebra(spec)
    verify_algebra(alg)
    verify_hopf(alg)
    assert hopf is alg.hopf


def test_augmentation_ideal_nilpotent():
    # the unipotent families are local with nilpotent augmentation ideal;
    # M_{1;s,eta} with eta != 0 is the non-unipotent exception (its u
    # generates a separable subalgebra), so it is excluded here
    from supvar.errors import ValidationError
    from supvar.homalg import _check_local

    for spec in ALL_SPECS:
        if spec.family == "Mrs" and spec.r == 1 and spec.eta:
            continue
        alg, _ = build_group_algebra(spec)
        _check_local(alg)
    bad, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1, eta=2))
    with pytest.raises(ValidationError):
        _check_local(bad)


def test_invalid_f_and_cap():
    with pytest.raises(AlgebraError):
        build_group_algebra(GroupAlgebraSpec("Mrf", 3, r=1, f=(0,)))
    with pytest.raises(BoundExceeded):
        build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=3, s=3))


def test_tensor_unit_factor_is_identity():
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    triv, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=0))
    T = tensor_algebra(triv, m11)
    assert T.dim == m11.dim
    assert {k: tuple(v) for k, v in T.mult.items()} == {
        k: tuple(v) for k, v in m11.mult.items()
    }


def test_tensor_koszul_sign():
    gam, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3))
    A = rename_generators(gam, {"v": "v1"})
    B = rename_generators(gam, {"v": "v2"})
    T = tensor_algebra(A, B)
    verify_algebra(T)
    verify_hopf(T)
    v1v2 = T.el_mul(T.el_gen("v1"), T.el_gen("v2"))
    v2v1 = T.el_mul(T.el_gen("v2"), T.el_gen("v1"))
    assert np.any(v1v2)
    assert np.array_equal(v1v2, T.F.neg[v2v1])


def test_tensor_ga1_gaminus_is_m11_as_algebra():
    # kG_{a(1)} (x) kG_a^- has the same structure constants as kM_{1;1}
    ga1, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=1))
    gam, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3))
    T = tensor_algebra(rename_generators(ga1, {"u0": "s"}), rename_generators(gam, {"v": "t"}))
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    # identify basis gamma_i (x) v^e (T index i*2+e) with m11 index e*3+i
    tmap = {}
    for i in range(3):
        for e in range(2):
            tmap[i * 2 + e] = e * 3 + i
    mult_t = {}
    for (a, b), ent in T.mult.items():
        mult_t[(tmap[a], tmap[b])] = tuple(sorted((tmap[k], c) for k, c in ent))
    mult_m = {k: tuple(sorted(v)) for k, v in m11.mult.items()}
    assert mult_t == mult_m


def test_tensor_field_mismatch():
    a, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3))
    b, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3), make_field(3, 2))
    with pytest.raises(AlgebraError):
        tensor_algebra(rename_generators(a, {"v": "x"}), b)


def test_spec_json_roundtrip():
    for spec in ALL_SPECS:
        assert GroupAlgebraSpec.from_json(spec.to_json()) == spec
    t = GroupAlgebraSpec(
        "Tensor", 3, factors=(ALL_SPECS[0], GroupAlgebraSpec("TruncEven", 3, t=1))
    )
    assert GroupAlgebraSpec.from_json(t.to_json()) == t
    with pytest.raises(ValidationError):
        GroupAlgebraSpec.from_json({"family": "Nope", "p": 3})


# -- classification -------------------------------------------------------


def test_classify_round_trip_all_small_specs():
    specs = [GroupAlgebraSpec("GaMinus", 3)]
    for r in (1, 2):
        specs.append(GroupAlgebraSpec("Gar", 3, r=r))
        for s in (1, 2):
            for eta in (0, 1, 2):
                specs.append(GroupAlgebraSpec("Mrs", 3, r=r, s=s, eta=eta))
    for spec in specs:
        alg, _ = build_group_algebra(spec)
        label = classify_quotient(canonical_quotient_morphism(alg))
        assert label.to_spec(3) == spec, spec.label()


def test_classify_gaminus_and_trivial():
    gam, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3))
    pres = PrPresentation(3, 1)
    phi = SuperalgebraMorphism(pres, gam, {"u0": gam.el_zero(), "v": gam.el_gen("v")})
    assert classify_quotient(phi).kind == "GaMinus"
    triv, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=0))
    phi = SuperalgebraMorphism(pres, triv, {"u0": triv.el_zero(), "v": triv.el_zero()})
    lab = classify_quotient(phi)
    assert lab.kind == "Gar" and lab.r == 0


def test_classify_eta_example():
    # P_1 -> P_1/(u^p - c u) with c = 1 is M_{1;1,-1} = M_{1;1,2} over F_3
    alg, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1, eta=2))
    label = classify_quotient(canonical_quotient_morphism(alg))
    assert label.kind == "Mrf" and label.f == (1,) and label.eta == 2
    assert label.text(F3) == "M_{1;1,2}"


def test_classify_rejects_non_hopf():
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    s = m11.el_gen("u0")
    bad = m11.el_add(s, m11.el_mul(s, s))  # s + s^2 is not primitive
    phi = SuperalgebraMorphism(PrPresentation(3, 1), m11, {"u0": bad, "v": m11.el_gen("v")})
    with pytest.raises(ValidationError):
        classify_quotient(phi)


def test_classify_rejects_non_surjective():
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    phi = SuperalgebraMorphism(
        PrPresentation(3, 1), m11, {"u0": m11.el_zero(), "v": m11.el_gen("v")}
    )
    with pytest.raises(ValidationError):
        classify_quotient(phi)


def test_morphism_full_matrix():
    # the canonical quotient kM_{1;2} ->> kM_{1;1} sends gamma_l to gamma_l
    # for l < 3 and kills the higher basis (u^3 = 0 in the target)
    import numpy as np

    m12, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=2))
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    phi = SuperalgebraMorphism(m12, m11, {"u0": m11.el_gen("u0"), "v": m11.el_gen("v")})
    phi.verify_algebra()
    mat = phi.matrix()
    assert mat.shape == (6, 18)
    for l in range(3):
        assert np.array_equal(mat[:, l], m11.el_basis(l))  # gamma_l
        assert np.array_equal(mat[:, 9 + l], m11.el_basis(3 + l))  # v gamma_l
    assert not np.any(mat[:, 3:9])
    assert mat is phi.matrix()  # cached
    from supvar.superalg.morphisms import PrPresentation

    pres_phi = SuperalgebraMorphism(
        PrPresentation(3, 1), m11, {"u0": m11.el_gen("u0"), "v": m11.el_gen("v")}
    )
    with pytest.raises(ValidationError):
        pres_phi.matrix()


def test_classify_eta_rescaling_under_dilation():
    # composing with u -> a u, v -> mu v (a^p = mu^2) rescales eta by
    # a^{p^{r+s-1}-1}; over F_9 this moves eta off the prime field
    F9 = make_field(3, 2)
    alg, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1, eta=2), F9)
    base = canonical_quotient_morphism(alg)
    for a in F9.elements():
        if a.is_zero():
            continue
        mu_sq = a**3
        mus = [m for m in F9.elements() if m * m == mu_sq]
        if not mus:
            continue
        mu = mus[0]
        import supvar.linalg as la

        F = la.tables(F9)
        phi = SuperalgebraMorphism(
            base.source,
            alg,
            {
                "u0": la.scale_index(F, a.index, base.images["u0"]),
                "v": la.scale_index(F, mu.index, base.images["v"]),
            },
        )
        label = classify_quotient(phi)
        want = (F9.element(2) * a * a).index
        assert label.kind == "Mrf" and label.f == (1,) and label.eta == want


def test_classify_strips_leading_zero_generator():
    # P_2 ->> kM_{1;1} through u_0 -> 0 classifies as M_{1;1}
    m11, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=1))
    phi = SuperalgebraMorphism(
        PrPresentation(3, 2),
        m11,
        {"u0": m11.el_zero(), "u1": m11.el_gen("u0"), "v": m11.el_gen("v")},
    )
    label = classify_quotient(phi)
    assert label.kind == "Mrf" and label.r == 1 and label.f == (1,) and label.eta == 0
