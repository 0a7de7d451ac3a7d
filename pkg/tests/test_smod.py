"""Supermodules: validation, functors, the L-family, random generation."""

import numpy as np
import pytest

from supvar.errors import ValidationError
from supvar.gfield import make_field
import supvar.linalg as la
from supvar.smod import (
    SuperModule,
    build_L,
    dual_module,
    extend_scalars,
    free_over_cyclic,
    module_from_json,
    module_to_json,
    parity_shift,
    pullback,
    p1_view,
    p1_view_from_module,
    random_module,
    regular_module,
    restrict_module,
    tensor_module,
    trivial_module,
    validate_module,
)
from supvar.superalg.algebra import GroupAlgebraSpec, build_group_algebra
from supvar.superalg.morphisms import SuperalgebraMorphism

F3 = make_field(3, 1)
M11_SPEC = GroupAlgebraSpec("Mrs", 3, r=1, s=1)


def m11():
    return build_group_algebra(M11_SPEC)[0]


def test_validate_trivial_and_parity_flip():
    A = m11()
    k = trivial_module(A)
    assert validate_module(k).ok
    L = build_L(F3.element(0), F3.element(1))
    # a global parity reversal is just Pi(L) and stays valid
    flipped = SuperModule(A, L.dim, (1 - L.parity).astype(np.int8), L.action)
    assert validate_module(flipped).ok
    # an all-even parity vector breaks the odd generator's action
    bad = SuperModule(A, L.dim, np.zeros(L.dim, dtype=np.int8), L.action)
    rep = validate_module(bad)
    assert not rep.ok and any("parity" in s for s in rep.issues)


def test_build_L_formulas():
    L = build_L(F3.element(0), F3.element(1))
    assert L.dim == 6 and validate_module(L).ok
    assert L.action["v"][5, 0] == 1  # t.x_0 = y_2
    assert not np.any(L.action["u0"][:, 0])  # s.x_0 = 0
    L = build_L(F3.element(1), F3.element(0))
    assert L.action["u0"][1, 0] == F3.element(-1).index  # s.x_0 = -x_1
    assert not np.any(L.action["v"][:, 0])
    with pytest.raises(ValidationError):
        build_L(F3.element(0), F3.element(0))


def test_pullback_identity_and_relation_failure():
    A = m11()
    L = build_L(F3.element(0), F3.element(1))
    ident = SuperalgebraMorphism(A, A, {g: A.el_gen(g) for g in A.generators})
    same = pullback(L, ident)
    assert all(np.array_equal(same.action[g], L.action[g]) for g in A.generators)
    # u -> t is not an algebra map image assignment (parity mismatch)
    badmap = SuperalgebraMorphism(A, A, {"u0": A.el_gen("v"), "v": A.el_gen("v")})
    with pytest.raises(ValidationError):
        pullback(L, badmap)


def test_pullback_point_morphism():
    # L_{(0,1)} pulled to M11 itself along u -> c s, v -> d t at (d,c) = (0,1)
    A = m11()
    L = build_L(F3.element(0), F3.element(1))
    phi = SuperalgebraMorphism(A, A, {"u0": A.el_gen("u0"), "v": A.el_zero()})
    out = pullback(L, phi)
    assert np.array_equal(out.action["u0"], L.action["u0"])
    assert not np.any(out.action["v"])


def test_tensor_with_trivial_is_identity():
    A = m11()
    L = build_L(F3.element(1), F3.element(1))
    T = tensor_module(L, trivial_module(A))
    assert T.dim == L.dim
    for g in A.generators:
        assert np.array_equal(T.action[g], L.action[g])


def test_tensor_relation_symbolic():
    # over P_1 structures: (V(x)1 + pi(x)V)^2 = -(U(x)1 + 1(x)U)^p
    from supvar.smod import p1_tensor

    L = build_L(F3.element(1), F3.element(2))
    V = p1_view_from_module(L)
    T = p1_tensor(V, V)
    assert T.validate().ok


def test_tensor_dims_and_validity():
    L1 = build_L(F3.element(0), F3.element(1))
    L2 = build_L(F3.element(1), F3.element(0))
    T = tensor_module(L1, L2)
    assert T.dim == 36 and validate_module(T).ok


def test_dual_module_and_evaluation():
    A = m11()
    k = trivial_module(A)
    D = dual_module(k)
    assert D.dim == 1 and validate_module(D).ok
    M = random_module(5, A, 4)
    DM = dual_module(M)
    assert validate_module(DM).ok
    # evaluation M^# (x) M -> k is a module map: it kills the augmentation
    # ideal action on the coevaluation-dual pairing
    T = tensor_module(DM, M)
    F = A.F
    ev = la.zeros(1, T.dim)
    for a in range(M.dim):
        ev[0, a * M.dim + a] = 1
    for g in A.generators:
        out = la.matmul(F, ev, T.action[g])
        assert not np.any(out), f"evaluation not equivariant for {g}"


def test_parity_shift():
    L = build_L(F3.element(1), F3.element(1))
    P = parity_shift(L, "Pi")
    PP = parity_shift(P, "Pi")
    assert np.array_equal(PP.parity, L.parity)
    assert all(np.array_equal(PP.action[g], L.action[g]) for g in L.action)
    B = parity_shift(L, "boldPi")
    assert np.array_equal(B.action["v"], L.F.neg[L.action["v"]])
    assert np.array_equal(B.action["u0"], L.action["u0"])
    # boldPi over GaMinus negates the V matrix
    gam, _ = build_group_algebra(GroupAlgebraSpec("GaMinus", 3))
    R = regular_module(gam)
    BR = parity_shift(R, "boldPi")
    assert np.array_equal(BR.action["v"], R.F.neg[R.action["v"]])
    # v -> pi v is an odd isomorphism M ~ boldPi(M): the actions differ by (-1)^{|a|}
    for g in L.action:
        sign = -1 if L.algebra.gen_parity[g] else 1
        want = L.action[g] if sign == 1 else L.F.neg[L.action[g]]
        assert np.array_equal(parity_shift(L, "boldPi").action[g], want)


def test_free_over_cyclic():
    ga1, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=1))
    reg = regular_module(ga1)
    assert free_over_cyclic(reg, reg.action["u0"], 3)
    k = trivial_module(ga1)
    assert not free_over_cyclic(k, la.zeros(1, 1), 3)
    L = build_L(F3.element(1), F3.element(0))
    assert free_over_cyclic(L, L.action["u0"], 3)  # mu != 0: free over k[u]/u^p
    with pytest.raises(ValidationError):
        free_over_cyclic(reg, reg.action["u0"], 2)  # X^2 != 0


def test_free_over_cyclic_jordan_oracle():
    # free over k[x]/x^m iff every Jordan block has size exactly m
    from itertools import combinations_with_replacement

    ga1, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=1))
    for m in (2, 3):
        for nblocks in range(1, 7):
            for blocks in combinations_with_replacement(range(1, m + 1), nblocks):
                if sum(blocks) > 6:
                    continue
                dim = sum(blocks)
                X = la.zeros(dim, dim)
                pos = 0
                for b in blocks:
                    for i in range(b - 1):
                        X[pos + i + 1, pos + i] = 1
                    pos += b
                M = SuperModule(ga1, dim, np.zeros(dim, dtype=np.int8), {"u0": X})
                assert free_over_cyclic(M, X, m) == all(b == m for b in blocks)


def test_random_module_deterministic_and_valid():
    A = m11()
    mods = [random_module(seed, A, 6) for seed in range(100)]
    for M in mods:
        assert 1 <= M.dim <= 6
        assert validate_module(M).ok
    again = random_module(42, A, 6)
    ref = mods[42]
    assert again.dim == ref.dim
    assert all(np.array_equal(again.action[g], ref.action[g]) for g in ref.action)


def test_random_module_dim_bound_one():
    A = m11()
    M = random_module(0, A, 1)
    assert M.dim == 1
    assert all(not np.any(M.action[g]) for g in M.action)  # k or Pi(k)


def test_extend_scalars():
    F9 = make_field(3, 2)
    L = build_L(F3.element(0), F3.element(1))
    L9 = extend_scalars(L, F9)
    assert L9.algebra.field is F9
    assert validate_module(L9).ok
    assert np.array_equal(L9.action["u0"], L.action["u0"])


def test_restrict_module():
    A = m11()
    L = build_L(F3.element(1), F3.element(1))
    ga1, _ = build_group_algebra(GroupAlgebraSpec("Gar", 3, r=1))
    sub = restrict_module(L, ga1, {"u0": "u0"})
    assert validate_module(sub).ok and sub.dim == L.dim


def test_pullback_tensor_functoriality():
    # pulling back along a Hopf map commutes with tensor products
    A = m11()
    m12, _ = build_group_algebra(GroupAlgebraSpec("Mrs", 3, r=1, s=2))
    phi = SuperalgebraMorphism(m12, A, {"u0": A.el_gen("u0"), "v": A.el_gen("v")})
    phi.verify_algebra()
    for s1, s2 in ((1, 2), (3, 4), (5, 8)):
        M, N = random_module(s1, A, 4), random_module(s2, A, 4)
        lhs = pullback(tensor_module(M, N), phi)
        rhs = tensor_module(pullback(M, phi), pullback(N, phi))
        assert all(np.array_equal(lhs.action[g], rhs.action[g]) for g in m12.generators)


def test_concurrent_support_computation():
    # modules and algebras are shared immutably; parallel support runs must
    # agree with the serial answer
    from concurrent.futures import ThreadPoolExecutor

    from supvar.superalg.algebra import GroupAlgebraSpec as GS
    from supvar.varieties import support_set

    spec = GS("Mrs", 3, r=1, s=1)
    L = build_L(F3.element(1), F3.element(1))
    serial = {p.key() for p in support_set(spec, L, F3).points}
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: support_set(spec, L, F3), range(8)))
    for sup in results:
        assert {p.key() for p in sup.points} == serial


def test_support_line_p5():
    from supvar.superalg.algebra import GroupAlgebraSpec as GS
    from supvar.varieties import support_set

    F5 = make_field(5, 1)
    spec = GS("Mrs", 5, r=1, s=1)
    mu, a = F5.element(1), F5.element(1)
    L = build_L(mu, a**5)
    assert L.dim == 10
    got = {p.key() for p in support_set(spec, L, F5).points}
    want = {
        (d.index, c.index)
        for d in F5.elements()
        for c in F5.elements()
        if (a**5) * d * d == (c**5) * mu * mu
    }
    assert got == want and len(got) == 5


def test_module_json_roundtrip():
    L = build_L(F3.element(1), F3.element(2))
    data = module_to_json(L)
    assert data["parity"] == sorted(data["parity"])  # even block first
    assert set(data["action"]) == {"s", "t"}  # aliased names for r = 1
    back = module_from_json(data)
    assert isinstance(back, SuperModule) and back.dim == L.dim
    # round trip again is stable
    assert module_to_json(back) == data
    bad = dict(data)
    bad["parity"] = [7] * L.dim
    with pytest.raises(ValidationError):
        module_from_json(bad)


def test_p1_module_json():
    data = {
        "group": {"family": "P1", "p": 3},
        "field": "3^1",
        "dim": 1,
        "parity": [0],
        "action": {"u": [["0"]], "v": [["0"]]},
    }
    view = module_from_json(data)
    assert view.dim == 1 and view.validate().ok


def test_p1_view_invariants():
    with pytest.raises(ValidationError):
        # U not commuting with V
        p1_view(
            F3,
            [0, 1],
            la.from_int_matrix(la.tables(F3), [[0, 0], [0, 1]]),
            la.from_int_matrix(la.tables(F3), [[0, 1], [0, 0]]),
        )
