"""Morphisms out of P_r presentations and the quotient classification.

A morphism is stored by generator images only; everything else (images of
the divided-power basis, Hopf compatibility, surjectivity) is derived on
demand.  classify_quotient implements the structure theorem for
finite-dimensional Hopf superalgebra quotients of P_r: every such quotient
is a group algebra kG_{a(s)}, kG_{a(s)} x kG_a^-, or kM_{s;f,eta}, and the
classification data is read off from the first linear dependence among the
images of gamma_1, gamma_2, gamma_3, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

import numpy as np

from ..errors import ValidationError
from .. import linalg
from .pr import PrIndex, pr_coproduct
from .algebra import GroupAlgebraSpec, PresentedSuperalgebra
from .pr import digit_factorial_product


@dataclass(frozen=True)
class PrPresentation:
    """The presentation of P_r on u_0..u_{r-1} (even) and v (odd)."""

    p: int
    r: int

    @property
    def gen_names(self):
        return tuple(f"u{i}" for i in range(self.r)) + ("v",)

    def gen_parity(self, name: str) -> int:
        return 1 if name == "v" else 0

    def relations(self):
        """Defining relations as (label, ((coeff mod p, monomial), ...))."""
        p, r = self.p, self.r
        rels = []
        names = list(self.gen_names)
        for a in range(len(names)):
            for b in range(a + 1, len(names)):
                rels.append(
                    (
                        f"[{names[a]},{names[b]}]",
                        (
                            (1, ((names[a], 1), (names[b], 1))),
                            (p - 1, ((names[b], 1), (names[a], 1))),
                        ),
                    )
                )
        for i in range(r - 1):
            rels.append((f"u{i}^p", ((1, ((f"u{i}", p),)),)))
        rels.append((f"u{r-1}^p+v^2", ((1, ((f"u{r-1}", p),)), (1, (("v", 2),)))))
        return tuple(rels)

    def gamma_monomial(self, ell: int, has_v: bool):
        """(coeff mod p, ((gen, exp), ...)) expressing a basis element."""
        p, r = self.p, self.r
        coeff = pow(digit_factorial_product(ell, p), p - 2, p)
        mon = []
        if has_v:
            mon.append(("v", 1))
        rest = ell
        for i in range(r - 1):
            d = rest % p
            if d:
                mon.append((f"u{i}", d))
            rest //= p
        if rest:
            mon.append((f"u{r-1}", rest))
        return coeff, tuple(mon)

    def gen_coproduct(self, name: str):
        """Coproduct of a generator as ((left monomial data, right, coeff)), where
        each side is a gamma index interpreted through gamma_monomial."""
        if name == "v":
            x = PrIndex(0, True)
        else:
            i = int(name[1:])
            x = PrIndex(self.p**i, False)
        return pr_coproduct(self.p, self.r, x)


@dataclass
class SuperalgebraMorphism:
    """Generator images of a map from a P_r presentation (or a finite
    presented algebra) into a finite presented superalgebra."""

    source: object  # PrPresentation or PresentedSuperalgebra
    target: PresentedSuperalgebra
    images: dict  # generator name -> (dim,) index vector over target basis
    is_algebra_verified: bool = False
    is_hopf_verified: bool = False
    _image_cache: dict = dfield(default_factory=dict)

    def _source_gen_names(self):
        if isinstance(self.source, PrPresentation):
            return self.source.gen_names
        return tuple(self.source.generators)

    def _source_gen_parity(self, name):
        if isinstance(self.source, PrPresentation):
            return self.source.gen_parity(name)
        return self.source.gen_parity[name]

    def image_of_monomial(self, coeff, mon):
        """Image of coeff * prod gens^exp, multiplied in the target."""
        B = self.target
        out = B.el_unit()
        for g, e in mon:
            key = (g, e)
            pw = self._image_cache.get(key)
            if pw is None:
                pw = B.el_pow(self.images[g], e)
                self._image_cache[key] = pw
            out = B.el_mul(out, pw)
        return B.el_scale(coeff, out)

    def image_of_terms(self, terms):
        B = self.target
        out = B.el_zero()
        for coeff, mon in terms:
            out = B.el_add(out, self.image_of_monomial(coeff, mon))
        return out

    def gamma_image(self, ell: int, has_v: bool = False):
        if not isinstance(self.source, PrPresentation):
            raise ValidationError("gamma images need a P_r source")
        key = ("gamma", ell, has_v)
        out = self._image_cache.get(key)
        if out is None:
            coeff, mon = self.source.gamma_monomial(ell, has_v)
            out = self.image_of_monomial(coeff, mon)
            self._image_cache[key] = out
        return out

    def matrix(self):
        """Full basis-to-basis matrix, derived lazily for finite sources.

        Column j holds the image of the j-th source basis element; P_r
        sources are infinite-dimensional, so only generator data exists
        for them and this raises.
        """
        if isinstance(self.source, PrPresentation):
            raise ValidationError("P_r sources have no finite matrix; use gamma_image")
        cached = self._image_cache.get("matrix")
        if cached is None:
            A, B = self.source, self.target
            cached = np.zeros((B.dim, A.dim), dtype=self.images[next(iter(self.images))].dtype)
            for j in range(A.dim):
                coeff, mon = A.monomials[j]
                cached[:, j] = self.image_of_monomial(coeff, mon)
            self._image_cache["matrix"] = cached
        return cached

    def verify_algebra(self):
        """Generator parities and all source relations; sets the flag."""
        B = self.target
        for g in self._source_gen_names():
            if g not in self.images:
                raise ValidationError(f"missing image for generator {g}")
            par = B.element_parity(self.images[g])
            if par is None or (
                par != self._source_gen_parity(g) and np.any(self.images[g])
            ):
                raise ValidationError(f"image of {g} has wrong parity")
        rels = (
            self.source.relations()
            if isinstance(self.source, PrPresentation)
            else self.source.relations
        )
        for label, terms in rels:
            val = self.image_of_terms(terms)
            if np.any(val):
                raise ValidationError(f"relation {label} not killed by the morphism")
        self.is_algebra_verified = True
        return self

    def verify_hopf(self):
        """Coproduct and antipode compatibility on generators; sets the flag."""
        if not self.is_algebra_verified:
            self.verify_algebra()
        if not isinstance(self.source, PrPresentation):
            raise ValidationError("hopf verification implemented for P_r sources")
        B = self.target
        if B.hopf is None:
            raise ValidationError("target has no Hopf structure")
        F = B.F
        for g in self._source_gen_names():
            # (phi (x) phi)(Delta g)
            lhs = {}
            for le, ri, c in self.source.gen_coproduct(g):
                vl = self.gamma_image(le.ell, le.has_v)
                vr = self.gamma_image(ri.ell, ri.has_v)
                for a in np.nonzero(vl)[0]:
                    for b in np.nonzero(vr)[0]:
                        v = int(F.mul[F.mul[vl[a], vr[b]], F.scalar(c)])
                        key = (int(a), int(b))
                        lhs[key] = int(F.add[lhs.get(key, 0), v])
            lhs = {k: v for k, v in lhs.items() if v}
            # Delta_B(phi(g))
            rhs = {}
            img = self.images[g]
            for i in np.nonzero(img)[0]:
                for a, b, c in B.hopf.coproduct[int(i)]:
                    v = int(F.mul[img[i], F.scalar(c)])
                    rhs[(a, b)] = int(F.add[rhs.get((a, b), 0), v])
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                raise ValidationError(f"coproduct compatibility fails on {g}")
            # antipode: S(g) = -g on every generator of P_r
            want = B.el_scale(-1, img)
            got = linalg.matvec(F, B.hopf.antipode, img)
            if not np.array_equal(want, got):
                raise ValidationError(f"antipode compatibility fails on {g}")
        self.is_hopf_verified = True
        return self


def canonical_quotient_morphism(alg: PresentedSuperalgebra) -> SuperalgebraMorphism:
    """The canonical P_r -> kG map for a quotient-family group algebra."""
    spec = alg.spec
    if spec is None or spec.family not in ("Mrs", "Mrf", "Gar", "GaMinus"):
        raise ValidationError("no canonical P_r quotient map for this algebra")
    r = spec.r if spec.family != "GaMinus" else 1
    pres = PrPresentation(spec.p, r)
    images = {}
    for i in range(r):
        name = f"u{i}"
        images[name] = (
            alg.el_gen(name) if name in alg.generators else alg.el_zero()
        )
    images["v"] = alg.el_gen("v") if "v" in alg.generators else alg.el_zero()
    return SuperalgebraMorphism(pres, alg, images)


@dataclass
class QuotientLabel:
    """Classification result: which multiparameter group algebra a quotient is."""

    kind: str  # "Gar" | "GaMinus" | "Mrf"
    r: int = 0
    f: tuple = ()  # field element indices (c_1, ..., c_t), c_t nonzero
    eta: int = 0  # field element index

    def text(self, field) -> str:
        if self.kind == "Gar":
            return f"G_a({self.r})"
        if self.kind == "GaMinus":
            return "G_a^-"
        enc = lambda idx: field.from_index(idx).encode()
        f = self.f
        if all(c == 0 for c in f[:-1]) and f[-1] == 1:
            s = len(f)
            if self.eta:
                return f"M_{{{self.r};{s},{enc(self.eta)}}}"
            return f"M_{{{self.r};{s}}}"
        fs = ",".join(enc(c) for c in f)
        return f"M_{{{self.r};f=[{fs}],{enc(self.eta)}}}"

    def to_spec(self, p: int) -> GroupAlgebraSpec:
        """Spec with prime-field parameters (raises when they are not)."""
        if self.kind == "Gar":
            return GroupAlgebraSpec("Gar", p, r=self.r)
        if self.kind == "GaMinus":
            return GroupAlgebraSpec("GaMinus", p)
        if any(c >= p for c in self.f) or self.eta >= p:
            raise ValidationError("label parameters lie outside the prime field")
        f = tuple(int(c) for c in self.f)
        if all(c == 0 for c in f[:-1]) and f[-1] == 1:
            return GroupAlgebraSpec("Mrs", p, r=self.r, s=len(f), eta=int(self.eta))
        return GroupAlgebraSpec("Mrf", p, r=self.r, eta=int(self.eta), f=f)


def classify_quotient(phi: SuperalgebraMorphism) -> QuotientLabel:
    """Classify a finite-dimensional Hopf superalgebra quotient of P_r.

    Follows the dependence-relation procedure: strip generators mapping to
    zero, then scan the images of gamma_1, gamma_2, ... for the first
    linear dependence.  The dependence must occur at an index p^{r+e} and
    may only involve gamma_1 and the tower indices p^r, ..., p^{r+e-1};
    anything else means the input was not a Hopf morphism.
    """
    if not isinstance(phi.source, PrPresentation):
        raise ValidationError("classification needs a P_r presentation source")
    if not phi.is_hopf_verified:
        phi.verify_hopf()
    B = phi.target
    F = B.F
    p = phi.source.p

    # strip leading u-generators with zero image (P_r -> P_{r-1} descent)
    imgs = [phi.images[f"u{i}"] for i in range(phi.source.r)]
    v_img = phi.images["v"]
    while imgs and not np.any(imgs[0]):
        imgs.pop(0)
    s = len(imgs)

    if s == 0:
        label = (
            QuotientLabel("GaMinus") if np.any(v_img) else QuotientLabel("Gar", r=0)
        )
        _check_surjective(phi, label, imgs, v_img)
        return label

    sub = PrPresentation(p, s)
    sub_phi = SuperalgebraMorphism(
        sub,
        B,
        {**{f"u{i}": imgs[i] for i in range(s)}, "v": v_img},
        is_algebra_verified=True,
        is_hopf_verified=True,
    )

    # scan gamma images for the first dependence
    cols = []
    ell = 0
    dep_index = None
    dep_coeffs = None
    while dep_index is None:
        ell += 1
        if ell > 2 * B.dim + 2:
            raise ValidationError("no dependence found; target not finite-dimensional?")
        vec = sub_phi.gamma_image(ell)
        if cols:
            M = np.stack(cols, axis=1)
            sol = linalg.solve(F, M, vec)
        else:
            sol = np.zeros(0, dtype=linalg.DT) if not np.any(vec) else None
        if sol is not None:
            dep_index = ell
            dep_coeffs = sol
        else:
            cols.append(vec)

    # the dependence index must be a power p^{s+e}
    e = 0
    n = dep_index
    while n % p == 0:
        n //= p
        e += 1
    if n != 1 or e < s:
        raise ValidationError(
            f"dependence at index {dep_index}, not of the form p^(r+e); not a Hopf quotient"
        )
    e -= s
    allowed = {1} | {p ** (s + i) for i in range(e)}
    coeffs = {}
    for ldx, c in enumerate(dep_coeffs, start=1):
        if int(c) == 0:
            continue
        if ldx not in allowed:
            raise ValidationError(
                f"dependence involves gamma_{ldx}; not a Hopf quotient"
            )
        coeffs[ldx] = int(c)

    if not np.any(v_img):
        if e != 0 or coeffs:
            raise ValidationError("purely even quotient with nontrivial dependence")
        label = QuotientLabel("Gar", r=s)
        _check_surjective(phi, label, imgs, v_img)
        return label

    # f = T^{p^{e+1}} - sum a_{p^{s-1+i}} T^{p^i}, eta = -a_1
    fvec = [0] * (e + 1)
    for i in range(1, e + 1):
        a = coeffs.get(p ** (s - 1 + i), 0)
        fvec[i - 1] = int(F.neg[a])
    fvec[e] = 1
    eta = int(F.neg[coeffs.get(1, 0)])
    label = QuotientLabel("Mrf", r=s, f=tuple(fvec), eta=eta)
    _check_surjective(phi, label, imgs, v_img)
    return label


def _check_surjective(phi: SuperalgebraMorphism, label: QuotientLabel, imgs, v_img):
    """The spanned image must be all of the target."""
    B = phi.target
    F = B.F
    p = phi.source.p
    s = len(imgs)
    if label.kind == "GaMinus":
        gammas = [B.el_unit(), v_img]
    elif label.kind == "Gar":
        bound = p**label.r if label.r else 1
        sub = SuperalgebraMorphism(
            PrPresentation(p, max(s, 1)),
            B,
            {**{f"u{i}": imgs[i] for i in range(s)}, "v": v_img}
            if s
            else {"u0": B.el_zero(), "v": v_img},
            is_algebra_verified=True,
        )
        gammas = [sub.gamma_image(l) for l in range(bound)]
    else:
        bound = p ** (label.r + len(label.f) - 1)
        sub = SuperalgebraMorphism(
            PrPresentation(p, s),
            B,
            {**{f"u{i}": imgs[i] for i in range(s)}, "v": v_img},
            is_algebra_verified=True,
        )
        gammas = [sub.gamma_image(l) for l in range(bound)]
        gammas += [sub.gamma_image(l, True) for l in range(bound)]
    M = np.stack(gammas, axis=1)
    if linalg.rank(F, M) != B.dim:
        raise ValidationError("morphism is not surjective onto the target")
