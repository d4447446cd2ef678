"""Explicit lattices for special cubic fourfolds and their K3 categories.

Coordinates in the Mukai lattice are always in the slot order

    E8(-1), E8(-1), U1 = <e, f>, U2 = <e', f'>, U3 = <e1, f1>, U4

and A2-perp vectors are written in the basis (E8(-1)^2, U3, U4, mu1, mu2).
A2 vectors ``(a, b)`` mean ``a*lambda1 + b*lambda2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg as la
from .arith import A2Vector, a2_represents, a2_represents_primitive, a2_vectors_of_norm
from .hassett import brauer_orders, cond_star, cond_star2, cond_star2prime, factorizations_k2d0
from .lattice import (
    Lattice,
    Sublattice,
    _coordinates,
    direct_sum,
    discriminant,
    e8,
    hyperbolic_plane,
    orthogonal_complement,
    rescale,
    saturate,
    saturation_index,
    z,
)

A2_GRAM = ((2, -1), (-1, 2))
DEFAULT_K_BOUND = 1000

# slots in the Mukai lattice
E, F, E_, F_, E1, F1, E2, F2 = range(16, 24)
MUKAI_RANK = 24
PERP_RANK = 22


class InadmissibleError(ValueError):
    """d violates d = 0, 2 (mod 6) (or the bound d > 6 where required)."""


class ConsistencyError(AssertionError):
    """Two independent decision paths disagreed."""


def _unit(i: int, n: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def _comb(*terms, n=MUKAI_RANK) -> tuple[int, ...]:
    out = [0] * n
    for c, slot in terms:
        out[slot] += c
    return tuple(out)


def _add(*vecs) -> tuple[int, ...]:
    return tuple(sum(xs) for xs in zip(*vecs))


def _smul(c: int, v) -> tuple[int, ...]:
    return tuple(c * x for x in v)


@dataclass(frozen=True)
class CubicSetup:
    mukai: Lattice
    lam1: tuple[int, ...]
    lam2: tuple[int, ...]
    mu1: tuple[int, ...]
    mu2: tuple[int, ...]
    perp_basis: la.IntMatrix
    i221: Lattice
    h: tuple[int, ...]
    perp_to_i221: la.IntMatrix
    a2_perp: Lattice = field(repr=False)

    def a2_to_mukai(self, w) -> tuple[int, ...]:
        a, b = w
        return _add(_smul(a, self.lam1), _smul(b, self.lam2))

    def perp_to_mukai(self, v) -> tuple[int, ...]:
        return la.vecmat(v, self.perp_basis)

    def perp_to_cubic(self, v) -> tuple[int, ...]:
        return la.vecmat(v, self.perp_to_i221)

    @property
    def a2_sublattice(self) -> Sublattice:
        return Sublattice(self.mukai, (self.lam1, self.lam2))


def mukai_lattice() -> Lattice:
    e8m = rescale(e8(), -1)
    u = hyperbolic_plane()
    lat = direct_sum(e8m, e8m, u, u, u, u)
    return Lattice(lat.gram, "Mukai")


def cubic_lattice() -> Lattice:
    """I_{2,21} written as E8(-1)^2 + U^2 + Z(-1)^3."""
    e8m = rescale(e8(), -1)
    u = hyperbolic_plane()
    lat = direct_sum(e8m, e8m, u, u, z(-1), z(-1), z(-1))
    return Lattice(lat.gram, "I_{2,21}")


@lru_cache(maxsize=None)
def build_setup() -> CubicSetup:
    """Fixed A2 inside the Mukai lattice, its complement and the cubic side."""
    mukai = mukai_lattice()
    lam1 = _comb((1, E_), (1, F_))
    lam2 = _comb((1, E), (1, F), (-1, E_))
    mu1 = _comb((1, E), (-1, E_), (1, F_))
    mu2 = _comb((-1, F), (1, E_), (-1, F_))
    keep = list(range(16)) + [E1, F1, E2, F2]
    perp_basis = tuple(_unit(i, MUKAI_RANK) for i in keep) + (mu1, mu2)

    i221 = cubic_lattice()
    n = i221.rank
    h = _comb((1, 20), (1, 21), (1, 22), n=n)
    cubic_keep = list(range(16)) + [16, 17, 18, 19]
    perp_to_i221 = tuple(_unit(i, n) for i in cubic_keep) + (
        _comb((1, 20), (-1, 21), n=n),
        _comb((1, 21), (-1, 22), n=n),
    )
    a2_perp = Lattice(la.gram_of(perp_basis, mukai.gram), "A2perp")
    setup = CubicSetup(mukai, lam1, lam2, mu1, mu2, perp_basis, i221, h, perp_to_i221, a2_perp)
    _verify_setup(setup)
    return setup


def _verify_setup(s: CubicSetup):
    g = s.mukai.gram
    if la.gram_of((s.lam1, s.lam2), g) != A2_GRAM:
        raise ConsistencyError("lambda basis does not span A2")
    if la.gram_of((s.mu1, s.mu2), g) != ((-2, 1), (1, -2)):
        raise ConsistencyError("mu basis is not A2(-1)")
    if any(s.mukai.pair(x, y) for x in (s.lam1, s.lam2) for y in s.perp_basis):
        raise ConsistencyError("A2-perp basis is not orthogonal to A2")
    comp = orthogonal_complement(s.a2_sublattice)
    if la.hnf(comp.basis)[0] != tuple(r for r in la.hnf(s.perp_basis)[0] if any(r)):
        raise ConsistencyError("A2-perp basis does not span the complement")
    if la.gram_of(s.perp_to_i221, s.i221.gram) != s.a2_perp.gram:
        raise ConsistencyError("embedding into I_{2,21} is not isometric")
    if s.i221.norm(s.h) != -3 or any(s.i221.pair(s.h, y) for y in s.perp_to_i221):
        raise ConsistencyError("h is not orthogonal to the image of A2-perp")


def _require_admissible(d: int):
    if d <= 0 or d % 6 not in (0, 2):
        raise InadmissibleError(f"(∗) fails: d={d} is not 0 or 2 mod 6")


def build_v(d: int) -> tuple[int, ...]:
    """Generator v of K_d ∩ A2-perp in A2-perp coordinates."""
    _require_admissible(d)
    v = [0] * PERP_RANK
    if d % 6 == 0:
        v[16], v[17] = 1, -(d // 6)
    else:
        v[16], v[17] = 3, -3 * ((d - 2) // 6)
        v[20], v[21] = 1, -1
    return tuple(v)


def v_square(d: int) -> int:
    return build_setup().a2_perp.norm(build_v(d))


@dataclass(frozen=True)
class GammaD:
    sublattice: Sublattice
    sat_index: int
    disc: int

    def __iter__(self):
        return iter((self.sublattice, self.sat_index, self.disc))


def gamma_d(d: int) -> GammaD:
    """Saturation of A2 + Z v inside the Mukai lattice."""
    s = build_setup()
    v = s.perp_to_mukai(build_v(d))
    sub = Sublattice(s.mukai, (s.lam1, s.lam2, v))
    sat = saturate(sub)
    idx = saturation_index(sub)
    return GammaD(sat, idx, discriminant(sat.lattice()))


def k_d_gram(d: int) -> Lattice:
    """Gram of K_d = sat<h, v> in I_{2,21} on a basis (h, g).

    g completes h to a basis and is normalized so (h, g) lies in {0, -1}.
    """
    s = build_setup()
    v = s.perp_to_cubic(build_v(d))
    sat = saturate(Sublattice(s.i221, (s.h, v)))
    # complete h to a basis of the saturation
    basis = sat.basis
    coords = _solve_in_basis(s.h, basis)
    g0 = _complement_vector(coords, basis)
    hg = s.i221.pair(s.h, g0)
    r = hg % 3
    if r == 1:
        g0, hg = _smul(-1, g0), -hg
        r = hg % 3
    # (h, g + t h) = hg - 3t since (h)^2 = -3
    t = (hg - (0 if r == 0 else -1)) // 3
    g = _add(g0, _smul(t, s.h))
    gram = la.gram_of((s.h, g), s.i221.gram)
    return Lattice(gram, f"K_{d}")


def _solve_in_basis(x, basis):
    return _coordinates((x,), basis)[0]


def _complement_vector(coords, basis):
    """A vector completing the primitive rank-2 coordinate vector to a basis."""
    p, q = coords
    g, x, y = la.xgcd(p, q)
    if g != 1:
        raise ConsistencyError("h is not primitive in K_d")
    # det [[p, q], [-y, x]] = 1
    return _add(_smul(-y, basis[0]), _smul(x, basis[1]))


def k3_membership(d: int) -> bool:
    """d satisfies (∗∗), cross-checked against primitive A2 representation."""
    if not cond_star(d):
        raise InadmissibleError(f"(∗) fails for d={d}")
    a = cond_star2(d)
    b = a2_represents_primitive(d)
    if a != b:
        raise ConsistencyError(f"(**) and primitive A2 representation disagree at d={d}")
    return a


def k3prime_membership(d: int) -> bool:
    """d satisfies (∗∗′), cross-checked against the isotropic-vector criterion.

    An isotropic vector of A2 + Z v exists iff -(v)^2 is an A2 norm; for
    d = 2 (6) the same argument runs with 3e and -(v)^2 = 3d.
    """
    if not cond_star(d):
        raise InadmissibleError(f"(∗) fails for d={d}")
    first = cond_star2prime(d)
    second = a2_represents(-v_square(d))
    if first != second:
        raise ConsistencyError(f"(**') and the isotropic criterion disagree at d={d}")
    return first


# -- spherical classes -----------------------------------------------------


@dataclass(frozen=True)
class SphericalStatus:
    status: str  # "contains" | "empty" | "unknown"
    witness: tuple[int, ...] | None = None
    obstruction: str | None = None
    k: int | None = None
    bound: int | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out

    def __str__(self):
        if self.status == "empty":
            return "empty (mod 3)"
        if self.status == "unknown":
            return f"unknown (k <= {self.bound})"
        return f"contains (k={self.k})"


MOD3_OBSTRUCTION = (
    "mod 3: 9 | d forces (w)^2 = k^2 d/3 - 2 = 2m with m = 2 (mod 3), "
    "which is never an A2 norm"
)


def _witness_key(w: A2Vector):
    return (w.a < 0 or w.b < 0, abs(w.a) + abs(w.b), -w.a, -w.b)


def glue_class(d: int) -> tuple[int, int]:
    """For d = 2 (6): the A2 class a mod 3 with (a + v)/3 in the Mukai lattice."""
    s = build_setup()
    v = s.perp_to_mukai(build_v(d))
    for a, b in itertools.product(range(3), repeat=2):
        x = _add(s.a2_to_mukai((a, b)), v)
        if all(c % 3 == 0 for c in x):
            return (a, b)
    raise ConsistencyError(f"no glue vector for d={d}")


def spherical_status(d: int, k_bound: int = DEFAULT_K_BOUND) -> SphericalStatus:
    """Look for a (-2)-class in Gamma_d.

    For d = 0 (6), Gamma_d = A2 + Z v and delta = w + k v needs
    (w)^2 = k^2 d/3 - 2.  For d = 2 (6), delta = (w + k v)/3 with w = k a
    mod 3 (a the glue class) needs (w)^2 = 3 d k^2 - 18.  "empty" is only
    reported with a proof; exhausting the bound gives "unknown".
    """
    _require_admissible(d)
    s = build_setup()
    v = s.perp_to_mukai(build_v(d))
    if d % 6 == 0:
        if d % 9 == 0:
            return SphericalStatus("empty", obstruction=MOD3_OBSTRUCTION)
        for k in range(1, k_bound + 1):
            target = k * k * d // 3 - 2
            if target < 0 or not a2_represents(target):
                continue
            w = min(a2_vectors_of_norm(target), key=_witness_key)
            delta = _add(s.a2_to_mukai(w), _smul(k, v))
            return _checked(SphericalStatus("contains", delta, k=k))
        return SphericalStatus("unknown", bound=k_bound)
    ga, gb = glue_class(d)
    for k in range(1, k_bound + 1):
        target = 3 * d * k * k - 18
        if target < 0 or not a2_represents(target):
            continue
        ok = [
            w for w in a2_vectors_of_norm(target)
            if (w.a - k * ga) % 3 == 0 and (w.b - k * gb) % 3 == 0
        ]
        if not ok:
            continue
        w = min(ok, key=_witness_key)
        num = _add(s.a2_to_mukai(w), _smul(k, v))
        delta = tuple(x // 3 for x in num)
        return _checked(SphericalStatus("contains", delta, k=k))
    return SphericalStatus("unknown", bound=k_bound)


def _checked(st: SphericalStatus) -> SphericalStatus:
    if build_setup().mukai.norm(st.witness) != -2:
        raise ConsistencyError("spherical witness does not have square -2")
    return st


# -- U(n) completion -------------------------------------------------------


def complete_to_un(e, ambient: Lattice | None = None, a2_basis=None) -> tuple[tuple[int, ...], int]:
    """Complete an isotropic e to a twisted hyperbolic plane <e, f> = U(n).

    With a root a of the designated A2 pairing nontrivially with e,
    f = (a.e) a - ((a)^2 / 2) e has (f)^2 = 0 and (e.f) = (a.e)^2 = n.
    """
    if ambient is None:
        s = build_setup()
        ambient, a2_basis = s.mukai, (s.lam1, s.lam2)
    e = tuple(e)
    if not any(e) or ambient.norm(e) != 0:
        raise ValueError("e must be a nonzero isotropic vector")
    l1, l2 = a2_basis
    for a in (tuple(l1), tuple(l2), _add(l1, l2)):
        ae = ambient.pair(a, e)
        if ae:
            f = _add(_smul(ae, a), _smul(-(ambient.norm(a) // 2), e))
            return f, ae * ae
    raise ValueError("e is orthogonal to A2 (e lies in A2-perp)")


# -- O(A2) -----------------------------------------------------------------


def _mat2_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


_ID2 = ((1, 0), (0, 1))


@dataclass(frozen=True)
class IsometryA2:
    """An isometry of A2; the columns of ``matrix`` are the images of lambda1, lambda2."""

    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        if la.matmul(la.matmul(la.transpose(m), A2_GRAM), m) != A2_GRAM:
            raise ValueError(f"{m} does not preserve the A2 form")

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @property
    def disc_action(self) -> int:
        # A2*/A2 = Z/3 is generated by (2 lambda1 + lambda2)/3
        img = self.apply((2, 1))
        if (img[0] - 2) % 3 == 0 and (img[1] - 1) % 3 == 0:
            return 1
        return -1

    @property
    def order(self) -> int:
        m = self.matrix
        for k in range(1, 13):
            if m == _ID2:
                return k
            m = _mat2_mul(m, self.matrix)
        raise ConsistencyError("isometry of A2 with order not dividing 12")

    def apply(self, w) -> tuple[int, int]:
        return tuple(la.matvec(self.matrix, tuple(w)))

    def __matmul__(self, other: "IsometryA2") -> "IsometryA2":
        return IsometryA2(_mat2_mul(self.matrix, other.matrix))


ROOTS = ((1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1))


@dataclass(frozen=True)
class OA2Report:
    elements: tuple[IsometryA2, ...]
    kernel: tuple[IsometryA2, ...]
    kernel_is_s3: bool
    det_is_sign: bool

    @property
    def order(self) -> int:
        return len(self.elements)


def _s3_isomorphism(group):
    """A bijection group -> S3 respecting products, or None."""
    perms = list(itertools.permutations(range(3)))

    def pmul(p, q):
        return tuple(p[q[i]] for i in range(3))

    idx = {g.matrix: i for i, g in enumerate(group)}
    table = [[idx[(g @ h).matrix] for h in group] for g in group]
    for image in itertools.permutations(perms):
        if all(
            image[table[i][j]] == pmul(image[i], image[j])
            for i in range(len(group))
            for j in range(len(group))
        ):
            return dict(zip(group, image))
    return None


def _sign(p) -> int:
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    return -1 if inv % 2 else 1


def o_a2_group() -> OA2Report:
    """All isometries of A2, found from the images of lambda1, lambda2 among the roots."""
    elems = []
    for r1, r2 in itertools.product(ROOTS, repeat=2):
        m = ((r1[0], r2[0]), (r1[1], r2[1]))
        if la.matmul(la.matmul(la.transpose(m), A2_GRAM), m) == A2_GRAM:
            elems.append(IsometryA2(m))
    kernel = tuple(g for g in elems if g.disc_action == 1)
    iso = _s3_isomorphism(kernel)
    det_is_sign = iso is not None and all(g.det == _sign(p) for g, p in iso.items())
    return OA2Report(tuple(elems), kernel, iso is not None, det_is_sign)


def phi0_action() -> IsometryA2:
    """lambda1 -> -lambda1 - lambda2, lambda2 -> lambda1."""
    return IsometryA2(((-1, 1), (-1, 0)))


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class DivisorReport:
    d: int
    v: tuple[int, ...]
    v_sq: int
    sat_index: int
    disc_gamma: int
    k3: bool
    k3prime: bool
    sph: SphericalStatus
    factorizations: tuple[tuple[int, int], ...]
    brauer_orders: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "v": list(self.v),
            "v_sq": self.v_sq,
            "sat_index": self.sat_index,
            "disc_gamma": self.disc_gamma,
            "k3": self.k3,
            "k3prime": self.k3prime,
            "sph": self.sph.to_json(),
            "factorizations": [list(p) for p in self.factorizations],
            "brauer_orders": list(self.brauer_orders),
        }


def divisor_report(d: int, k_bound: int = DEFAULT_K_BOUND) -> DivisorReport:
    if not cond_star(d):
        raise InadmissibleError(f"(∗) fails for d={d}")
    v = build_v(d)
    v_sq = v_square(d)
    gam = gamma_d(d)
    expected_sq = -d // 3 if d % 6 == 0 else -3 * d
    if v_sq != expected_sq or gam.disc != d or gam.sat_index != (1 if d % 6 == 0 else 3):
        raise ConsistencyError(f"lattice invariants off at d={d}")
    k3p = k3prime_membership(d)
    return DivisorReport(
        d=d,
        v=v,
        v_sq=v_sq,
        sat_index=gam.sat_index,
        disc_gamma=gam.disc,
        k3=k3_membership(d),
        k3prime=k3p,
        sph=spherical_status(d, k_bound),
        factorizations=tuple(factorizations_k2d0(d)) if k3p else (),
        brauer_orders=tuple(brauer_orders(d)) if k3p else (),
    )
