"""Integral lattices, sublattices and discriminant forms."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _gcd, isqrt, prod
from typing import Iterator

from . import linalg as la
from .linalg import IntMatrix

#: Largest discriminant group on which isomorphism is decided by search.
DEFAULT_FORM_BOUND = 10_000


class LatticeError(ValueError):
    """A lattice-theoretic precondition failed."""


class DegenerateLatticeError(LatticeError):
    pass


class UndecidedError(LatticeError):
    """Raised when a finite search would exceed its configured bound."""


@dataclass(frozen=True)
class Lattice:
    gram: IntMatrix
    label: str = ""

    def __post_init__(self):
        g = la.as_matrix(self.gram)
        if not la.is_symmetric(g):
            raise LatticeError("Gram matrix must be square and symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def det(self) -> int:
        """Signed determinant of the Gram matrix."""
        return la.det(self.gram)

    @property
    def signature(self) -> tuple[int, int, int]:
        return la.pivot_signature(self.gram)

    def norm(self, x) -> int:
        return la.bilinear(self.gram, x, x)

    def pair(self, x, y) -> int:
        return la.bilinear(self.gram, x, y)

    def to_json(self) -> dict:
        return {"label": self.label, "gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        gram = obj["gram"]
        if not isinstance(gram, list) or not all(
            isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r)
            for r in gram
        ):
            raise LatticeError("gram must be a list of integer rows")
        return cls(la.as_matrix(gram), str(obj.get("label", "")))

    def __repr__(self):
        return f"Lattice({self.label or 'unnamed'}, rank={self.rank})"


@dataclass(frozen=True)
class Sublattice:
    ambient: Lattice
    basis: IntMatrix

    def __post_init__(self):
        b = la.as_matrix(self.basis)
        if b and len(b[0]) != self.ambient.rank:
            raise LatticeError("basis vectors must have ambient rank")
        if la.rank(b) != len(b):
            raise LatticeError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def gram(self) -> IntMatrix:
        if not self.basis:
            return ()
        return la.gram_of(self.basis, self.ambient.gram)

    def lattice(self, label: str = "") -> Lattice:
        return Lattice(self.gram, label)

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(), "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "Sublattice":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        return cls(Lattice.from_json(obj["ambient"]), la.as_matrix(obj["basis"]))


# -- catalog ---------------------------------------------------------------

E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


def hyperbolic_plane(n: int = 1) -> Lattice:
    """U, or the twisted plane U(n)."""
    return Lattice(((0, n), (n, 0)), "U" if n == 1 else f"U({n})")


def a2() -> Lattice:
    return Lattice(((2, -1), (-1, 2)), "A2")


def e8() -> Lattice:
    return Lattice(E8_CARTAN, "E8")


def z(n: int) -> Lattice:
    """The rank-one lattice Z(n) with generator of square n."""
    return Lattice(((n,),), f"Z({n})")


def direct_sum(*lattices: Lattice) -> Lattice:
    label = " + ".join(l.label or "?" for l in lattices)
    return Lattice(la.block_diag(*(l.gram for l in lattices)), label)


def rescale(a: Lattice, n: int) -> Lattice:
    if n == 0:
        raise LatticeError("cannot rescale by 0")
    if n == 1:
        return a
    return Lattice(tuple(tuple(n * x for x in row) for row in a.gram), f"{a.label}({n})")


def discriminant(a: Lattice) -> int:
    """|det| of the Gram matrix; the signed value is ``a.det``."""
    d = a.det
    if d == 0:
        raise DegenerateLatticeError(f"{a!r} is degenerate")
    return abs(d)


def orthogonal_complement(s: Sublattice) -> Sublattice:
    """All ambient vectors orthogonal to ``s``; automatically saturated."""
    amb = s.ambient
    if not s.basis:
        return Sublattice(amb, la.identity(amb.rank))
    m = la.matmul(amb.gram, la.transpose(s.basis))
    return Sublattice(amb, la.int_kernel(m))


def saturate(s: Sublattice) -> Sublattice:
    """Basis of ``span_Q(s) ∩ ambient`` in Hermite form."""
    n = s.ambient.rank
    if not s.basis:
        return s
    perp = la.int_kernel(la.transpose(s.basis))
    if not perp:
        return Sublattice(s.ambient, la.identity(n))
    return Sublattice(s.ambient, la.int_kernel(la.transpose(perp)))


def _coordinates(rows, basis) -> IntMatrix:
    """Integer coordinates of ``rows`` with respect to ``basis`` (both row-wise)."""
    # solve c @ basis = row through the Hermite form of basis
    h, u = la.hnf(basis)
    pivots = []
    for i, hr in enumerate(h):
        j = next((k for k, x in enumerate(hr) if x), None)
        if j is None:
            break
        pivots.append((i, j))
    out = []
    for row in rows:
        rem = list(row)
        c = [0] * len(h)
        for i, j in pivots:
            q, r = divmod(rem[j], h[i][j])
            if r:
                raise LatticeError("vector is not in the lattice")
            c[i] = q
            rem = [x - q * y for x, y in zip(rem, h[i])]
        if any(rem):
            raise LatticeError("vector is not in the span")
        out.append(tuple(la.vecmat(c, u)))
    return tuple(out)


def saturation_index(s: Sublattice) -> int:
    """Index ``[saturate(s) : s]``.

    Taken from the transition matrix; when the induced form is nondegenerate
    it is checked against ``sqrt(disc(s) / disc(sat(s)))``.
    """
    sat = saturate(s)
    t = _coordinates(s.basis, sat.basis)
    idx = abs(la.det(t))
    ds = la.det(s.gram)
    if ds:
        dsat = la.det(sat.gram)
        ratio, rem = divmod(ds, dsat)
        if rem or isqrt(ratio) ** 2 != ratio or isqrt(ratio) != idx:
            raise AssertionError("saturation index cross-check failed")
    return idx


# -- discriminant forms ----------------------------------------------------


def _mod(x: Fraction, m: int) -> Fraction:
    return x - m * (x // m)


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """A finite abelian group with a Q/2Z-valued quadratic form.

    ``q_values[i][i]`` is q on the i-th generator (mod 2, or mod 1 when
    ``even`` is false); off-diagonal entries hold the bilinear pairing mod 1.
    """

    invariant_factors: tuple[int, ...]
    q_values: tuple[tuple[Fraction, ...], ...]
    even: bool = True
    generators: tuple[tuple[Fraction, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        inv = tuple(int(x) for x in self.invariant_factors)
        if any(x < 2 for x in inv) or any(inv[i + 1] % inv[i] for i in range(len(inv) - 1)):
            raise LatticeError(f"bad invariant factors {inv}")
        m = 2 if self.even else 1
        q = tuple(
            tuple(_mod(Fraction(x), m if i == j else 1) for j, x in enumerate(row))
            for i, row in enumerate(self.q_values)
        )
        object.__setattr__(self, "invariant_factors", inv)
        object.__setattr__(self, "q_values", q)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def modulus(self) -> int:
        return 2 if self.even else 1

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def q(self, x) -> Fraction:
        val = Fraction(0)
        k = len(x)
        for i in range(k):
            if x[i]:
                val += x[i] * x[i] * self.q_values[i][i]
                for j in range(i + 1, k):
                    if x[j]:
                        val += 2 * x[i] * x[j] * self.q_values[i][j]
        return _mod(val, self.modulus)

    def b(self, x, y) -> Fraction:
        k = len(x)
        val = Fraction(0)
        for i in range(k):
            if x[i]:
                for j in range(k):
                    if y[j]:
                        val += x[i] * y[j] * self.q_values[i][j]
        return _mod(val, 1)

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.invariant_factors))

    def scale(self, c: int, x) -> tuple[int, ...]:
        return tuple((c * a) % n for a, n in zip(x, self.invariant_factors))

    def element_order(self, x) -> int:
        o = 1
        for a, n in zip(x, self.invariant_factors):
            o = o * (n // _gcd(a, n)) // _gcd(o, n // _gcd(a, n))
        return o

    def negated(self) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            self.invariant_factors,
            tuple(tuple(-x for x in row) for row in self.q_values),
            self.even,
            self.generators,
        )

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        grp = " x ".join(f"Z/{n}" for n in self.invariant_factors)
        qs = ", ".join(str(self.q_values[i][i]) for i in range(len(self.invariant_factors)))
        return f"{grp}, q=[{qs}]"


def disc_group_form(a: Lattice) -> FiniteQuadraticForm:
    """Discriminant group ``L*/L`` with its induced quadratic form.

    With ``u @ G @ v = D`` the columns of ``v D^{-1}`` generate ``L*`` modulo
    ``L``; the ones with ``d_i > 1`` are the generators returned.
    """
    g = a.gram
    if la.det(g) == 0:
        raise DegenerateLatticeError(f"{a!r} is degenerate")
    d, _, v = la.snf(g)
    n = a.rank
    gens, inv = [], []
    for i in range(n):
        if d[i][i] > 1:
            inv.append(d[i][i])
            gens.append(tuple(Fraction(v[r][i], d[i][i]) for r in range(n)))
    q = tuple(tuple(la.bilinear(g, x, y) for y in gens) for x in gens)
    return FiniteQuadraticForm(tuple(inv), q, a.is_even, tuple(gens))


def _subgroup_closure(f: FiniteQuadraticForm, gens) -> frozenset:
    zero = (0,) * len(f.invariant_factors)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = f.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def finite_form_isomorphic(
    f1: FiniteQuadraticForm, f2: FiniteQuadraticForm, bound: int = DEFAULT_FORM_BOUND
) -> bool:
    """Decide isomorphism of two finite quadratic forms by backtracking.

    Generator images are chosen among elements of matching order-divisor and
    q-value, pruned by the pairing against already placed images.
    """
    if f1.order > bound or f2.order > bound:
        raise UndecidedError(f"group order above bound {bound}")
    if f1.invariant_factors != f2.invariant_factors or f1.even != f2.even:
        return False
    k = len(f1.invariant_factors)
    if k == 0:
        return True
    elems = list(f2.elements())
    qv = {x: f2.q(x) for x in elems}
    cands = []
    for i, n in enumerate(f1.invariant_factors):
        target = f1.q_values[i][i]
        cands.append([x for x in elems if qv[x] == target and f2.scale(n, x) == (0,) * k])
    images: list = []

    def search(i: int) -> bool:
        if i == k:
            return len(_subgroup_closure(f2, images)) == f2.order
        for x in cands[i]:
            if all(f2.b(images[j], x) == f1.q_values[j][i] for j in range(i)):
                images.append(x)
                if search(i + 1):
                    return True
                images.pop()
        return False

    return search(0)


@dataclass(frozen=True)
class Overlattice:
    lattice: Lattice
    index: int
    glue: tuple[tuple[Fraction, ...], ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def glue_description(self) -> str:
        return "; ".join("(" + ", ".join(str(x) for x in g) + ")" for g in self.glue)


def _isotropic_subgroups(f: FiniteQuadraticForm, max_order: int) -> list[frozenset]:
    k = len(f.invariant_factors)
    zero = (0,) * k
    iso = [x for x in f.elements() if x != zero and f.q(x) == 0]
    found = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        nxt = []
        for h in frontier:
            for x in iso:
                if x in h or any(f.b(x, y) != 0 for y in h):
                    continue
                h2 = _subgroup_closure(f, list(h) + [x])
                if len(h2) > max_order or h2 in found:
                    continue
                if all(f.q(y) == 0 for y in h2):
                    found.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def _rational_hnf(rows):
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    h, _ = la.hnf([[int(x * den) for x in r] for r in rows])
    return tuple(tuple(Fraction(x, den) for x in r) for r in h if any(r))


def _group_coordinates(a: Lattice, f: FiniteQuadraticForm):
    """Map a rational vector of ``a``'s dual to its class in ``f``'s coordinates."""
    d, _, v = la.snf(a.gram)
    vinv = la.rat_inverse(v)
    inv = [d[i][i] for i in range(a.rank)]
    keep = [i for i in range(a.rank) if inv[i] > 1]

    def to_group(y) -> tuple[int, ...]:
        c = la.matvec(vinv, y)
        out = []
        for i in keep:
            x = c[i] * inv[i]
            if x.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            out.append(int(x) % inv[i])
        return tuple(out)

    return to_group


def _orbit_representatives(a, f, subgroups, automorphisms):
    to_group = _group_coordinates(a, f)
    gens = f.generators

    def act(s, x):
        y = [Fraction(0)] * a.rank
        for c, g in zip(x, gens):
            y = [p + c * q for p, q in zip(y, g)]
        return to_group(la.vecmat(y, s))

    maps = []
    for s in automorphisms:
        s = la.as_matrix(s)
        if la.gram_of(s, a.gram) != a.gram:
            raise LatticeError("automorphism does not preserve the form")
        maps.append({x: act(s, x) for x in f.elements()})
    reps, seen = [], set()
    for h in subgroups:
        if h in seen:
            continue
        reps.append(h)
        frontier = [h]
        seen.add(h)
        while frontier:
            k = frontier.pop()
            for m in maps:
                k2 = frozenset(m[x] for x in k)
                if k2 not in seen:
                    seen.add(k2)
                    frontier.append(k2)
    return reps


def enumerate_even_overlattices(
    a: Lattice, max_index: int, automorphisms=None
) -> list[Overlattice]:
    """Even overlattices of ``a`` of index at most ``max_index``.

    One result per isotropic subgroup of the discriminant form (the trivial
    subgroup gives ``a`` itself); isometric results are not merged.  Passing
    ``automorphisms`` (matrices S with S G S^T = G acting on row vectors)
    keeps one subgroup per orbit of the group they generate.
    """
    if not a.is_even:
        raise LatticeError("overlattice enumeration needs an even lattice")
    f = disc_group_form(a)
    n = a.rank
    out = []
    subgroups = _isotropic_subgroups(f, max_index)
    if automorphisms:
        subgroups = _orbit_representatives(a, f, subgroups, automorphisms)
    for h in subgroups:
        glue = []
        for x in sorted(h):
            if any(x):
                vec = [Fraction(0)] * n
                for c, gvec in zip(x, f.generators):
                    vec = [p + c * q for p, q in zip(vec, gvec)]
                glue.append(tuple(vec))
        rows = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)] + glue
        basis = _rational_hnf(rows)
        gram = la.gram_of(basis, a.gram)
        if any(x.denominator != 1 for r in gram for x in r):
            raise AssertionError("glued Gram is not integral")
        lat = Lattice(tuple(tuple(int(x) for x in r) for r in gram), f"{a.label}+glue{len(h)}")
        if not lat.is_even:
            raise AssertionError("glued lattice is not even")
        out.append(Overlattice(lat, len(h), tuple(glue), basis))
    return out


@dataclass(frozen=True)
class Comparison:
    match: bool
    field: str | None = None

    def __str__(self):
        return "match" if self.match else f"differ({self.field})"


def invariants_compare(a: Lattice, b: Lattice, bound: int = DEFAULT_FORM_BOUND) -> Comparison:
    """Compare rank, signature, parity, discriminant and discriminant form.

    A match is genus-level agreement only; it does not prove an isometry.
    """
    if a.rank != b.rank:
        return Comparison(False, "rank")
    if a.signature != b.signature:
        return Comparison(False, "signature")
    if a.is_even != b.is_even:
        return Comparison(False, "parity")
    if discriminant(a) != discriminant(b):
        return Comparison(False, "disc")
    if not finite_form_isomorphic(disc_group_form(a), disc_group_form(b), bound):
        return Comparison(False, "disc_form")
    return Comparison(True)


def random_unimodular(n: int, rng, steps: int = 30) -> IntMatrix:
    """Product of random elementary operations; for property tests."""
    m = [list(r) for r in la.identity(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        op = rng.random()
        if n > 1 and op < 0.7:
            c = rng.choice([-2, -1, 1, 2])
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        elif n > 1 and op < 0.85:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return la.as_matrix(m)
