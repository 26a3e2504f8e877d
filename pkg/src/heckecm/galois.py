"""Galois-side combinatorics of CM-types over a fixed finite Galois closure.

Everything lives inside one finite group G = Gal(L'/Q) given by its
composition table, with a distinguished complex conjugation c.  A subfield
is a subgroup H, its embeddings are the left cosets gH, and the Galois
action is left multiplication.  No polynomial arithmetic happens here.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConjNotInvolution,
    InternalInconsistency,
    NoCMSubfield,
    NotACMType,
    NotAGroup,
    NotASubfield,
    NotHeckeCharacterType,
    SubgroupNotClosed,
    UnknownField,
)

MAX_ORDER = 64


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]


def make_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a composition table exhaustively and wrap it."""
    n = len(table)
    if n == 0 or n > MAX_ORDER:
        raise NotAGroup(f"order {n} outside 1..{MAX_ORDER}")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        if any(x < 0 or x >= n for x in row):
            raise NotAGroup(f"row {i} leaves the index range 0..{n - 1}")
    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no identity element")
    inverse = []
    for g in range(n):
        hs = [h for h in range(n) if rows[g][h] == ident and rows[h][g] == ident]
        if not hs:
            raise NotAGroup(f"element {g} has no inverse")
        inverse.append(hs[0])
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rb = rows[b]
            for c in range(n):
                if rows[ab][c] != ra[rb[c]]:
                    raise NotAGroup(f"associativity fails at ({a}, {b}, {c})")
    return FiniteGroup(n, rows, ident, tuple(inverse))


@dataclass(frozen=True)
class Field:
    """A subfield of L', identified with the subgroup of G fixing it."""

    name: str
    subgroup: frozenset[int]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class CMSetting:
    group: FiniteGroup
    conj: int
    fields: tuple[Field, ...]
    element_names: tuple[str, ...]
    aliases: tuple[tuple[str, int], ...] = ()

    @property
    def top(self) -> Field:
        """The Galois closure L' itself (trivial subgroup)."""
        return self.field_for({self.group.identity})

    def field(self, tag: str | Field) -> Field:
        if isinstance(tag, Field):
            return tag
        for f in self.fields:
            if f.name == tag:
                return f
        raise UnknownField(f"no field named {tag!r}")

    def field_for(self, subgroup: Iterable[int]) -> Field:
        """Return the registered field with this subgroup, or an anonymous one."""
        sub = frozenset(subgroup)
        for f in self.fields:
            if f.subgroup == sub:
                return f
        if not _is_subgroup(self.group, sub):
            raise SubgroupNotClosed(f"{sorted(sub)} is not a subgroup")
        return Field("Fix{" + ",".join(self.element_names[g] for g in sorted(sub)) + "}", sub)

    def element(self, token: str | int) -> int:
        if isinstance(token, int):
            if not 0 <= token < self.group.order:
                raise ValueError(f"element index {token} out of range")
            return token
        token = token.strip()
        if token in self.element_names:
            return self.element_names.index(token)
        for alias, g in self.aliases:
            if alias == token:
                return g
        if token.isdigit():
            return self.element(int(token))
        raise ValueError(f"unknown group element {token!r}")


def _closure(group: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    elems = {group.identity}
    frontier = list(elems)
    gens = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elems)


def _is_subgroup(group: FiniteGroup, sub: frozenset[int]) -> bool:
    if group.identity not in sub:
        return False
    return all(group.mul(a, b) in sub for a in sub for b in sub)


def make_setting(
    table: Sequence[Sequence[int]],
    conj: int,
    subgroups: Mapping[str, Iterable[int]],
    element_names: Sequence[str] | None = None,
    aliases: Mapping[str, int] | None = None,
) -> CMSetting:
    group = make_group(table)
    if not 0 <= conj < group.order:
        raise ConjNotInvolution(f"conj index {conj} out of range")
    if conj == group.identity or group.mul(conj, conj) != group.identity:
        raise ConjNotInvolution("complex conjugation must have order exactly 2")
    names = tuple(element_names) if element_names else tuple(str(i) for i in range(group.order))
    if len(names) != group.order or len(set(names)) != group.order:
        raise ValueError("element names must be distinct, one per element")
    fields = []
    for name, elems in subgroups.items():
        sub = frozenset(int(x) for x in elems)
        if any(x < 0 or x >= group.order for x in sub) or not _is_subgroup(group, sub):
            raise SubgroupNotClosed(f"field {name!r}: {sorted(sub)} is not a subgroup")
        fields.append(Field(name, sub))
    trivial = frozenset({group.identity})
    if not any(f.subgroup == trivial for f in fields):
        fields.insert(0, Field("L'", trivial))
    return CMSetting(group, conj, tuple(fields), names, tuple((aliases or {}).items()))


# ---------------------------------------------------------------------------
# embeddings and infinity types


@dataclass(frozen=True, order=True)
class Embedding:
    """The left coset rep*H, stored by its minimal element index."""

    field: str
    rep: int


def coset(group: FiniteGroup, g: int, sub: frozenset[int]) -> frozenset[int]:
    return frozenset(group.mul(g, h) for h in sub)


def coset_rep(group: FiniteGroup, g: int, sub: frozenset[int]) -> int:
    return min(group.mul(g, h) for h in sub)


def embeddings(setting: CMSetting, fld: str | Field) -> list[Embedding]:
    f = setting.field(fld)
    reps = sorted({coset_rep(setting.group, g, f.subgroup) for g in range(setting.group.order)})
    return [Embedding(f.name, r) for r in reps]


def _reps(setting: CMSetting, f: Field) -> list[int]:
    return [e.rep for e in embeddings(setting, f)]


def conj_embedding(setting: CMSetting, fld: str | Field, rep: int) -> int:
    f = setting.field(fld)
    return coset_rep(setting.group, setting.group.mul(setting.conj, rep), f.subgroup)


def embedding_name(setting: CMSetting, fld: str | Field, rep: int) -> str:
    f = setting.field(fld)
    if len(f.subgroup) == 1:
        return setting.element_names[rep]
    return setting.element_names[rep] + "|" + f.name


@dataclass(frozen=True)
class InfinityType:
    """Integer-valued function on the embeddings of one field (finite support)."""

    field: Field
    coeffs: tuple[tuple[int, int], ...]  # (coset rep, nonzero coefficient), sorted

    def __getitem__(self, rep: int) -> int:
        for r, v in self.coeffs:
            if r == rep:
                return v
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def degree(self) -> int:
        return sum(v for _, v in self.coeffs)

    def support(self) -> frozenset[int]:
        return frozenset(r for r, _ in self.coeffs)

    def __add__(self, other: InfinityType) -> InfinityType:
        if other.field != self.field:
            raise ValueError("infinity types live on different fields")
        d = self.as_dict()
        for r, v in other.coeffs:
            d[r] = d.get(r, 0) + v
        return InfinityType(self.field, _normalize(d))

    def __neg__(self) -> InfinityType:
        return InfinityType(self.field, tuple((r, -v) for r, v in self.coeffs))

    def __sub__(self, other: InfinityType) -> InfinityType:
        return self + (-other)

    def scale(self, k: int) -> InfinityType:
        return InfinityType(self.field, _normalize({r: k * v for r, v in self.coeffs}))


def _normalize(d: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((r, v) for r, v in d.items() if v != 0))


def infinity_type(setting: CMSetting, fld: str | Field, coeffs: Mapping[int, int]) -> InfinityType:
    """Build a validated type; keys may be any group element, they are reduced to coset reps."""
    f = setting.field(fld)
    d: dict[int, int] = {}
    for g, v in coeffs.items():
        r = coset_rep(setting.group, int(g), f.subgroup)
        if r in d and d[r] != int(v):
            raise ValueError(f"conflicting coefficients for embedding {r}")
        d[r] = int(v)
    return InfinityType(f, _normalize(d))


def char_function(setting: CMSetting, fld: str | Field, reps: Iterable[int]) -> InfinityType:
    return infinity_type(setting, fld, {r: 1 for r in reps})


def act(setting: CMSetting, tau: int, mu: InfinityType) -> InfinityType:
    """(tau mu)(sigma) = mu(tau^-1 sigma); moves mass from sigma to tau*sigma."""
    G = setting.group
    H = mu.field.subgroup
    return InfinityType(mu.field, _normalize({coset_rep(G, G.mul(tau, r), H): v for r, v in mu.coeffs}))


def lift_type(setting: CMSetting, mu: InfinityType, to: str | Field) -> InfinityType:
    L = setting.field(to)
    K = mu.field
    if not L.subgroup <= K.subgroup:
        raise NotASubfield(f"{K.name} is not a subfield of {L.name}")
    G = setting.group
    out = {}
    for r in _reps(setting, L):
        v = mu[coset_rep(G, r, K.subgroup)]
        if v:
            out[r] = v
    return InfinityType(L, _normalize(out))


def conj_type(setting: CMSetting, mu: InfinityType) -> InfinityType:
    """The type sigma -> mu(c sigma), i.e. c acting on mu."""
    return act(setting, setting.conj, mu)


# ---------------------------------------------------------------------------
# field predicates


def subgroups_containing(setting: CMSetting, sub: frozenset[int]) -> list[frozenset[int]]:
    G = setting.group
    seen = {frozenset(sub)}
    frontier = [frozenset(sub)]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(G.order):
                if g in H:
                    continue
                K = _closure(G, list(H) + [g])
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def is_real_embedding(setting: CMSetting, fld: str | Field, g: int) -> bool:
    G = setting.group
    H = setting.field(fld).subgroup
    return G.mul(G.mul(G.inv(g), setting.conj), g) in H


def is_totally_imaginary(setting: CMSetting, fld: str | Field) -> bool:
    return not any(is_real_embedding(setting, fld, g) for g in range(setting.group.order))


def is_totally_real(setting: CMSetting, fld: str | Field) -> bool:
    return all(is_real_embedding(setting, fld, g) for g in range(setting.group.order))


def normalizer(setting: CMSetting, sub: frozenset[int]) -> list[int]:
    G = setting.group
    return [n for n in range(G.order) if coset(G, n, sub) == frozenset(G.mul(h, n) for h in sub)]


def is_cm_field(setting: CMSetting, fld: str | Field) -> bool:
    """Totally imaginary, and some n in N_G(H) realises c on every coset: c g H = g n H."""
    f = setting.field(fld)
    if not is_totally_imaginary(setting, f):
        return False
    G = setting.group
    H = f.subgroup
    for n in normalizer(setting, H):
        if all(
            coset_rep(G, G.mul(setting.conj, g), H) == coset_rep(G, G.mul(g, n), H)
            for g in range(G.order)
        ):
            return True
    return False


def maximal_cm_subfield(setting: CMSetting, fld: str | Field) -> Field:
    f = setting.field(fld)
    if not is_totally_imaginary(setting, f):
        raise NoCMSubfield(f"{f.name} has a real embedding")
    cands = [
        H for H in subgroups_containing(setting, f.subgroup) if is_cm_field(setting, setting.field_for(H))
    ]
    if not cands:
        raise NoCMSubfield(f"{f.name} contains no CM subfield")
    minimal = [H for H in cands if not any(K < H for K in cands)]
    if len(minimal) != 1:
        raise InternalInconsistency(
            f"{f.name}: {len(minimal)} maximal CM subfields, the setting is inconsistent"
        )
    return setting.field_for(minimal[0])


# ---------------------------------------------------------------------------
# CM types and reflex


@dataclass(frozen=True)
class CMType:
    field: Field
    members: frozenset[int]  # coset reps

    def as_type(self) -> InfinityType:
        return InfinityType(self.field, tuple((r, 1) for r in sorted(self.members)))


def conj_pairs(setting: CMSetting, fld: str | Field) -> list[tuple[int, ...]]:
    """Orbits of <c> on J_L, each sorted, ordered by their minimal rep."""
    f = setting.field(fld)
    pairs = set()
    for r in _reps(setting, f):
        pairs.add(tuple(sorted({r, conj_embedding(setting, f, r)})))
    return sorted(pairs)


def _fiber_constant(setting: CMSetting, f: Field, K: Field, values: Mapping[int, int]) -> bool:
    G = setting.group
    seen: dict[int, int] = {}
    for r in _reps(setting, f):
        k = coset_rep(G, r, K.subgroup)
        v = values.get(r, 0)
        if seen.setdefault(k, v) != v:
            return False
    return True


def is_cm_type(setting: CMSetting, fld: str | Field, members: Iterable[int | Embedding]) -> bool:
    f = setting.field(fld)
    reps = set(_reps(setting, f))
    phi = set()
    for m in members:
        r = m.rep if isinstance(m, Embedding) else coset_rep(setting.group, int(m), f.subgroup)
        phi.add(r)
    if not phi <= reps:
        return False
    cphi = {conj_embedding(setting, f, r) for r in phi}
    if phi & cphi or (phi | cphi) != reps:
        return False
    if is_cm_field(setting, f):
        return True
    try:
        K = maximal_cm_subfield(setting, f)
    except NoCMSubfield:
        return False
    return _fiber_constant(setting, f, K, {r: 1 for r in phi})


def cm_type(setting: CMSetting, fld: str | Field, members: Iterable[int | Embedding]) -> CMType:
    f = setting.field(fld)
    members = list(members)
    if not is_cm_type(setting, f, members):
        raise NotACMType(f"{sorted(members)} is not a CM-type of {f.name}")
    reps = frozenset(
        m.rep if isinstance(m, Embedding) else coset_rep(setting.group, int(m), f.subgroup)
        for m in members
    )
    return CMType(f, reps)


def cm_types(setting: CMSetting, fld: str | Field) -> list[CMType]:
    """All CM-types of the field: transversals when CM, lifts from K otherwise."""
    f = setting.field(fld)
    if is_cm_field(setting, f):
        pairs = conj_pairs(setting, f)
        if len(pairs) > 20:
            raise ValueError("too many CM-types to enumerate")
        return [CMType(f, frozenset(choice)) for choice in product(*pairs)]
    K = maximal_cm_subfield(setting, f)
    out = []
    for phi_k in cm_types(setting, K):
        lifted = lift_type(setting, phi_k.as_type(), f)
        out.append(CMType(f, lifted.support()))
    return out


def stabilizer(setting: CMSetting, mu: InfinityType) -> frozenset[int]:
    return frozenset(t for t in range(setting.group.order) if act(setting, t, mu) == mu)


def stabilizer_field(setting: CMSetting, mu: InfinityType) -> Field:
    """Fixed field of {tau : tau mu = mu}; a registered name is reused when it exists."""
    return setting.field_for(stabilizer(setting, mu))


def _lift_to_group(setting: CMSetting, f: Field, values: Mapping[int, int]) -> list[int]:
    G = setting.group
    return [values.get(coset_rep(G, g, f.subgroup), 0) for g in range(G.order)]


def reflex(setting: CMSetting, phi: CMType) -> tuple[Field, CMType]:
    if not is_cm_type(setting, phi.field, phi.members):
        raise NotACMType("reflex needs a CM-type")
    G = setting.group
    E = stabilizer_field(setting, phi.as_type())
    lifted = {g for g in range(G.order) if coset_rep(G, g, phi.field.subgroup) in phi.members}
    inv = {G.inv(g) for g in lifted}
    for g in inv:
        if coset(G, g, E.subgroup) - inv:
            raise InternalInconsistency("inverse of the lifted type is not constant on H_E cosets")
    star = frozenset(coset_rep(G, g, E.subgroup) for g in inv)
    if not is_cm_type(setting, E, star):
        raise InternalInconsistency("reflex type is not a CM-type of the reflex field")
    return E, CMType(E, star)


# ---------------------------------------------------------------------------
# Hecke character types and criticality


def is_hecke_character_type(setting: CMSetting, mu: InfinityType) -> int | None:
    """Weil's criterion: induced from a totally real or CM subfield with constant pair sums."""
    f = mu.field
    values = mu.as_dict()
    sums = {values.get(r, 0) + values.get(conj_embedding(setting, f, r), 0) for r in _reps(setting, f)}
    if len(sums) != 1:
        return None
    w = sums.pop()
    for H in subgroups_containing(setting, f.subgroup):
        F = setting.field_for(H)
        if not (is_totally_real(setting, F) or is_cm_field(setting, F)):
            continue
        if _fiber_constant(setting, f, F, values):
            return w
    return None


@dataclass(frozen=True)
class CriticalDecomposition:
    cm_type: CMType
    alpha: InfinityType
    beta: InfinityType
    weight: int


def critical_decompose(setting: CMSetting, mu: InfinityType) -> CriticalDecomposition | None:
    if is_hecke_character_type(setting, mu) is None:
        raise NotHeckeCharacterType("type is not of Hecke character type")
    f = mu.field
    found = []
    for phi in cm_types(setting, f):
        cphi = {conj_embedding(setting, f, r) for r in phi.members}
        if all(-mu[r] >= 1 for r in phi.members) and all(mu[r] >= 0 for r in cphi):
            alpha = infinity_type(setting, f, {r: -mu[r] for r in phi.members})
            beta = infinity_type(setting, f, {r: mu[r] for r in cphi})
            ws = {beta[conj_embedding(setting, f, r)] - alpha[r] for r in phi.members}
            if len(ws) != 1:
                raise InternalInconsistency("weight condition fails on a Hecke character type")
            found.append(CriticalDecomposition(phi, alpha, beta, ws.pop()))
    if len(found) > 1:
        raise InternalInconsistency("critical CM-type is not unique")
    return found[0] if found else None


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def translate_type(setting: CMSetting, phi: CMType, eta: int) -> frozenset[int]:
    G = setting.group
    return frozenset(coset_rep(G, G.mul(eta, r), phi.field.subgroup) for r in phi.members)


def epsilon_sign(setting: CMSetting, phi: CMType, eta: int, tau: int) -> int:
    """Sign of <c>\\J_L -> eta Phi -> tau eta Phi -> <c>\\J_L."""
    if not is_cm_type(setting, phi.field, phi.members):
        raise NotACMType("epsilon_sign needs a CM-type")
    G = setting.group
    f = phi.field
    pairs = conj_pairs(setting, f)
    index = {r: i for i, p in enumerate(pairs) for r in p}
    eta_phi = translate_type(setting, phi, eta)
    perm = []
    for p in pairs:
        picked = [r for r in p if r in eta_phi]
        if len(picked) != 1:
            raise InternalInconsistency("translated type is not a CM-type")
        perm.append(index[coset_rep(G, G.mul(tau, picked[0]), f.subgroup)])
    if sorted(perm) != list(range(len(pairs))):
        raise InternalInconsistency("induced map on conjugation pairs is not a bijection")
    return permutation_sign(perm)


def xi_infinity_type(setting: CMSetting, dec: CriticalDecomposition) -> InfinityType:
    """Infinity type of the reflex character, (Phi*)^alpha (conj Phi*)^beta, on E.

    Computed as the group-ring product lift(alpha) * lift(Phi*) + lift(beta) * lift(c Phi*)
    in Z[G], pushed down to J_E.  Each embedding of L is hit |H_L| times by the lift,
    hence the division.
    """
    G = setting.group
    L = dec.cm_type.field
    E, star = reflex(setting, dec.cm_type)
    cstar = frozenset(coset_rep(G, G.mul(setting.conj, r), E.subgroup) for r in star.members)
    a = _lift_to_group(setting, L, dec.alpha.as_dict())
    b = _lift_to_group(setting, L, dec.beta.as_dict())
    s = _lift_to_group(setting, E, {r: 1 for r in star.members})
    cs = _lift_to_group(setting, E, {r: 1 for r in cstar})
    conv = [0] * G.order
    for g in range(G.order):
        if not (a[g] or b[g]):
            continue
        for h in range(G.order):
            x = G.mul(g, h)
            conv[x] += a[g] * s[h] + b[g] * cs[h]
    hl = len(L.subgroup)
    out = {}
    for r in _reps(setting, E):
        vals = {conv[x] for x in coset(G, r, E.subgroup)}
        if len(vals) != 1:
            raise InternalInconsistency("reflex product is not constant on H_E cosets")
        v = vals.pop()
        if v % hl:
            raise InternalInconsistency("reflex product not divisible by |H_L|")
        out[r] = v // hl
    xi = InfinityType(E, _normalize(out))
    total = dec.alpha.degree + dec.beta.degree
    for r in _reps(setting, E):
        if xi[r] + xi[conj_embedding(setting, E, r)] != total:
            raise InternalInconsistency("weight identity fails for the reflex type")
    return xi


# ---------------------------------------------------------------------------
# built-in settings


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def setting_c2() -> CMSetting:
    """An imaginary quadratic field K; G = {1, c}."""
    return make_setting(
        _cyclic_table(2), 1, {"K": [0], "Q": [0, 1]}, element_names=["1", "c"]
    )


def setting_zeta5() -> CMSetting:
    """Q(zeta5): G = <s> cyclic of order 4, s: zeta -> zeta^2, c = s^2.

    Element s^j is the embedding zeta -> zeta^(2^j), named e1, e2, e4, e3.
    """
    return make_setting(
        _cyclic_table(4),
        2,
        {"Q(zeta5)": [0], "Q(sqrt5)": [0, 2], "Q": [0, 1, 2, 3]},
        element_names=["e1", "e2", "e4", "e3"],
        aliases={"1": 0, "s": 1, "s2": 2, "s3": 3, "c": 2},
    )


def setting_c2xc2() -> CMSetting:
    """Q(i, sqrt2): element x + 2y acts by i -> (-1)^x i, sqrt2 -> (-1)^y sqrt2."""
    table = [[(a ^ b) for b in range(4)] for a in range(4)]
    return make_setting(
        table,
        1,
        {
            "Q(i,sqrt2)": [0],
            "Q(i)": [0, 2],
            "Q(sqrt2)": [0, 1],
            "Q(sqrt-2)": [0, 3],
            "Q": [0, 1, 2, 3],
        },
        element_names=["1", "c", "t", "ct"],
    )


def setting_s3() -> CMSetting:
    """Gal(Q(zeta3, cbrt2)/Q) acting on the roots cbrt2 * zeta3^k, k = 0, 1, 2.

    Complex conjugation fixes the real root and swaps the other two.
    """
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    ident = index[(0, 1, 2)]
    c = index[(0, 2, 1)]
    r = index[(1, 2, 0)]
    r2 = index[(2, 0, 1)]
    names = {ident: "1", c: "c", r: "r", r2: "r2", index[(2, 1, 0)]: "t1", index[(1, 0, 2)]: "t2"}
    return make_setting(
        table,
        c,
        {
            "Q(zeta3,cbrt2)": [ident],
            "Q(cbrt2)": [ident, c],
            "Q(sqrt-3)": [ident, r, r2],
            "Q": list(range(6)),
        },
        element_names=[names[i] for i in range(6)],
    )


BUILTIN_SETTINGS = {
    "C2": setting_c2,
    "zeta5": setting_zeta5,
    "C4": setting_zeta5,
    "C2xC2": setting_c2xc2,
    "S3": setting_s3,
}


# ---------------------------------------------------------------------------
# text formats
#
#   # comment
#   order=4 conj=2
#   0 1 2 3            (n rows of the composition table)
#   ...
#   elements e1 e2 e4 e3            (optional names)
#   field Q(zeta5) = 0
#   field Q(sqrt5) = 0,2


def parse_setting(text: str) -> CMSetting:
    from .errors import SpecParseError

    lines = [(i + 1, ln.split("#", 1)[0].rstrip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln.strip()]
    if not lines:
        raise SpecParseError("empty settings file", line=1, column=1)
    lineno, header = lines[0]
    m = re.fullmatch(r"\s*order\s*=\s*(\d+)\s+conj\s*=\s*(\d+)\s*", header)
    if not m:
        raise SpecParseError("expected header 'order=<n> conj=<i>'", line=lineno, column=1)
    n, conj = int(m.group(1)), int(m.group(2))
    if len(lines) < 1 + n:
        raise SpecParseError(f"expected {n} table rows", line=lines[-1][0] + 1, column=1)
    table = []
    for lineno, row in lines[1 : 1 + n]:
        entries = []
        for tok in re.finditer(r"\S+", row):
            if not tok.group().isdigit():
                raise SpecParseError(f"table entry {tok.group()!r} is not an index", line=lineno, column=tok.start() + 1)
            entries.append(int(tok.group()))
        if len(entries) != n:
            raise SpecParseError(f"table row has {len(entries)} entries, expected {n}", line=lineno, column=1)
        table.append(entries)
    names = None
    subgroups: dict[str, list[int]] = {}
    for lineno, ln in lines[1 + n :]:
        s = ln.strip()
        col = ln.index(s[0]) + 1
        if s.startswith("elements"):
            names = s.split()[1:]
            if len(names) != n:
                raise SpecParseError(f"expected {n} element names", line=lineno, column=col)
            continue
        fm = re.fullmatch(r"field\s+(\S+)\s*=\s*([\d\s,]+)", s)
        if not fm:
            raise SpecParseError("expected 'field <name> = <i1>,<i2>,...'", line=lineno, column=col)
        try:
            subgroups[fm.group(1)] = [int(x) for x in fm.group(2).replace(",", " ").split()]
        except ValueError:
            raise SpecParseError("bad subgroup element list", line=lineno, column=col) from None
    return make_setting(table, conj, subgroups, element_names=names)


def load_setting(name_or_path: str) -> CMSetting:
    """A built-in setting by name, or a settings file."""
    if name_or_path in BUILTIN_SETTINGS:
        return BUILTIN_SETTINGS[name_or_path]()
    with open(name_or_path, encoding="utf-8") as fh:
        return parse_setting(fh.read())


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z][\w']*)?\s*")


def parse_type(setting: CMSetting, fld: str | Field, text: str) -> InfinityType:
    """Parse expressions such as '2c-3', 'e1+e3', '3*e1 - 2*e4'.

    A bare integer is a coefficient on the identity embedding.
    """
    from .errors import SpecParseError

    f = setting.field(fld)
    coeffs: dict[int, int] = {}
    pos = 0
    text = text.strip()
    if not text:
        raise SpecParseError("empty infinity type", column=1)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise SpecParseError(f"cannot parse type {text!r}", column=pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        k = int(m.group(2)) if m.group(2) else 1
        if m.group(3) is None:
            g = setting.group.identity
        else:
            try:
                g = setting.element(m.group(3))
            except ValueError as exc:
                raise SpecParseError(str(exc), column=m.start(3) + 1) from None
        r = coset_rep(setting.group, g, f.subgroup)
        coeffs[r] = coeffs.get(r, 0) + sign * k
        pos = m.end()
    return InfinityType(f, _normalize(coeffs))


def parse_members(setting: CMSetting, fld: str | Field, text: str) -> frozenset[int]:
    f = setting.field(fld)
    return frozenset(coset_rep(setting.group, setting.element(t), f.subgroup) for t in text.split(",") if t.strip())


def format_type(setting: CMSetting, mu: InfinityType) -> str:
    """Inverse of parse_type: '2c - 3', '2e1 + e2 + e3'."""
    ident = setting.group.identity
    parts = []
    for r, v in sorted(mu.coeffs, key=lambda rv: (rv[0] != ident, rv[0])):
        name = "" if r == ident else setting.element_names[r]
        mag = str(abs(v)) if (abs(v) != 1 or not name) else ""
        parts.append(("-" if v < 0 else "+", mag + name))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])
