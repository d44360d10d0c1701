"""Cluster-tilting data for the module categories attached to v <= w.

The category C_{v,w} sits inside the injectively-cogenerated category of
the pair: modules with no composition factors missed by w, and with the
v-torsion part removed.  Its combinatorial shadow is read off one reduced
word of w at a time: socle towers of injectives give the V_k, stripping
the v-torsion gives the U_j, and the surviving indices J index an initial
cluster-tilting object whose Gabriel quiver and hom-pairing matrix are
computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .linalg import ZERO
from .weyl import (
    DynkinDiagram,
    ReducedWord,
    WeylElement,
    bruhat_leq,
    gamma_weight,
    j_set,
    length,
    longest_element,
    reduced_word,
    v_sequence,
)
from . import prepro
from .prepro import (
    EngineError,
    LambdaModule,
    ModuleHom,
    Submodule,
    build_injective,
    direct_sum,
    ext1_dim,
    functor_E,
    functor_Edag,
    hom_basis,
    hom_dim,
    injective_sum,
    is_isomorphic,
    quotient,
    soc_sequence,
    trace_submodule,
)

__all__ = [
    "CategorySpec",
    "ClusterTiltingData",
    "GabrielQuiver",
    "category_spec",
    "generator_Iw",
    "projective_injectives",
    "v_modules",
    "u_modules",
    "initial_tilting",
    "gabriel_quiver",
    "poisson_matrix",
    "membership",
    "layer_modules",
    "categorical_mutation",
    "MutationReport",
]


@dataclass(frozen=True)
class CategorySpec:
    """The pair (v, w) together with the reduced word all indexing uses."""

    diagram: DynkinDiagram
    v: WeylElement
    w: WeylElement
    word: ReducedWord

    def __post_init__(self):
        if not bruhat_leq(self.v, self.w):
            raise ValueError("v must be below w in Bruhat order")
        if self.word.product() != self.w:
            raise ValueError("word does not multiply to w")
        if not self.word.is_reduced():
            raise ValueError("word is not reduced")


def category_spec(diagram, v, w, word=None) -> CategorySpec:
    if word is None:
        word = reduced_word(w)
    elif not isinstance(word, ReducedWord):
        word = ReducedWord(diagram, word)
    return CategorySpec(diagram, v, w, word)


@lru_cache(maxsize=None)
def generator_Iw(diagram: DynkinDiagram, w: WeylElement) -> LambdaModule:
    """Cogenerator of the w-bounded category: strip heads along w^{-1} w_0."""
    u = w.inverse * longest_element(diagram)
    return functor_E(injective_sum(diagram), u)


@lru_cache(maxsize=None)
def _generator_piece(diagram: DynkinDiagram, w: WeylElement, i: int) -> LambdaModule:
    u = w.inverse * longest_element(diagram)
    return functor_E(build_injective(diagram, i), u)


def generator_Jw(diagram: DynkinDiagram, w: WeylElement) -> LambdaModule:
    """Dual generator: strip socles along w^{-1}."""
    return functor_Edag(injective_sum(diagram), w.inverse)


def v_torsion(spec_or_v, x: LambdaModule) -> Submodule:
    """t_v(x): the largest submodule cogenerated by the v-bounded injectives."""
    v = spec_or_v.v if isinstance(spec_or_v, CategorySpec) else spec_or_v
    if v.is_identity():
        return prepro.zero_submodule(x)
    gen = generator_Iw(x.diagram, v)
    if gen.is_zero():
        return prepro.zero_submodule(x)
    return trace_submodule(gen, x)


def membership(spec: CategorySpec, x: LambdaModule) -> bool:
    """Is x an object of the stratum category?

    Two conditions: x is cogenerated inside the w-bounded part (the trace
    of I_w is everything), and the v-torsion submodule vanishes.
    """
    if x.is_zero():
        return True
    if not trace_submodule(generator_Iw(spec.diagram, spec.w), x).is_full():
        return False
    return v_torsion(spec, x).is_zero()


def v_modules(spec: CategorySpec) -> list:
    """The socle towers V_1..V_r of the word, as modules.

    V_k sits inside the injective at i_k; its dimension vector is forced
    by the Weyl-group data, which is asserted on every call.
    """
    out = []
    r = len(spec.word)
    for k in range(1, r + 1):
        i_k = spec.word.letter(k)
        q = build_injective(spec.diagram, i_k)
        letters = tuple(spec.word.letter(s) for s in range(k, 0, -1))
        sub = soc_sequence(q, letters)
        mod, _ = sub.module()
        if mod.dims != gamma_weight(spec.word, k):
            raise EngineError(f"socle tower {k} has unexpected dimension vector")
        out.append(mod)
    return out


def u_modules(spec: CategorySpec) -> list:
    """U_1..U_r: the towers with their v-torsion stripped.

    Computed two ways, by the socle-stripping functor for v_(k)^{-1} and
    as the quotient by the trace submodule; the two must agree.
    """
    vs = v_sequence(spec.v, spec.word)
    towers = v_modules(spec)
    out = []
    for k in range(1, len(spec.word) + 1):
        vk = vs[k]
        tower = towers[k - 1]
        stripped = functor_Edag(tower, vk.inverse)
        torsion = v_torsion(vk, tower)
        alt, _ = quotient(tower, torsion)
        if stripped.dims != alt.dims:
            raise EngineError(f"two torsion quotients of tower {k} disagree")
        if not stripped.is_zero() and not is_isomorphic(stripped, alt):
            raise EngineError(f"two torsion quotients of tower {k} disagree")
        out.append(stripped)
    return out


def projective_injectives(spec: CategorySpec) -> list:
    """Indecomposable pro-injective objects of the stratum category.

    Strip the v-torsion off each piece of the cogenerator I_w, decompose,
    and keep one copy of each isomorphism class.
    """
    out = []
    for i in spec.diagram.vertices:
        piece = _generator_piece(spec.diagram, spec.w, i)
        if piece.is_zero():
            continue
        torsion = v_torsion(spec, piece)
        stripped, _ = quotient(piece, torsion)
        if stripped.is_zero():
            continue
        for part, _mult in prepro.decompose(stripped):
            if not any(
                part.dims == seen.dims and is_isomorphic(part, seen)
                for seen in out
            ):
                out.append(part)
    return out


@dataclass
class ClusterTiltingData:
    """Initial cluster-tilting object, one summand per surviving index."""

    spec: CategorySpec
    labels: tuple  # positions j in J, increasing
    summands: dict  # j -> LambdaModule
    frozen: tuple  # labels of pro-injective summands

    @property
    def mutable(self) -> tuple:
        return tuple(j for j in self.labels if j not in self.frozen)

    def module(self) -> LambdaModule:
        return direct_sum(*[self.summands[j] for j in self.labels])


def initial_tilting(spec: CategorySpec) -> ClusterTiltingData:
    """The tilting object carries one summand per index in J.

    Positions outside J also produce nonzero stripped towers in general,
    but those repeat isomorphism classes already present; the seed is
    indexed by J alone.
    """
    us = u_modules(spec)
    labels = list(j_set(spec.v, spec.word))
    summands = {}
    for j in labels:
        if us[j - 1].is_zero():
            raise EngineError(f"tower {j} in J stripped to zero")
        summands[j] = us[j - 1]
    if len(labels) != length(spec.w) - length(spec.v):
        raise EngineError("summand count differs from l(w) - l(v)")
    # duplicate summands would make the object non-basic
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            if summands[labels[a]].dims == summands[labels[b]].dims and is_isomorphic(
                summands[labels[a]], summands[labels[b]]
            ):
                raise EngineError("initial tilting object is not basic")
    pro_inj = projective_injectives(spec)
    frozen = []
    for j in labels:
        u = summands[j]
        for p in pro_inj:
            if u.dims == p.dims and is_isomorphic(u, p):
                frozen.append(j)
                break
    return ClusterTiltingData(spec, tuple(labels), summands, tuple(frozen))


@dataclass
class GabrielQuiver:
    """Arrows of End(T) between the chosen summands, with multiplicities."""

    labels: tuple
    frozen: tuple
    arrows: dict  # (j, k) -> multiplicity, absent means zero

    def arrow_count(self) -> int:
        return sum(self.arrows.values())

    def to_b_matrix(self) -> list:
        """Signed exchange matrix: b[j][k] = arrows k->j minus arrows j->k."""
        n = len(self.labels)
        pos = {j: t for t, j in enumerate(self.labels)}
        b = [[0] * n for _ in range(n)]
        for (j, k), mult in self.arrows.items():
            # an arrow j -> k in End(T) contributes to the exchange of k
            b[pos[j]][pos[k]] += mult
            b[pos[k]][pos[j]] -= mult
        return b


def _radical_coords_between(summands, labels, homs, ends_rad):
    """Bases of rad(U_j, U_k) for all pairs, in the hom bases.

    For j != k no hom is an isomorphism (summands pairwise non-iso), so
    the radical is all of Hom.  For j == k it is the radical of the local
    endomorphism ring.
    """
    rad = {}
    for j in labels:
        for k in labels:
            basis = homs[(j, k)]
            if j != k:
                rad[(j, k)] = [h for h in basis]
            else:
                coords = ends_rad[j]
                rad[(j, k)] = [
                    _combine(basis, c, summands[j], summands[j]) for c in coords
                ]
    return rad


def _combine(basis, coords, dom, cod):
    acc = prepro.zero_hom(dom, cod)
    for c, h in zip(coords, basis):
        if c:
            acc = acc.add(h.scale(c))
    return acc


def gabriel_quiver(tilting: ClusterTiltingData) -> GabrielQuiver:
    """Arrow multiplicities dim rad(U_j, U_k) - dim rad^2(U_j, U_k)."""
    labels = tilting.labels
    summands = tilting.summands
    homs = {}
    for j in labels:
        for k in labels:
            homs[(j, k)] = hom_basis(summands[j], summands[k])
    ends_rad = {}
    for j in labels:
        _, rad_coords = prepro.end_radical_coords(summands[j])
        ends_rad[j] = rad_coords
    rad = _radical_coords_between(summands, labels, homs, ends_rad)
    arrows = {}
    for j in labels:
        for k in labels:
            rjk = rad[(j, k)]
            if not rjk:
                continue
            sq = []
            for m in labels:
                for f in rad[(j, m)]:
                    for g in rad[(m, k)]:
                        sq.append(g.compose(f).flatten())
            flat = [h.flatten() for h in rjk]
            dim_rad = linalg.rank(flat)
            dim_sq = linalg.rank([r for r in sq if any(x != 0 for x in r)])
            dim_join = linalg.rank(flat + sq)
            if dim_join != dim_rad:
                raise EngineError("rad^2 escapes rad; hom bookkeeping is wrong")
            mult = dim_rad - dim_sq
            if mult:
                arrows[(j, k)] = mult
    return GabrielQuiver(labels, tilting.frozen, arrows)


def poisson_matrix(tilting: ClusterTiltingData) -> list:
    """Skew matrix of hom-dimension differences between the summands."""
    labels = tilting.labels
    out = []
    for j in labels:
        row = []
        for k in labels:
            row.append(
                hom_dim(tilting.summands[j], tilting.summands[k])
                - hom_dim(tilting.summands[k], tilting.summands[j])
            )
        out.append(row)
    return out


def layer_modules(spec: CategorySpec) -> list:
    """Quotients M_k = V_k / V_{k^-} for every position k of the word.

    k^- is the previous position using the same letter; V_{k^-} = 0 when
    there is none.  Containment of consecutive towers at the same letter
    is asserted.
    """
    r = len(spec.word)
    towers_sub = []
    for k in range(1, r + 1):
        i_k = spec.word.letter(k)
        q = build_injective(spec.diagram, i_k)
        letters = tuple(spec.word.letter(s) for s in range(k, 0, -1))
        towers_sub.append(soc_sequence(q, letters))
    out = []
    for k in range(1, r + 1):
        i_k = spec.word.letter(k)
        prev = None
        for s in range(k - 1, 0, -1):
            if spec.word.letter(s) == i_k:
                prev = s
                break
        cur = towers_sub[k - 1]
        mod, _ = cur.module()
        if prev is None:
            out.append(mod)
            continue
        low = towers_sub[prev - 1]
        if not cur.contains(low):
            raise EngineError("socle towers at a repeated letter are not nested")
        # rewrite the smaller tower in the coordinates of the bigger one
        bases = {}
        for vtx in spec.diagram.vertices:
            big = cur.bases[vtx]
            rows = []
            for vec in low.bases[vtx]:
                if not big:
                    raise EngineError("nested tower escapes its ambient basis")
                sol = linalg.solve(linalg.transpose(big), list(vec))
                if sol is None:
                    raise EngineError("nested tower escapes its ambient basis")
                rows.append(sol)
            bases[vtx] = linalg.row_space_basis(rows)
        inner = Submodule(mod, bases)
        quo, _ = quotient(mod, inner)
        out.append(quo)
    return out


# -- categorical mutation -----------------------------------------------------


@dataclass
class MutationReport:
    """Everything the exchange at one summand produces."""

    tilting: ClusterTiltingData  # the mutated tilting object
    old_summand: LambdaModule
    new_summand: LambdaModule
    exchange_in: tuple  # labels (with multiplicity) of B in 0 -> M' -> B -> M
    exchange_out: tuple  # labels of B' in M -> B' -> M' -> 0


def _hom_stack(parts, target, comps):
    """One hom (+parts) -> target with the given components."""
    total = direct_sum(*parts)
    mats = {}
    for v in target.diagram.vertices:
        rows = target.dim(v)
        blk = [[ZERO] * total.dim(v) for _ in range(rows)]
        off = 0
        for part, c in zip(parts, comps):
            for rr in range(rows):
                for cc in range(part.dim(v)):
                    blk[rr][off + cc] = c.mats[v][rr][cc]
            off += part.dim(v)
        mats[v] = blk
    return total, ModuleHom(total, target, mats)


def _approximation_cover(summands, labels, target):
    """Minimal right approximation add(others) -> target.

    Start from one copy of U_k per basis hom U_k -> target, then greedily
    delete components that factor through the rest.  Greedy suffices: if
    the stacked map is a non-minimal approximation, some indecomposable
    splits off its domain with zero composite, and projecting the split
    inclusion to the components exhibits (via locality of the summand's
    endomorphism ring) one component factoring through the others.
    """
    comp = []  # list of (label, hom)
    for k in labels:
        for h in hom_basis(summands[k], target):
            comp.append((k, h))
    # greedy deletion: drop a component when it factors through the others
    changed = True
    while changed:
        changed = False
        for t in range(len(comp)):
            others = comp[:t] + comp[t + 1 :]
            if not others:
                break
            label, h = comp[t]
            if _factors_through(h, [(summands[l], g) for l, g in others]):
                comp.pop(t)
                changed = True
                break
    if not comp:
        raise EngineError("right approximation of a nonzero module is empty")
    parts = [summands[l] for l, _ in comp]
    homs = [h for _, h in comp]
    used = tuple(l for l, _ in comp)
    total, cover = _hom_stack(parts, target, homs)
    return total, cover, used


def _factors_through(h: ModuleHom, others) -> bool:
    """Does h factor as a sum of maps through the listed (module, hom) pairs?

    Linear question: find coefficients for Hom(dom, mid) x each pair such
    that sum g . u = h.
    """
    dom = h.domain
    cols = []
    for mid, g in others:
        for u in hom_basis(dom, mid):
            cols.append(g.compose(u).flatten())
    if not cols:
        return h.is_zero()
    target = h.flatten()
    sol = linalg.solve(linalg.transpose(cols), target)
    return sol is not None


def categorical_mutation(tilting: ClusterTiltingData, j: int) -> MutationReport:
    """Exchange the mutable summand at label j.

    The new summand is the kernel of the minimal right add(T/U_j)
    approximation B -> U_j; the left approximation U_j -> B' has cokernel
    isomorphic to it, and both exchange sequences are returned through
    their middle-term labels.
    """
    if j not in tilting.labels or j in tilting.frozen:
        raise ValueError(f"label {j} is not a mutable summand")
    summands = tilting.summands
    others = [k for k in tilting.labels if k != j]
    m = summands[j]

    b_mod, cover, in_labels = _approximation_cover(summands, others, m)
    ker_sub = prepro.kernel_submodule(cover)
    m_new, _ = ker_sub.module()
    if m_new.is_zero():
        raise EngineError("mutation produced a zero module")
    m_new.check()

    # the cover must be onto for the exchange sequence to be short exact
    img = prepro.image_submodule(cover)
    if not img.is_full():
        raise EngineError("right approximation is not onto")

    # left approximation: components of Hom(m, U_k), greedily minimized
    comp = []
    for k in others:
        for h in hom_basis(m, summands[k]):
            comp.append((k, h))
    changed = True
    while changed:
        changed = False
        for t in range(len(comp)):
            rest = comp[:t] + comp[t + 1 :]
            label, h = comp[t]
            if _cofactors_through(h, [(summands[l], g) for l, g in rest]):
                comp.pop(t)
                changed = True
                break
    out_labels = tuple(l for l, _ in comp)
    bp_parts = [summands[l] for l, _ in comp]
    bp_mod = direct_sum(*bp_parts) if bp_parts else None
    if bp_mod is None:
        raise EngineError("left approximation is empty")
    mats = {}
    for v in m.diagram.vertices:
        rows = bp_mod.dim(v)
        blk = [[ZERO] * m.dim(v) for _ in range(rows)]
        off = 0
        for part, (_, c) in zip(bp_parts, comp):
            for rr in range(part.dim(v)):
                for cc in range(m.dim(v)):
                    blk[off + rr][cc] = c.mats[v][rr][cc]
            off += part.dim(v)
        mats[v] = blk
    co_map = ModuleHom(m, bp_mod, mats)
    if not prepro.kernel_submodule(co_map).is_zero():
        raise EngineError("left approximation is not injective")
    coker, _ = quotient(bp_mod, prepro.image_submodule(co_map))
    if coker.dims != m_new.dims or not is_isomorphic(coker, m_new):
        raise EngineError("two exchange sequences disagree on the new summand")

    if ext1_dim(m, m_new) != 1:
        raise EngineError("exchange pair does not have a one dimensional ext")

    new_summands = dict(summands)
    new_summands[j] = m_new
    new_tilting = ClusterTiltingData(
        tilting.spec, tilting.labels, new_summands, tilting.frozen
    )
    return MutationReport(
        tilting=new_tilting,
        old_summand=m,
        new_summand=m_new,
        exchange_in=tuple(sorted(in_labels)),
        exchange_out=tuple(sorted(out_labels)),
    )


def _cofactors_through(h: ModuleHom, others) -> bool:
    """Does h factor as (sum of maps out of the listed pairs) . inclusion?

    Dual of _factors_through: h = sum u . g with g the listed maps out of
    the domain and u arbitrary.
    """
    cod = h.codomain
    cols = []
    for mid, g in others:
        for u in hom_basis(mid, cod):
            cols.append(u.compose(g).flatten())
    if not cols:
        return h.is_zero()
    target = h.flatten()
    sol = linalg.solve(linalg.transpose(cols), target)
    return sol is not None
