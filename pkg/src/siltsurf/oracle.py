"""Independent homological ground truth.

Complexes of projectives over the gentle algebra with exact arithmetic
(rationals by default, a prime field when speed matters).  Hom dimensions in
the homotopy category are computed as cohomology of the Hom complex; nothing
here looks at the surface, so agreement with the geometric tables is a real
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import GentleAlgebra
from .curves import GradedCurve, ensure_perfect, passage_slots
from .errors import PreconditionError
from .surface import DissectedSurface


# -- fields -------------------------------------------------------------------


class FieldQ:
    name = "Q"

    def of(self, x):
        return Fraction(x)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / Fraction(a)


class FieldFp:
    def __init__(self, p: int):
        self.p = p
        self.name = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        x = Fraction(x)
        den = pow(x.denominator % self.p, self.p - 2, self.p)
        return (x.numerator % self.p) * den % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a % self.p, self.p - 2, self.p)


DEFAULT_FIELD = FieldQ()


# -- sparse exact linear algebra ------------------------------------------------


def _rank_and_nullspace(rows, ncols, field, want_nullspace=False):
    """Gaussian elimination on sparse rows (dicts col->coeff)."""
    rows = [dict(r) for r in rows if r]
    pivots = {}  # col -> reduced row
    for r in rows:
        while r:
            c = min(r)
            if c in pivots:
                piv = pivots[c]
                factor = field.mul(r[c], field.inv(piv[c]))
                for cc, vv in piv.items():
                    nv = field.add(r.get(cc, field.zero), field.neg(field.mul(factor, vv)))
                    if nv == field.zero:
                        r.pop(cc, None)
                    else:
                        r[cc] = nv
            else:
                pivots[c] = r
                break
    rank = len(pivots)
    if not want_nullspace:
        return rank, None
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = {fc: field.one}
        # back-substitute in increasing pivot order (rows are not fully reduced)
        for pc in sorted(pivots, reverse=True):
            row = pivots[pc]
            s = field.zero
            for cc, vv in row.items():
                if cc != pc and cc in vec:
                    s = field.add(s, field.mul(vv, vec[cc]))
            if s != field.zero:
                vec[pc] = field.neg(field.mul(s, field.inv(row[pc])))
        basis.append(vec)
    return rank, basis


# -- path-coefficient maps -------------------------------------------------------

# A map P_u -> P_v is a dict {path: coeff} with path in e_u A e_v.


def compose_maps(alg: GentleAlgebra, f: dict, g: dict, field) -> dict:
    out = {}
    for p, c in f.items():
        for q, d in g.items():
            pq = alg.compose_paths(p, q)
            if pq is None:
                continue
            v = field.add(out.get(pq, field.zero), field.mul(c, d))
            if v == field.zero:
                out.pop(pq, None)
            else:
                out[pq] = v
    return out


def scale_map(f: dict, c, field) -> dict:
    if c == field.zero:
        return {}
    return {p: field.mul(c, v) for p, v in f.items()}


def add_maps(f: dict, g: dict, field) -> dict:
    out = dict(f)
    for p, v in g.items():
        nv = field.add(out.get(p, field.zero), v)
        if nv == field.zero:
            out.pop(p, None)
        else:
            out[p] = nv
    return out


# -- chain complexes --------------------------------------------------------------


@dataclass
class ChainComplex:
    """Bounded complex of projectives with sparse path-valued differential."""

    alg: GentleAlgebra
    gens: tuple  # tuple of (degree, vertex)
    diff: dict  # (i, j) -> {path: coeff}; deg(gens[j]) == deg(gens[i]) + 1
    field: object = None

    def __post_init__(self):
        if self.field is None:
            self.field = DEFAULT_FIELD

    def degrees(self):
        return [d for d, _ in self.gens]

    def gens_in_degree(self, d: int):
        return [i for i, (dd, _) in enumerate(self.gens) if dd == d]

    def check(self, radical: bool = False) -> None:
        """d raises degree by one, entries are genuine maps, d^2 = 0.

        ``radical=True`` additionally forbids scalar (length-0) entries; holds
        for string/band complexes and minimal forms, but not for raw cones.
        """
        for (i, j), comp in self.diff.items():
            di, dj = self.gens[i][0], self.gens[j][0]
            if dj != di + 1:
                raise PreconditionError("differential does not raise degree by 1")
            for p in comp:
                if radical and p[0] == "e":
                    raise PreconditionError("differential has a non-radical entry")
                if (
                    self.alg.path_source(p) != self.gens[i][1]
                    or self.alg.path_target(p) != self.gens[j][1]
                ):
                    raise PreconditionError("differential entry path endpoints mismatch")
        if not self.d_squared_zero():
            raise PreconditionError("d^2 != 0")

    def d_squared_zero(self) -> bool:
        by_src = {}
        for (i, j), comp in self.diff.items():
            by_src.setdefault(i, []).append((j, comp))
        acc = {}
        for i, outs in by_src.items():
            for j, c1 in outs:
                for k, c2 in by_src.get(j, []):
                    prod = compose_maps(self.alg, c1, c2, self.field)
                    if prod:
                        acc[(i, k)] = add_maps(acc.get((i, k), {}), prod, self.field)
        return all(not v for v in acc.values())

    def shifted(self, n: int) -> "ChainComplex":
        """[n]: degrees drop by n, differential sign flips n times."""
        gens = tuple((d - n, v) for d, v in self.gens)
        sign = self.field.one if n % 2 == 0 else self.field.neg(self.field.one)
        diff = {ij: scale_map(c, sign, self.field) for ij, c in self.diff.items()}
        return ChainComplex(self.alg, gens, diff, self.field)

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        off = len(self.gens)
        gens = self.gens + other.gens
        diff = dict(self.diff)
        for (i, j), c in other.diff.items():
            diff[(i + off, j + off)] = c
        return ChainComplex(self.alg, gens, diff, self.field)

    def graded_multiset(self):
        out = {}
        for d, v in self.gens:
            out[(d, v)] = out.get((d, v), 0) + 1
        return out

    def dump(self) -> dict:
        """Per-degree projective lists plus sparse differential triples."""
        per_degree = {}
        for i, (d, v) in enumerate(self.gens):
            per_degree.setdefault(d, []).append(v)
        triples = [
            [i, j, sorted(("*".join(p), str(c)) for p, c in comp.items())]
            for (i, j), comp in sorted(self.diff.items())
        ]
        return {
            "perDegree": {str(d): sorted(vs) for d, vs in sorted(per_degree.items())},
            "differentials": triples,
            "field": self.field.name,
        }


def zero_complex(alg, field=None) -> ChainComplex:
    return ChainComplex(alg, (), {}, field or DEFAULT_FIELD)


# -- geometric curve -> complex ---------------------------------------------------


def _passage_component(surf: DissectedSurface, prev, cur):
    """(lower, path) for the passage: lower=0 means prev has the smaller slot."""
    w, i, j = passage_slots(surf, prev, cur)
    lo, hi = min(i, j), max(i, j)
    path = tuple(surf.fan_arrows[(w, t)] for t in range(lo + 1, hi + 1))
    return (0 if i < j else 1), path


def complex_of(
    surf: DissectedSurface, alg: GentleAlgebra, gc: GradedCurve, field=None
) -> ChainComplex:
    """String complex of a graded arc: P_(arc at crossing) placed in degree f.

    Closed curves delegate to :func:`band_complex`; a power word is folded
    onto its primitive with the multiplicity absorbed into the block size, so
    (gamma^k, f^k, lam, n) and (gamma, f, lam, k*n) name the same object.
    """
    field = field or DEFAULT_FIELD
    ensure_perfect(gc)
    word = gc.word
    if word.kind == "closed":
        from .homs import primitive_root

        lam, n = gc.band if gc.band else (Fraction(1), 1)
        prim, k = primitive_root(word)
        if k > 1:
            period = len(prim.steps)
            if gc.f[:period] * k != gc.f:
                raise PreconditionError("grading of a power word is not periodic")
            gc = GradedCurve(prim, gc.f[:period], None)
            n = n * k
        return band_complex(surf, alg, gc, lam, n, field)
    gens = tuple((gc.f[i], e[0]) for i, e in enumerate(word.steps))
    diff = {}
    for i in range(len(word.steps) - 1):
        lower, path = _passage_component(surf, word.steps[i], word.steps[i + 1])
        src, tgt = (i, i + 1) if lower == 0 else (i + 1, i)
        if gc.f[tgt] != gc.f[src] + 1:
            raise PreconditionError("grading is not the word grading")
        diff[(src, tgt)] = {path: field.one}
    cx = ChainComplex(alg, gens, diff, field)
    cx.check(radical=True)
    return cx


def band_complex(
    surf: DissectedSurface, alg: GentleAlgebra, gc: GradedCurve, lam, n: int, field=None
) -> ChainComplex:
    """Band complex with an n-dimensional invertible block of eigenvalue lam.

    The block J = lam*I + N (single Jordan block) sits on the wrap-around
    passage; all other passages carry identity blocks.
    """
    field = field or DEFAULT_FIELD
    word = gc.word
    if word.kind != "closed":
        raise PreconditionError("band complexes need closed curves")
    lam = field.of(Fraction(lam))
    if lam == field.zero:
        raise PreconditionError("band parameter lambda must be nonzero")
    if n < 1:
        raise PreconditionError("band multiplicity must be >= 1")
    m = len(word.steps)
    # gen index: crossing c, copy k -> c*n + k
    gens = tuple((gc.f[c], word.steps[c][0]) for c in range(m) for _ in range(n))
    passages = []
    for c in range(m):
        nxt = (c + 1) % m
        lower, path = _passage_component(surf, word.steps[c], word.steps[nxt])
        passages.append((c, nxt, lower, path))
    # the parameter is the travel-signed product of the scalar blocks, so the
    # lam-block must sit on a travel-forward component to make rotations of
    # the word isomorphic complexes
    forward = [c for (c, _n, lower, _p) in passages if lower == 0]
    if not forward:
        raise PreconditionError("gradable closed word with no forward passage")
    block_at = forward[-1]
    diff = {}
    for c, nxt, lower, path in passages:
        src_c, tgt_c = (c, nxt) if lower == 0 else (nxt, c)
        if gc.f[tgt_c] != gc.f[src_c] + 1:
            raise PreconditionError("grading is not the word grading")
        wrap = c == block_at
        for k in range(n):
            for kk in range(n):
                if wrap:
                    if k == kk:
                        coeff = lam
                    elif kk == k + 1:
                        coeff = field.one
                    else:
                        continue
                else:
                    if k != kk:
                        continue
                    coeff = field.one
                i = src_c * n + k
                j = tgt_c * n + kk
                diff[(i, j)] = add_maps(diff.get((i, j), {}), {path: coeff}, field)
    diff = {ij: c for ij, c in diff.items() if c}
    cx = ChainComplex(alg, gens, diff, field)
    cx.check(radical=True)
    return cx


# -- Hom complex -------------------------------------------------------------------


def _hom_basis(alg: GentleAlgebra, C: ChainComplex, D: ChainComplex, t: int):
    """Basis of Hom^t = product of Hom(P_u, P_v) over aligned generators."""
    paths_between = {}
    for p in alg.nonzero_paths():
        key = (alg.path_source(p), alg.path_target(p))
        paths_between.setdefault(key, []).append(p)
    basis = []
    for i, (di, u) in enumerate(C.gens):
        for j, (dj, v) in enumerate(D.gens):
            if dj != di + t:
                continue
            for p in paths_between.get((u, v), []):
                basis.append((i, j, p))
    return basis


def _hom_differential_matrix(C: ChainComplex, D: ChainComplex, t: int, basis_t, basis_t1):
    """Matrix of d(phi) = phi;d_D - (-1)^t d_C;phi as rows over basis_t columns."""
    field = C.field
    alg = C.alg
    col_index = {b: c for c, b in enumerate(basis_t)}
    row_index = {b: r for r, b in enumerate(basis_t1)}
    rows = [dict() for _ in basis_t1]
    sign = field.one if t % 2 == 0 else field.neg(field.one)
    for (i, j, p), c in col_index.items():
        # phi ; d_D : component (i -> k) for each D-differential (j -> k)
        for (jj, k), comp in D.diff.items():
            if jj != j:
                continue
            prod = compose_maps(alg, {p: field.one}, comp, field)
            for q, v in prod.items():
                r = row_index.get((i, k, q))
                if r is None:
                    continue
                rows[r][c] = field.add(rows[r].get(c, field.zero), v)
        # -(-1)^t d_C ; phi : component (i0 -> j) for each C-differential (i0 -> i)
        for (i0, ii), comp in C.diff.items():
            if ii != i:
                continue
            prod = compose_maps(alg, comp, {p: field.one}, field)
            for q, v in prod.items():
                r = row_index.get((i0, j, q))
                if r is None:
                    continue
                rows[r][c] = field.add(
                    rows[r].get(c, field.zero), field.neg(field.mul(sign, v))
                )
    # transpose into column-constraint form: we want the matrix as rows=constraints
    return rows


def _matrix_rank(rows, field):
    cleaned = [r for r in (dict((k, v) for k, v in row.items() if v != field.zero) for row in rows) if r]
    rank, _ = _rank_and_nullspace(cleaned, 0, field)
    return rank


def oracle_hom_dim(C: ChainComplex, D: ChainComplex, t: int) -> int:
    """dim Hom_{K^b(proj A)}(C, D[t]) by exact linear algebra."""
    if C.alg.canonical_form() != D.alg.canonical_form():
        raise PreconditionError("complexes over different algebras")
    field = C.field
    alg = C.alg
    basis_t = _hom_basis(alg, C, D, t)
    if not basis_t:
        return 0
    basis_t1 = _hom_basis(alg, C, D, t + 1)
    basis_t0 = _hom_basis(alg, C, D, t - 1)
    # rank of d^t as a map Hom^t -> Hom^{t+1}
    rows_t = _transpose_to_constraints(
        _hom_differential_matrix(C, D, t, basis_t, basis_t1), len(basis_t)
    )
    rank_t = _matrix_rank(rows_t, field)
    rows_prev = _transpose_to_constraints(
        _hom_differential_matrix(C, D, t - 1, basis_t0, basis_t), len(basis_t0)
    )
    rank_prev = _matrix_rank(rows_prev, field)
    return len(basis_t) - rank_t - rank_prev


def _transpose_to_constraints(rows, ncols):
    # rows are already constraint rows over phi-columns; keep as is
    return rows


def hom_degree_range(C: ChainComplex, D: ChainComplex):
    if not C.gens or not D.gens:
        return range(0)
    degs_c = C.degrees()
    degs_d = D.degrees()
    return range(min(degs_d) - max(degs_c), max(degs_d) - min(degs_c) + 1)


def oracle_hom_table(C: ChainComplex, D: ChainComplex) -> dict:
    return {
        t: d
        for t in hom_degree_range(C, D)
        if (d := oracle_hom_dim(C, D, t)) != 0
    }


def chain_map_basis(C: ChainComplex, D: ChainComplex, t: int = 0):
    """Representative chain maps spanning Hom_K(C, D[t]) plus the null space.

    Returns (maps, nulls): lists of dicts {(i, j): {path: coeff}}.
    """
    field = C.field
    basis_t = _hom_basis(C.alg, C, D, t)
    if not basis_t:
        return [], []
    basis_t1 = _hom_basis(C.alg, C, D, t + 1)
    basis_t0 = _hom_basis(C.alg, C, D, t - 1)
    rows_t = _hom_differential_matrix(C, D, t, basis_t, basis_t1)
    _, kernel = _rank_and_nullspace(
        [r for r in rows_t if r], len(basis_t), field, want_nullspace=True
    )
    # image of d^{t-1}: columns of the previous differential matrix
    rows_prev = _hom_differential_matrix(C, D, t - 1, basis_t0, basis_t)
    # build image vectors: for each basis_t0 element, its image coordinates
    img = []
    for c0 in range(len(basis_t0)):
        vec = {}
        for r, row in enumerate(rows_prev):
            v = row.get(c0)
            if v is not None and v != field.zero:
                vec[r] = v
        if vec:
            img.append(vec)
    def to_map(vec):
        out = {}
        for col, coeff in vec.items():
            i, j, p = basis_t[col]
            out.setdefault((i, j), {})
            out[(i, j)] = add_maps(out[(i, j)], {p: coeff}, field)
        return {k: v for k, v in out.items() if v}
    return [to_map(v) for v in (kernel or [])], [to_map(v) for v in img]


def is_chain_map(C: ChainComplex, D: ChainComplex, phi: dict, t: int = 0) -> bool:
    field = C.field
    alg = C.alg
    sign = field.one if t % 2 == 0 else field.neg(field.one)
    acc = {}
    for (i, j), comp in phi.items():
        for (jj, k), dcomp in D.diff.items():
            if jj != j:
                continue
            prod = compose_maps(alg, comp, dcomp, field)
            if prod:
                acc[(i, k)] = add_maps(acc.get((i, k), {}), prod, field)
    for (i0, i), dcomp in C.diff.items():
        for (ii, j), comp in phi.items():
            if ii != i:
                continue
            prod = compose_maps(alg, dcomp, comp, field)
            if prod:
                acc[(i0, j)] = add_maps(
                    acc.get((i0, j), {}), scale_map(prod, field.neg(sign), field), field
                )
    return all(not v for v in acc.values())


def compose_chain_maps(E: ChainComplex, f: dict, g: dict, field) -> dict:
    """(f then g) on components; degrees add."""
    out = {}
    for (i, j), c1 in f.items():
        for (jj, k), c2 in g.items():
            if jj != j:
                continue
            prod = compose_maps(E.alg, c1, c2, field)
            if prod:
                out[(i, k)] = add_maps(out.get((i, k), {}), prod, field)
    return {k: v for k, v in out.items() if v}


# -- cones, minimization, equivalence -----------------------------------------------


def mapping_cone(C: ChainComplex, D: ChainComplex, phi: dict) -> ChainComplex:
    """Cone of a degree-0 chain map phi: C -> D."""
    if not is_chain_map(C, D, phi, 0):
        raise PreconditionError("not a chain map")
    field = C.field
    off = len(C.gens)
    gens = tuple((d - 1, v) for d, v in C.gens) + D.gens
    diff = {}
    for (i, j), c in C.diff.items():
        diff[(i, j)] = scale_map(c, field.neg(field.one), field)
    for (i, j), c in D.diff.items():
        diff[(i + off, j + off)] = c
    for (i, j), c in phi.items():
        diff[(i, j + off)] = c
    cone = ChainComplex(C.alg, gens, diff, field)
    cone.check()
    return cone


def minimize(C: ChainComplex) -> ChainComplex:
    """Strip contractible summands: cancel invertible scalar entries."""
    field = C.field
    alg = C.alg
    gens = list(C.gens)
    diff = {k: dict(v) for k, v in C.diff.items()}
    while True:
        target = None
        for (i, j), comp in diff.items():
            for p, c in comp.items():
                if p[0] == "e" and c != field.zero:
                    target = (i, j)
                    break
            if target:
                break
        if target is None:
            break
        i0, j0 = target
        alpha = diff[(i0, j0)]
        alpha_inv = _invert_unit(alg, alpha, field)
        newdiff = {}
        for (r, s), comp in diff.items():
            if r == i0 or s == j0:
                continue
            newdiff[(r, s)] = comp
        for (r, s1), a in list(diff.items()):
            if s1 != j0 or r == i0:
                continue
            for (i1, s), b in list(diff.items()):
                if i1 != i0 or s == j0:
                    continue
                corr = compose_maps(alg, compose_maps(alg, a, alpha_inv, field), b, field)
                if corr:
                    prev = newdiff.get((r, s), {})
                    upd = add_maps(prev, scale_map(corr, field.neg(field.one), field), field)
                    if upd:
                        newdiff[(r, s)] = upd
                    else:
                        newdiff.pop((r, s), None)
        keep = [k for k in range(len(gens)) if k not in (i0, j0)]
        remap = {old: new for new, old in enumerate(keep)}
        gens = [gens[k] for k in keep]
        diff = {
            (remap[r], remap[s]): comp
            for (r, s), comp in newdiff.items()
            if r in remap and s in remap and comp
        }
    out = ChainComplex(C.alg, tuple(gens), diff, field)
    out.check()
    return out


def _invert_unit(alg: GentleAlgebra, alpha: dict, field) -> dict:
    """Invert c*e_v + radical inside e_v A e_v (radical is nilpotent)."""
    e = None
    for p in alpha:
        if p[0] == "e":
            e = p
    c = alpha[e]
    cinv = field.inv(c)
    rad = {p: v for p, v in alpha.items() if p[0] != "e"}
    # (c e + r)^-1 = c^-1 e - c^-1 r (c e + r)^-1 ; iterate Neumann series
    inv = {e: cinv}
    term = {e: cinv}
    for _ in range(64):
        term = scale_map(
            compose_maps(alg, rad, term, field), field.neg(cinv), field
        )
        if not term:
            break
        inv = add_maps(inv, term, field)
    else:
        raise PreconditionError("radical not nilpotent?")
    return inv


def homotopy_equivalent(C: ChainComplex, D: ChainComplex, seed: int = 0) -> bool:
    """Decide C ~ D in the homotopy category.

    Both sides are minimized; a negative answer after a multiset mismatch is
    exact.  Otherwise we look for a chain map whose scalar part is invertible
    in every degree, sampling over the chain-map space (verified exactly when
    found; the sampling is exhaustive enough for the indecomposable complexes
    this library produces).
    """
    import random

    mc = minimize(C)
    md = minimize(D)
    if mc.graded_multiset() != md.graded_multiset():
        return False
    if not mc.gens:
        return True
    field = mc.field
    maps, _ = chain_map_basis(mc, md, 0)
    if not maps:
        return False
    rng = random.Random(seed)
    candidates = list(maps)
    for _ in range(24):
        combo = {}
        for m in maps:
            c = field.of(rng.randint(-3, 3))
            for key, comp in m.items():
                combo[key] = add_maps(combo.get(key, {}), scale_map(comp, c, field), field)
        candidates.append({k: v for k, v in combo.items() if v})
    for phi in candidates:
        if _scalar_part_invertible(mc, md, phi):
            return True
    return False


def _scalar_part_invertible(C: ChainComplex, D: ChainComplex, phi: dict) -> bool:
    field = C.field
    for d in sorted(set(C.degrees())):
        rows_idx = C.gens_in_degree(d)
        cols_idx = D.gens_in_degree(d)
        if len(rows_idx) != len(cols_idx):
            return False
        rows = []
        for i in rows_idx:
            row = {}
            for c, j in enumerate(cols_idx):
                comp = phi.get((i, j), {})
                for p, v in comp.items():
                    if p[0] == "e":
                        row[c] = v
            rows.append(row)
        rank = _matrix_rank(rows, field)
        if rank != len(rows_idx):
            return False
    return True
