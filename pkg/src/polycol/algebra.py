"""Graded automorphisms of the polytopal algebra of a lattice polytope.

The algebra is the semigroup ring of the monoid generated by (z, 1) for the
lattice points z, graded so every lattice point sits in degree one.  Graded
automorphisms are represented faithfully by their matrices on the degree-one
monomial basis, in canonical lattice-point order; words in elementary, torus
and symmetry generators are carried along for provenance.

Symbolic verification happens over a polynomial ring on integer
coefficients: a matrix identity there holds over every commutative ring at
once.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .columns import ColumnVector, product_table
from .exactmath import (
    QQ,
    ZZ,
    PolynomialRing,
    det_int,
    dot,
    mat_inverse_frac,
    mat_vec,
    rank_int,
    transpose,
    vec_add,
    vec_scale,
    vec_sub,
)
from .polytopes import InternalCheckError, dilate, is_normalized


# ---------------------------------------------------------------------------
# the graded semigroup


_SP_CACHE = {}


def sp_membership(p, z, degree):
    """Is (z, degree) a sum of `degree` degree-one generators?

    The semigroup can miss integral points of the cone over P, so this is
    a genuine recursion, memoized per polytope, not a cone test.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    z = tuple(z)
    memo = _SP_CACHE.setdefault(p, {})
    pset = p.lattice_set

    def rec(z, d):
        if d == 0:
            return not any(z)
        if d == 1:
            return z in pset
        key = (z, d)
        if key in memo:
            return memo[key]
        # quick cone bound: z must lie in d*P
        if not all(dot(a, z) >= d * b for a, b in p._facet_pairs):
            memo[key] = False
            return False
        result = any(rec(vec_sub(z, x), d - 1) for x in p.lattice_points)
        memo[key] = result
        return result

    return rec(z, degree)


def monomials_of_degree(p, degree):
    """All (z, degree) in the graded semigroup, canonically sorted."""
    if degree == 0:
        return (((0,) * p.ambient_dim, 0),)
    scaled = dilate(p, degree) if degree > 1 else p
    return tuple(
        (z, degree)
        for z in scaled.lattice_points
        if sp_membership(p, z, degree)
    )


def check_column_property(p, col, max_degree=2):
    """Every monomial off the base face cone shifts by the column vector.

    Face-cone membership is height zero; the property is checked for all
    semigroup monomials up to the degree bound.  Returns (flag, violations).
    """
    table = product_table(p)
    if col.vector not in table.index:
        raise ValueError("not a column vector of this polytope")
    col = table.columns[table.index[col.vector]]
    facet = p.facets[col.base]
    violations = []
    for d in range(1, max_degree + 1):
        for z, _ in monomials_of_degree(p, d):
            height = dot(facet.normal, z) - d * facet.offset
            if height == 0:
                continue
            if not sp_membership(p, vec_add(z, col.vector), d):
                violations.append((z, d))
    return (not violations), violations


# ---------------------------------------------------------------------------
# graded automorphisms as degree-one matrices


def _mat_mul_ring(ring, a, b):
    m = len(a)
    cols = list(zip(*b))
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = ring.zero
            for k in range(m):
                acc = acc + a[i][k] * cols[j][k]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _identity_ring(ring, m):
    return tuple(
        tuple(ring.one if i == j else ring.zero for j in range(m))
        for i in range(m)
    )


class GradedAutomorphism:
    """A graded algebra automorphism through its degree-one matrix.

    Columns are the images of the degree-one monomials in canonical
    lattice-point order.  Degree one generates the algebra, so equality of
    matrices is equality of automorphisms.
    """

    def __init__(self, polytope, ring, matrix, word, inverse_word):
        self.polytope = polytope
        self.ring = ring
        self.matrix = matrix
        self.word = tuple(word)
        self.inverse_word = tuple(inverse_word)

    def compose(self, other):
        """self after other."""
        if self.polytope != other.polytope or self.ring is not other.ring:
            raise ValueError("automorphisms live on different algebras")
        return GradedAutomorphism(
            self.polytope,
            self.ring,
            _mat_mul_ring(self.ring, self.matrix, other.matrix),
            self.word + other.word,
            other.inverse_word + self.inverse_word,
        )

    def inverse(self):
        inv = automorphism_from_word(
            self.polytope, self.ring, self.inverse_word
        )
        check = _mat_mul_ring(self.ring, self.matrix, inv.matrix)
        if check != _identity_ring(self.ring, len(self.matrix)):
            raise InternalCheckError("inverse word does not invert the matrix")
        return inv

    def is_identity(self):
        return self.matrix == _identity_ring(self.ring, len(self.matrix))

    def __eq__(self, other):
        if not isinstance(other, GradedAutomorphism):
            return NotImplemented
        return (
            self.polytope == other.polytope
            and self.ring is other.ring
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.polytope, id(self.ring), self.matrix))

    def __repr__(self):
        return f"GradedAutomorphism({self.word})"


def identity_automorphism(p, ring):
    m = len(p.lattice_points)
    return GradedAutomorphism(p, ring, _identity_ring(ring, m), (), ())


def automorphism_from_word(p, ring, word):
    out = identity_automorphism(p, ring)
    for gen in word:
        kind = gen[0]
        if kind == "elementary":
            g = elementary_automorphism(p, gen[1], gen[2], ring)
        elif kind == "torus":
            g = torus_automorphism(p, gen[1], ring)
        elif kind == "symmetry":
            g = _symmetry_from_permutation(p, ring, gen[1])
        else:
            raise ValueError(f"unknown generator {gen!r}")
        out = out.compose(g)
    return out


def elementary_automorphism(p, col, lam, ring):
    """The shear sending x to (1 + lam * v)^(height of x) times x.

    On the degree-one basis the column of x expands binomially through the
    points x + k v, all of which are lattice points because heights over
    the base facet drop by exactly one per step.
    """
    if not is_normalized(p):
        raise ValueError("elementary automorphisms need a normalized polytope")
    table = product_table(p)
    if isinstance(col, ColumnVector):
        key = col.vector
    else:
        key = tuple(col)
    if key not in table.index:
        raise ValueError(f"{key} is not a column vector")
    col = table.columns[table.index[key]]
    facet = p.facets[col.base]
    pts = p.lattice_points
    index = {z: i for i, z in enumerate(pts)}
    m = len(pts)
    matrix = [[ring.zero] * m for _ in range(m)]
    for j, x in enumerate(pts):
        h = dot(facet.normal, x) - facet.offset
        for k in range(h + 1):
            target = vec_add(x, vec_scale(k, col.vector))
            if target not in index:
                raise InternalCheckError(
                    f"{x} + {k}*{col.vector} escaped the polytope"
                )
            coeff = ring.from_int(comb(h, k))
            if k:
                coeff = coeff * _ring_pow(ring, lam, k)
            i = index[target]
            matrix[i][j] = matrix[i][j] + coeff
    word = (("elementary", col.vector, lam),)
    inverse_word = (("elementary", col.vector, _ring_neg(ring, lam)),)
    return GradedAutomorphism(
        p, ring, tuple(tuple(r) for r in matrix), word, inverse_word
    )


def _ring_pow(ring, x, k):
    out = ring.one
    for _ in range(k):
        out = out * x
    return out


def _ring_neg(ring, x):
    return ring.zero - x


def torus_automorphism(p, units, ring):
    """Diagonal action: the monomial at z scales by the unit monomial in z.

    There are ambient_dim + 1 units, the last one acting through the
    grading; negative coordinates use ring inverses.
    """
    n = p.ambient_dim
    units = tuple(units)
    if len(units) != n + 1:
        raise ValueError("need ambient_dim + 1 units")
    for u in units:
        if not ring.is_unit(u):
            raise ValueError(f"{u!r} is not a unit")
    pts = p.lattice_points
    m = len(pts)
    matrix = [[ring.zero] * m for _ in range(m)]
    for j, z in enumerate(pts):
        val = units[n]
        for i, zi in enumerate(z):
            if zi >= 0:
                val = val * _ring_pow(ring, units[i], zi)
            else:
                val = val * _ring_pow(ring, ring.inverse(units[i]), -zi)
        matrix[j][j] = val
    word = (("torus", units),)
    inverse_word = (("torus", tuple(ring.inverse(u) for u in units)),)
    return GradedAutomorphism(
        p, ring, tuple(tuple(r) for r in matrix), word, inverse_word
    )


def _symmetry_from_permutation(p, ring, perm):
    pts = p.lattice_points
    m = len(pts)
    matrix = [[ring.zero] * m for _ in range(m)]
    for j in range(m):
        matrix[perm[j]][j] = ring.one
    inv = [0] * m
    for j, i in enumerate(perm):
        inv[i] = j
    return GradedAutomorphism(
        p,
        ring,
        tuple(tuple(r) for r in matrix),
        (("symmetry", tuple(perm)),),
        (("symmetry", tuple(inv)),),
    )


# ---------------------------------------------------------------------------
# degree consistency and monomial actions


def degree_consistency_violations(auto, max_degree=3):
    """Check the degree-one action extends to a well-defined graded map.

    Monomial multisets of equal coordinate sum must receive equal images up
    to the degree bound.  Passing is necessary for automorphy, not a proof;
    every generator built here is an automorphism on theoretical grounds.
    """
    p = auto.polytope
    pts = p.lattice_points
    violations = []
    for d in range(2, max_degree + 1):
        groups = {}
        for combo in itertools.combinations_with_replacement(range(len(pts)), d):
            total = pts[combo[0]]
            for i in combo[1:]:
                total = vec_add(total, pts[i])
            groups.setdefault(total, []).append(combo)
        for total, combos in groups.items():
            if len(combos) < 2:
                continue
            images = [
                _multiset_image(auto, combo) for combo in combos
            ]
            for other in images[1:]:
                if other != images[0]:
                    violations.append((total, d))
                    break
    return violations


def _multiset_image(auto, combo):
    """Image of a product of degree-one monomials, as a dict point -> coeff."""
    pts = auto.polytope.lattice_points
    ring = auto.ring
    current = {(0,) * auto.polytope.ambient_dim: ring.one}
    for i in combo:
        col = [(pts[r], auto.matrix[r][i]) for r in range(len(pts))
               if not _is_zero(ring, auto.matrix[r][i])]
        nxt = {}
        for z, c in current.items():
            for x, cx in col:
                key = vec_add(z, x)
                acc = nxt.get(key, ring.zero) + c * cx
                nxt[key] = acc
        current = {k: v for k, v in nxt.items() if not _is_zero(ring, v)}
    return current


def _is_zero(ring, x):
    return x == ring.zero


def elementary_closed_formula_image(p, col, lam, ring, z, degree):
    """Binomial image of the degree-`degree` monomial at z, as a dict.

    Independent of the matrix route: used to cross-check that the closed
    formula and the multiplicative degree-one action agree.
    """
    table = product_table(p)
    col = table.columns[table.index[col.vector]]
    facet = p.facets[col.base]
    h = dot(facet.normal, z) - degree * facet.offset
    out = {}
    for k in range(h + 1):
        coeff = ring.from_int(comb(h, k))
        if k:
            coeff = coeff * _ring_pow(ring, lam, k)
        out[vec_add(z, vec_scale(k, col.vector))] = coeff
    return out


# ---------------------------------------------------------------------------
# lattice symmetries


def lattice_symmetries(p):
    """All affine lattice self-maps of P, as AffineLatticeMaps."""
    from .polytopes import AffineLatticeMap

    verts = p.vertices
    n = p.ambient_dim
    if n == 0:
        return [AffineLatticeMap.identity(0)]
    anchor = _spanning_vertex_tuple(p)
    v0 = anchor[0]
    vmat = transpose([vec_sub(v, v0) for v in anchor[1:]])
    vinv = mat_inverse_frac(vmat)
    vert_set = set(verts)
    sigs = _vertex_signatures(p)
    maps = []
    seen = set()
    candidates = [
        [w for w in verts if sigs[w] == sigs[a]] for a in anchor
    ]
    for image in itertools.product(*candidates):
        if len(set(image)) != len(image):
            continue
        w0 = image[0]
        wmat = transpose([vec_sub(w, w0) for w in image[1:]])
        u_frac = tuple(
            tuple(
                sum(Fraction(wmat[i][k]) * vinv[k][j] for k in range(n))
                for j in range(n)
            )
            for i in range(n)
        )
        if any(x.denominator != 1 for row in u_frac for x in row):
            continue
        u = tuple(tuple(int(x) for x in row) for row in u_frac)
        if abs(det_int(u)) != 1:
            continue
        t = vec_sub(w0, mat_vec(u, v0))
        if {vec_add(mat_vec(u, v), t) for v in verts} != vert_set:
            continue
        key = (u, t)
        if key in seen:
            continue
        seen.add(key)
        fwd = AffineLatticeMap(u, t)
        uinv = tuple(tuple(int(x) for x in row) for row in mat_inverse_frac(u))
        fwd.inverse = AffineLatticeMap(uinv, vec_sub(v0, mat_vec(uinv, w0)), fwd)
        maps.append(fwd)
    maps.sort(key=lambda m: m.key())
    return maps


def _spanning_vertex_tuple(p):
    chosen = [p.vertices[0]]
    diffs = []
    for v in p.vertices[1:]:
        cand = diffs + [vec_sub(v, chosen[0])]
        if rank_int(cand) > len(diffs):
            chosen.append(v)
            diffs = cand
        if len(chosen) == p.ambient_dim + 1:
            break
    if len(chosen) < p.ambient_dim + 1:
        raise ValueError("symmetries need a full-dimensional polytope")
    return tuple(chosen)


def _vertex_signatures(p):
    facets = p.facets
    sig = {}
    for v in p.vertices:
        active = sorted(
            len(f.on_facet) for f in facets if dot(f.normal, v) == f.offset
        )
        sig[v] = tuple(active)
    return sig


def symmetry_permutation(p, amap):
    pts = p.lattice_points
    index = {z: i for i, z in enumerate(pts)}
    perm = []
    for z in pts:
        img = amap.apply(z)
        if img not in index:
            raise InternalCheckError("symmetry does not permute lattice points")
        perm.append(index[img])
    return tuple(perm)


def sigma_group(p, ring=ZZ):
    """The symmetry group as permutation-matrix automorphisms."""
    return [
        _symmetry_from_permutation(p, ring, symmetry_permutation(p, m))
        for m in lattice_symmetries(p)
    ]


def _perm_compose(a, b):
    # apply b first, then a
    return tuple(a[b[i]] for i in range(len(a)))


def _perm_inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _closure(perms):
    group = set(perms)
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for h in list(group):
                for candidate in (_perm_compose(g, h), _perm_compose(h, g)):
                    if candidate not in group:
                        group.add(candidate)
                        nxt.append(candidate)
        frontier = nxt
    return group


def column_inversion(p, col):
    """The symmetry flipping columns parallel to a two-sided column vector.

    Each lattice point moves along the column direction to the unique point
    with mirrored heights over the two base facets.
    """
    table = product_table(p)
    key = col.vector if isinstance(col, ColumnVector) else tuple(col)
    if key not in table.index:
        raise ValueError(f"{key} is not a column vector")
    neg = tuple(-x for x in key)
    if neg not in table.index:
        raise ValueError("column inversion needs both v and -v as columns")
    cv = table.columns[table.index[key]]
    cnv = table.columns[table.index[neg]]
    f_plus = p.facets[cv.base]
    f_minus = p.facets[cnv.base]
    pts = p.lattice_points
    index = {z: i for i, z in enumerate(pts)}
    perm = []
    for x in pts:
        t = (dot(f_plus.normal, x) - f_plus.offset) - (
            dot(f_minus.normal, x) - f_minus.offset
        )
        y = vec_add(x, vec_scale(t, key))
        if y not in index:
            raise InternalCheckError("column inversion left the polytope")
        perm.append(index[y])
    perm = tuple(perm)
    sym_perms = {symmetry_permutation(p, m) for m in lattice_symmetries(p)}
    if perm not in sym_perms:
        raise InternalCheckError("column inversion is not a lattice symmetry")
    return perm


def inversion_subgroup(p):
    """Permutations generated by all column inversions."""
    table = product_table(p)
    vecs = {c.vector for c in table.columns}
    gens = [
        column_inversion(p, c)
        for c in table.columns
        if tuple(-x for x in c.vector) in vecs
    ]
    identity = tuple(range(len(p.lattice_points)))
    if not gens:
        return {identity}
    return _closure(gens)


def symmetry_group_data(p):
    """Orders of the symmetry group, the inversion subgroup, and normality."""
    sym = {symmetry_permutation(p, m) for m in lattice_symmetries(p)}
    sym = _closure(sym) if sym else sym
    inv = inversion_subgroup(p)
    normal = all(
        _perm_compose(_perm_compose(g, h), _perm_inverse(g)) in inv
        for g in sym
        for h in inv
    )
    if len(sym) % len(inv) != 0:
        raise InternalCheckError("inversion subgroup order must divide")
    return {
        "symmetry_order": len(sym),
        "inversion_order": len(inv),
        "quotient_order": len(sym) // len(inv),
        "inversions_normal": normal,
    }


# ---------------------------------------------------------------------------
# symbolic verification of the commutator relations


def verify_steinberg_relations(p, var_names=("a", "b")):
    """Additivity and commutator identities over a symbolic polynomial ring.

    For every column u the composite of shears along u adds exponents; for
    every ordered pair with nonzero sum, the commutator is the shear along
    the product when it exists, and trivial when the sum is not a column.
    Pairs whose sum is a column without an existing product are outside
    both covered cases and reported as skipped.
    """
    balanced, _ = is_balanced_cached(p)
    ring = PolynomialRing(var_names)
    lam = ring.var(var_names[0])
    mu = ring.var(var_names[1])
    table = product_table(p)
    cols = table.columns
    report = {"additivity": [], "pairs": [], "all_ok": True, "balanced": balanced}
    for u in cols:
        lhs = elementary_automorphism(p, u, lam, ring).compose(
            elementary_automorphism(p, u, mu, ring)
        )
        rhs = elementary_automorphism(p, u, lam + mu, ring)
        ok = lhs.matrix == rhs.matrix
        report["additivity"].append({"u": u.vector, "ok": ok})
        if not ok:
            report["all_ok"] = False
    vecs = {c.vector for c in cols}
    for i, u in enumerate(cols):
        eu = elementary_automorphism(p, u, lam, ring)
        eu_inv = elementary_automorphism(p, u, -lam, ring)
        for j, v in enumerate(cols):
            s = vec_add(u.vector, v.vector)
            if not any(s):
                continue
            ev = elementary_automorphism(p, v, mu, ring)
            ev_inv = elementary_automorphism(p, v, -mu, ring)
            commutator = eu.compose(ev).compose(eu_inv).compose(ev_inv)
            entry = table.entry(i, j)
            if entry[0] == "product":
                if not balanced:
                    continue
                w = cols[entry[1]]
                expected = elementary_automorphism(p, w, -(lam * mu), ring)
                ok = commutator.matrix == expected.matrix
                report["pairs"].append(
                    {"u": u.vector, "v": v.vector, "case": "product",
                     "result": w.vector, "ok": ok}
                )
                if not ok:
                    report["all_ok"] = False
            elif s not in vecs:
                if not balanced:
                    continue
                ok = commutator.is_identity()
                report["pairs"].append(
                    {"u": u.vector, "v": v.vector, "case": "commute", "ok": ok}
                )
                if not ok:
                    report["all_ok"] = False
            else:
                report["pairs"].append(
                    {"u": u.vector, "v": v.vector, "case": "skipped",
                     "note": "sum is a column but the product does not exist",
                     "commutes": commutator.is_identity(), "ok": None}
                )
    return report


def is_balanced_cached(p):
    from .columns import is_balanced

    return is_balanced(p)


def verify_additive_embedding(p, facet_index, grid=5):
    """Same-base shears commute and assemble into an additive embedding.

    Commutation and the homomorphism identity are symbolic; injectivity is
    certified on a grid of distinct rational tuples whose images must be
    pairwise distinct matrices.
    """
    table = product_table(p)
    cols = [c for c in table.columns if c.base == facet_index]
    s = len(cols)
    report = {"facet": facet_index, "columns": [c.vector for c in cols]}
    if s < 2:
        report["status"] = "vacuous"
        report["all_ok"] = True
        return report
    names = tuple(f"a{i}" for i in range(s)) + tuple(f"b{i}" for i in range(s))
    ring = PolynomialRing(names)
    avars = [ring.var(f"a{i}") for i in range(s)]
    bvars = [ring.var(f"b{i}") for i in range(s)]

    ok_comm = True
    for i, j in itertools.combinations(range(s), 2):
        ei = elementary_automorphism(p, cols[i], avars[i], ring)
        ej = elementary_automorphism(p, cols[j], avars[j], ring)
        if ei.compose(ej).matrix != ej.compose(ei).matrix:
            ok_comm = False
    report["pairwise_commute"] = ok_comm

    def phi(values, rng):
        out = identity_automorphism(p, rng)
        for c, lam in zip(cols, values):
            out = out.compose(elementary_automorphism(p, c, lam, rng))
        return out

    lhs = phi([a + b for a, b in zip(avars, bvars)], ring)
    rhs = phi(avars, ring).compose(phi(bvars, ring))
    report["homomorphism"] = lhs.matrix == rhs.matrix

    points = []
    for i in range(grid):
        for j in range(grid):
            tup = [Fraction(i), Fraction(j)] + [Fraction(0)] * (s - 2)
            points.append(tuple(tup[:s]))
    images = {phi(pt, QQ).matrix for pt in points}
    report["grid_points"] = len(points)
    report["distinct_images"] = len(images)
    report["injective_on_grid"] = len(images) == len(points)
    report["all_ok"] = (
        ok_comm and report["homomorphism"] and report["injective_on_grid"]
    )
    return report


# ---------------------------------------------------------------------------
# presentation export


def steinberg_presentation_lines(p):
    """Generator and relation schema of the column-shear presentation.

    One generator family per column vector; additive relations per family;
    commutator relations instantiated from the product table for the two
    covered cases.  Pairs whose sum is a column without a product are left
    out of the schema.
    """
    from .columns import is_balanced

    balanced, _ = is_balanced(p)
    if not balanced:
        raise ValueError("presentations are exported for balanced polytopes")
    table = product_table(p)
    cols = table.columns
    vecs = {c.vector: i for i, c in enumerate(cols)}
    lines = []
    for i, c in enumerate(cols):
        lines.append(f"GEN v{i} base={c.base}")
    for i in range(len(cols)):
        lines.append(f"REL add v{i}")
    for i, u in enumerate(cols):
        for j, v in enumerate(cols):
            s = vec_add(u.vector, v.vector)
            if not any(s):
                continue
            entry = table.entry(i, j)
            if entry[0] == "product":
                lines.append(f"REL comm v{i} v{j} -> v{entry[1]} sign=-1")
            elif s not in vecs:
                lines.append(f"REL comm v{i} v{j} -> 1")
    return lines


def steinberg_presentation_json(p):
    table = product_table(p)
    cols = table.columns
    vecs = {c.vector: i for i, c in enumerate(cols)}
    generators = [
        {"index": i, "v": list(c.vector), "base": c.base}
        for i, c in enumerate(cols)
    ]
    relations = [{"kind": "add", "i": i} for i in range(len(cols))]
    skipped = []
    for i, u in enumerate(cols):
        for j, v in enumerate(cols):
            s = vec_add(u.vector, v.vector)
            if not any(s):
                continue
            entry = table.entry(i, j)
            if entry[0] == "product":
                relations.append(
                    {"kind": "comm", "i": i, "j": j, "result": entry[1],
                     "sign": -1}
                )
            elif s not in vecs:
                relations.append(
                    {"kind": "comm", "i": i, "j": j, "result": None}
                )
            else:
                skipped.append({"i": i, "j": j})
    return {
        "generators": generators,
        "relations": relations,
        "skipped_pairs": skipped,
    }


def steinberg_presentation_mod(p, modulus):
    """Fully finite presentation instantiated over the integers mod m."""
    from .columns import is_balanced

    balanced, _ = is_balanced(p)
    if not balanced:
        raise ValueError("presentations are exported for balanced polytopes")
    table = product_table(p)
    cols = table.columns
    vecs = {c.vector: i for i, c in enumerate(cols)}
    lines = [f"MOD {modulus}"]
    for i, c in enumerate(cols):
        for a in range(1, modulus):
            lines.append(f"GEN v{i}^{a}")
    for i in range(len(cols)):
        for a in range(1, modulus):
            for b in range(1, modulus):
                c = (a + b) % modulus
                rhs = f"v{i}^{c}" if c else "1"
                lines.append(f"REL mul v{i}^{a} v{i}^{b} = {rhs}")
    for i, u in enumerate(cols):
        for j, v in enumerate(cols):
            s = vec_add(u.vector, v.vector)
            if not any(s):
                continue
            entry = table.entry(i, j)
            if entry[0] == "product":
                k = entry[1]
                for a in range(1, modulus):
                    for b in range(1, modulus):
                        c = (-a * b) % modulus
                        rhs = f"v{k}^{c}" if c else "1"
                        lines.append(f"REL comm v{i}^{a} v{j}^{b} = {rhs}")
            elif s not in vecs:
                for a in range(1, modulus):
                    for b in range(1, modulus):
                        lines.append(f"REL comm v{i}^{a} v{j}^{b} = 1")
    return lines
