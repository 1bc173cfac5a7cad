"""Brute-force verification over finite rings Z/m.

Enumerates unimodular rows, computes orbit partitions under the
elementary linear / elementary symplectic groups and their relative
(ideal-congruence) subgroups, enumerates subgroup closures, and runs
the statistical kernel-membership and square-ideal inclusion checks.

Rows and matrices are carried as numpy integer arrays reduced mod m;
orbit labels are canonical (lexicographically least row per orbit), so
partitions are independent of generator order and worker chunking.
"""

import math
import random
from itertools import product

import numpy as np

from .matrices import SquareMatrix, sigma
from .rewrite import conjugate_square_ideal
from .rings import Ideal, RingError, Zmod, sample_element
from .words import GeneratorWord, lin, se

FAMILIES = ("linear-E", "symplectic-ESp", "linear-E-relative",
            "symplectic-ESp-relative", "first-rowcol-E1",
            "first-rowcol-ESp1")


class GroupSpec:
    """A named generator family over a finite Z/m ring."""

    def __init__(self, family, size, ring, ideal=None):
        if family not in FAMILIES:
            raise RingError("unknown family %r" % (family,))
        if not isinstance(ring, Zmod):
            raise RingError("orbit engine requires a finite Z/m ring")
        if "symplectic" in family or "ESp1" in family:
            if size % 2:
                raise RingError("symplectic size must be even")
        if ("relative" in family or "first-rowcol" in family) and ideal is None:
            raise RingError("family %r needs an ideal" % (family,))
        self.family = family
        self.size = size
        self.ring = ring
        self.ideal = ideal

    def __repr__(self):
        return "GroupSpec(%s, n=%d, %s, %s)" % (
            self.family, self.size, self.ring, self.ideal)


def _np_matrix(mat):
    return np.array([[e.value for e in row] for row in mat.rows], dtype=np.int64)


def _np_word(word):
    return _np_matrix(word.eval())


def _mat_key(a):
    return a.tobytes()


def _inverse_mod(mat, m, order_cap=10 ** 5):
    """Inverse by cycling powers (finite ring, invertible matrix)."""
    eye = np.eye(mat.shape[0], dtype=np.int64)
    prev = eye
    cur = mat.copy()
    for _ in range(order_cap):
        if (cur == eye).all():
            return prev % m
        prev = cur
        cur = (cur @ mat) % m
    raise RingError("matrix order exceeded cap; not invertible?")


def _ideal_gen(ring, ideal):
    """The additive generator of a Z/m ideal (g with I = gZ/m)."""
    if ideal is None or ideal.is_full():
        return 1
    gens = ideal.additive_generators()
    if not gens:
        return 0
    return gens[0].value


def enumerate_unimodular(ring, n, ideal=None, budget=10 ** 7):
    """All rows of Um_n(Z/m); with a proper ideal, only rows = e_1 mod I.

    A row is unimodular over Z/m iff gcd of its entries with m is 1.
    """
    if not isinstance(ring, Zmod):
        raise RingError("enumeration requires a finite Z/m ring")
    m = ring.m
    g = _ideal_gen(ring, ideal)
    if g == 0:
        return [tuple([1] + [0] * (n - 1))]
    per_coord = m if g == 1 else m // g
    if per_coord ** n > budget:
        raise RingError("universe size %d exceeds budget %d"
                        % (per_coord ** n, budget))
    coords = range(m) if g == 1 else range(0, m, g)
    rows = []
    relative = ideal is not None and not ideal.is_full()
    for tail in product(coords, repeat=n - 1):
        for lead in coords:
            first = (1 + lead) % m if relative else lead
            row = (first,) + tail
            acc = m
            for x in row:
                acc = math.gcd(acc, x)
            if acc == 1:
                rows.append(row)
    rows.sort()
    return rows


def _symplectic_pairs(size):
    return [(i, j) for i in range(1, size + 1)
            for j in range(1, size + 1) if i != j]


def _linear_pairs(size):
    return [(i, j) for i in range(1, size + 1)
            for j in range(1, size + 1) if i != j]


def generators_for(spec):
    """Generator matrices for the family, additively reduced.

    Plain families use one atom per index pair and additive generator
    (atom args add in the same slot, so orbits are unaffected);
    relative families use all conjugation triples ge_ij(a) ge_ji(x)
    ge_ij(-a) with a over the whole ring and x over the ideal's
    additive generators; first-row/column families mix free first-row
    atoms with ideal-restricted first-column atoms.
    """
    ring, size, ideal = spec.ring, spec.size, spec.ideal
    atom = {"lin": lin, "se": se}["se" if "ESp" in spec.family else "lin"]
    pairs = (_symplectic_pairs(size) if "ESp" in spec.family
             else _linear_pairs(size))
    out = []
    seen = set()

    def emit(word):
        mat = _np_word(word)
        key = _mat_key(mat)
        if key not in seen and not (mat == np.eye(size, dtype=np.int64)).all():
            seen.add(key)
            out.append(mat)

    if spec.family in ("linear-E", "symplectic-ESp"):
        for i, j in pairs:
            emit(GeneratorWord(ring, size, [atom(i, j, ring.one())]))
    elif spec.family in ("linear-E-relative", "symplectic-ESp-relative"):
        if ideal.is_full():
            for i, j in pairs:
                emit(GeneratorWord(ring, size, [atom(i, j, ring.one())]))
        else:
            g = _ideal_gen(ring, ideal)
            if g:
                x = ring.element(g)
                for i, j in pairs:
                    for a in range(ring.m):
                        av = ring.element(a)
                        emit(GeneratorWord(ring, size, [
                            atom(i, j, av), atom(j, i, x), atom(i, j, -av)]))
    else:  # first-rowcol families
        g = _ideal_gen(ring, ideal)
        for j in range(2, size + 1):
            emit(GeneratorWord(ring, size, [atom(1, j, ring.one())]))
            if g:
                emit(GeneratorWord(ring, size, [atom(j, 1, ring.element(g))]))
    return out


class OrbitPartition:
    """Partition of a row universe under right multiplication.

    ``label_of[row]`` is the lexicographically least row of its orbit,
    so two partitions agree iff the dicts are equal.
    """

    def __init__(self, universe, label_of, stats):
        self.universe = universe
        self.label_of = label_of
        self.stats = stats

    def orbit_count(self):
        return len(set(self.label_of.values()))

    def orbit_sizes(self):
        sizes = {}
        for lab in self.label_of.values():
            sizes[lab] = sizes.get(lab, 0) + 1
        return sorted(sizes.values(), reverse=True)

    def same_partition(self, other):
        return self.label_of == other.label_of

    def spot_check_closed(self, generators, m, trials=1000, seed=0):
        """Random (row, generator) pairs never escape their orbit."""
        rng = random.Random(seed)
        rows = self.universe
        if not rows or not generators:
            return True
        for _ in range(trials):
            row = rows[rng.randrange(len(rows))]
            g = generators[rng.randrange(len(generators))]
            img = tuple((np.array(row, dtype=np.int64) @ g) % m)
            if self.label_of[row] != self.label_of[img]:
                return False
        return True


def orbit_partition(universe, generators, ring=None, chunk=4096):
    """BFS closure of each row under the generators and their inverses.

    ``generators`` are numpy matrices (or SquareMatrix) over Z/m; m is
    read from ``ring`` or inferred as a required argument.  The chunk
    size only affects scheduling, never the resulting partition.
    """
    if ring is None:
        raise RingError("orbit_partition needs the ring for the modulus")
    m = ring.m
    gens = []
    for g in generators:
        a = _np_matrix(g) if isinstance(g, SquareMatrix) else np.asarray(g)
        a = a % m
        gens.append(a)
        inv = _inverse_mod(a, m)
        if not (inv == a).all():
            gens.append(inv)
    index = {row: k for k, row in enumerate(universe)}
    label = [-1] * len(universe)
    mults = 0
    frontier_sizes = []
    for start in range(len(universe)):
        if label[start] != -1:
            continue
        members = [start]
        label[start] = start
        frontier = [start]
        while frontier:
            frontier_sizes.append(len(frontier))
            nxt = []
            for lo in range(0, len(frontier), chunk):
                block = np.array([universe[k] for k in frontier[lo:lo + chunk]],
                                 dtype=np.int64)
                for g in gens:
                    imgs = (block @ g) % m
                    mults += block.shape[0]
                    for img in imgs:
                        key = tuple(int(x) for x in img)
                        k = index.get(key)
                        if k is None:
                            raise RingError("generator left the universe at %r"
                                            % (key,))
                        if label[k] == -1:
                            label[k] = start
                            members.append(k)
                            nxt.append(k)
            frontier = nxt
        rep = min(universe[k] for k in members)
        for k in members:
            label[k] = rep
    label_of = {row: label[k] for row, k in index.items()}
    stats = {"multiplications": mults, "frontier_sizes": frontier_sizes,
             "generators": len(gens)}
    return OrbitPartition(universe, label_of, stats)


def _partition_for(ring, size, family, ideal, budget, chunk=4096):
    universe = enumerate_unimodular(ring, size, ideal, budget)
    spec = GroupSpec(family, size, ring, ideal)
    gens = generators_for(spec)
    part = orbit_partition(universe, gens, ring=ring, chunk=chunk)
    return universe, gens, part


def check_orbit_equality(ring, size, ideal=None, budget=10 ** 7, chunk=4096):
    """Compare Um(R, I) partitions under relative E and relative ESp."""
    if size < 4 or size % 2:
        raise RingError("orbit equality needs even size >= 4")
    if ideal is None:
        ideal = Ideal.full(ring)
    lin_fam = "linear-E" if ideal.is_full() else "linear-E-relative"
    sp_fam = "symplectic-ESp" if ideal.is_full() else "symplectic-ESp-relative"
    universe, lgens, lpart = _partition_for(ring, size, lin_fam, ideal,
                                            budget, chunk)
    _, sgens, spart = _partition_for(ring, size, sp_fam, ideal, budget, chunk)
    closed = (lpart.spot_check_closed(lgens, ring.m)
              and spart.spot_check_closed(sgens, ring.m))
    return {
        "ring": ring.descriptor(),
        "size": size,
        "ideal": ideal.descriptor(),
        "universe_size": len(universe),
        "linear_orbits": lpart.orbit_count(),
        "symplectic_orbits": spart.orbit_count(),
        "orbit_sizes": lpart.orbit_sizes(),
        "closed": closed,
        "equal": lpart.same_partition(spart),
    }


def check_dim0_transitivity(ring, size, ideal=None, budget=10 ** 7,
                            full_universe=False, chunk=4096):
    """Orbits under relative E(I) coincide with mod-I congruence classes.

    Over a finite (dimension zero) ring, two unimodular rows congruent
    mod I should lie in one relative orbit.  By default the universe is
    Um(R, I) (a single congruence class, so transitivity = one orbit);
    with ``full_universe`` the partition of all of Um(R) is compared
    against the mod-I congruence key.
    """
    if ideal is None:
        ideal = Ideal.full(ring)
    relative = not ideal.is_full()
    family = "linear-E-relative" if relative else "linear-E"
    uni_ideal = ideal if (relative and not full_universe) else None
    universe = enumerate_unimodular(ring, size, uni_ideal, budget)
    gens = generators_for(GroupSpec(family, size, ring,
                                    ideal if relative else None))
    part = orbit_partition(universe, gens, ring=ring, chunk=chunk)
    g = _ideal_gen(ring, ideal)
    classes = {tuple(x % g for x in row) if g > 1 else 0
               for row in universe}
    return {
        "ring": ring.descriptor(),
        "size": size,
        "ideal": ideal.descriptor(),
        "universe_size": len(universe),
        "orbit_count": part.orbit_count(),
        "congruence_classes": len(classes),
        "transitive": part.orbit_count() == len(classes),
    }


def subgroup_closure(generators, ring, conjugators=None, cap=10 ** 6):
    """BFS closure under multiplication (and conjugation, if given).

    Returns (elements dict key->numpy matrix).  With ``conjugators``
    the rounds interleave multiplication closure and conjugation by
    each conjugator until a fixed point: the normal closure inside the
    group the conjugators generate.
    """
    m = ring.m
    gens = [(_np_matrix(g) if isinstance(g, SquareMatrix) else np.asarray(g)) % m
            for g in generators]
    conj = []
    for c in (conjugators or []):
        a = (_np_matrix(c) if isinstance(c, SquareMatrix) else np.asarray(c)) % m
        conj.append((a, _inverse_mod(a, m)))
    n = gens[0].shape[0] if gens else (conj[0][0].shape[0] if conj else 1)
    eye = np.eye(n, dtype=np.int64)
    elements = {_mat_key(eye): eye}
    frontier = [eye]
    for g in gens:
        key = _mat_key(g)
        if key not in elements:
            elements[key] = g
            frontier.append(g)

    def absorb(batch, sink):
        for y in batch:
            key = _mat_key(y)
            if key not in elements:
                if len(elements) >= cap:
                    raise RingError("closure cap %d exceeded (partial size %d)"
                                    % (cap, len(elements)))
                elements[key] = y
                sink.append(y)

    while frontier:
        block = np.stack(frontier)
        nxt = []
        for g in gens:
            absorb((block @ g) % m, nxt)
        for c, cinv in conj:
            absorb((c @ block @ cinv) % m, nxt)
        frontier = nxt
    return elements


def _mod_ideal_rep(value, m, g):
    """Representative of value mod the ideal (g): reduce mod gcd(g, m)."""
    return value % g if g > 1 else 0


def _random_first_rowcol_word(ring, size, ideal, rng, length=6):
    """A random word of first-row atoms (free args) and first-column
    atoms (args in I), composed with its mod-I mirror so that the
    evaluation is the identity modulo I by construction."""
    g = _ideal_gen(ring, ideal)
    m = ring.m
    atoms = []
    for _ in range(length):
        j = rng.randrange(2, size + 1)
        if rng.randrange(2) and g:
            atoms.append(se(j, 1, ring.element(g * rng.randrange(m))))
        else:
            atoms.append(se(1, j, ring.element(rng.randrange(m))))
    mirror = []
    for a in reversed(atoms):
        rep = _mod_ideal_rep(a.arg.value, m, g if g > 1 else m)
        mirror.append(se(a.i, a.j, ring.element(-rep)))
    return GeneratorWord(ring, size, atoms + mirror)


def kernel_membership_test(ring, size, ideal, samples=1000, seed=0,
                           cap=10 ** 6):
    """Sampled check that first-row/column words trivial mod I land in
    the relative elementary symplectic group.

    Enumerates ESp(R, I) as the normal closure of the relative triples
    under conjugation by the absolute ESp generators, then samples
    first-rowcol words whose evaluation is = identity mod I (by
    construction) and counts membership.
    """
    rel = generators_for(GroupSpec("symplectic-ESp-relative", size, ring, ideal))
    conj = generators_for(GroupSpec("symplectic-ESp", size, ring))
    if ideal.is_full():
        closure = subgroup_closure(conj, ring, cap=cap)
    else:
        closure = subgroup_closure(rel, ring, conjugators=conj, cap=cap)
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        word = _random_first_rowcol_word(ring, size, ideal, rng)
        mat = _np_word(word)
        if _mat_key(mat) in closure:
            hits += 1
    return {
        "ring": ring.descriptor(),
        "size": size,
        "ideal": ideal.descriptor(),
        "closure_size": len(closure),
        "samples": samples,
        "members": hits,
        "ok": hits == samples,
    }


def square_ideal_inclusion_test(ring, size, ideal, samples=200, seed=0,
                                cap=10 ** 6):
    """Sampled check of ESp(R, I^2) c ESp(I): conjugates of se_ij(ab)
    with a, b in I land in the closure of the I-argument atoms, and the
    explicit factorization agrees."""
    g = _ideal_gen(ring, ideal)
    spec_pairs = _symplectic_pairs(size)
    gens = []
    for i, j in spec_pairs:
        gens.append(GeneratorWord(ring, size, [se(i, j, ring.element(g))]).eval())
    closure = subgroup_closure(gens, ring, cap=cap)
    rng = random.Random(seed)
    m = ring.m
    hits = 0
    factor_hits = 0
    factored = 0
    for _ in range(samples):
        i, j = spec_pairs[rng.randrange(len(spec_pairs))]
        k, l = spec_pairs[rng.randrange(len(spec_pairs))]
        z = ring.element(rng.randrange(m))
        a = ring.element(g * rng.randrange(m))
        b = ring.element(g * rng.randrange(m))
        alpha = GeneratorWord(ring, size, [se(k, l, z)])
        beta = GeneratorWord(ring, size, [se(i, j, a * b)])
        word = alpha * beta * alpha.inverse()
        if _mat_key(_np_word(word)) in closure:
            hits += 1
        # The explicit factorization covers every pair except a long
        # target opposite its conjugator (no split of this shape).
        if not (i == sigma(j) and (k, l) == (j, i)):
            res = conjugate_square_ideal(ring, size, i, j, z, a, b, ideal,
                                         kl=(k, l))
            factored += 1
            if res.certificate and _mat_key(_np_word(res.rhs)) in closure:
                factor_hits += 1
    return {
        "ring": ring.descriptor(),
        "size": size,
        "ideal": ideal.descriptor(),
        "closure_size": len(closure),
        "samples": samples,
        "members": hits,
        "factored": factored,
        "factored_members": factor_hits,
        "ok": hits == samples and factor_hits == factored,
    }
