"""Constructive normal forms over local rings.

Two reductions, both certified by their defining postconditions:

* ``complete_unimodular_local``: any unimodular row over a local ring
  is e_1 times an explicit elementary word (relative variant tracks an
  ideal and emits conjugation triples).
* ``reduce_alternating_local``: any alternating matrix of Pfaffian 1
  over a local ring is congruent to the standard form by a matrix
  1 perp eval(eps) with eps an explicit elementary word on the trailing
  indices.  ``reduce_alternating_semilocal`` runs the reduction on each
  local factor of Z/m via CRT projection.
"""

from .matrices import SquareMatrix, is_alternating, pfaffian, standard_form
from .rings import (GF, Ideal, RingError, Zmod, ideal_contains,
                    localize_at_prime, prime_factors)
from .words import GeneratorAtom, GeneratorWord, lin


def _is_odd_prime_power(m):
    if m % 2 == 0 or m < 3:
        return False
    ps = prime_factors(m)
    return len(ps) == 1


class LocalRingWitness:
    """A ring certified local: GF(p) or Z/p^k with p an odd prime."""

    def __init__(self, ring):
        if not isinstance(ring, Zmod) or not _is_odd_prime_power(ring.m):
            raise RingError("%s is not GF(p) or Z/p^k with p odd" % (ring,))
        p = prime_factors(ring.m)[0]
        self.ring = ring
        self.maximal_ideal = Ideal.principal(ring, p) if ring.m > p \
            else Ideal.zero(ring)
        self.prime = p

    def is_unit(self, x):
        return self.ring.is_unit(self.ring.element(x))

    def invert(self, x):
        return self.ring.invert(self.ring.element(x))

    def __repr__(self):
        return "LocalRingWitness(%s)" % (self.ring,)


def _apply_right(w, i, j, lam):
    """Right-multiply the row w by E_ij(lam): w_j += lam * w_i."""
    w = list(w)
    w[j - 1] = w[j - 1] + lam * w[i - 1]
    return w


def _word_from_ops(ring, n, ops, tag="plain"):
    """w * ops == e_1  =>  w == e_1 * eval(beta) with beta = ops^{-1}."""
    atoms = [lin(a.i, a.j, -a.arg) for a in reversed(ops)]
    return GeneratorWord(ring, n, atoms, tag=tag)


def _triple(i, j, a, x):
    """Atoms of E_ij(a) E_ji(x) E_ij(-a)."""
    return [lin(i, j, a), lin(j, i, x), lin(i, j, -a)]


def complete_unimodular_local(v, L, I=None):
    """Elementary word beta with v = e_1 * eval(beta) over a local ring.

    ``v`` is a unimodular row; with a proper ideal ``I`` (requires
    v congruent to e_1 mod I) the word is built from conjugation
    triples and carries the "relative" tag.  Pivots are chosen at the
    lowest unit index, so the output is deterministic.
    """
    ring = L.ring
    n = len(v)
    w = [ring.element(x) for x in v]
    if not any(L.is_unit(x) for x in w):
        raise RingError("row is not unimodular over %s" % (ring,))
    relative = I is not None and not I.is_full()
    e1 = [ring.one()] + [ring.zero()] * (n - 1)

    if w == e1:
        return GeneratorWord(ring, n, [], tag="relative" if relative else "plain")
    if n == 1:
        raise RingError("no elementary 1x1 word maps e_1 to %r" % (w[0],))

    ops = []

    def push(i, j, lam):
        nonlocal w
        if not lam.is_zero() or relative:
            ops.append(lin(i, j, lam))
            w = _apply_right(w, i, j, lam)

    if relative:
        if not ideal_contains(I, w[0] - ring.one()) or \
                any(not ideal_contains(I, x) for x in w[1:]):
            raise RingError("row is not congruent to e_1 mod %s" % (I,))
        # w_1 = 1 + i0 is a unit (I is proper in a local ring).
        inv1 = L.invert(w[0])
        triples = []
        for j in range(2, n + 1):
            if not w[j - 1].is_zero():
                triples.append(_triple(j, 1, ring.zero(), -w[j - 1] * inv1))
        u = w[0]
        if u != ring.one():
            # (u, 0) -> (1, u - 1) under E_12(1) E_21(u^{-1} - 1) E_12(-1).
            triples.append(_triple(1, 2, ring.one(), L.invert(u) - ring.one()))
            triples.append(_triple(2, 1, ring.zero(), ring.one() - u))
        for t in triples:
            for a in t:
                push(a.i, a.j, a.arg)
        beta = _word_from_ops(ring, n, ops, tag="relative")
        beta.validate_tag(I)
    else:
        pivot = min(k for k in range(1, n + 1) if L.is_unit(w[k - 1]))
        if pivot == 1 and w[0] != ring.one():
            # Plant a pivot 1 at index 2, then pull it into index 1.
            push(1, 2, L.invert(w[0]) * (ring.one() - w[1]))
            pivot = 2
        if pivot > 1:
            push(pivot, 1, L.invert(w[pivot - 1]) * (ring.one() - w[0]))
        for j in range(2, n + 1):
            if not w[j - 1].is_zero():
                push(1, j, -w[j - 1])
        beta = _word_from_ops(ring, n, ops)
        if len(beta) > 2 * n:
            raise RingError("pivot schedule exceeded the 2n atom bound")

    if w != e1:
        raise RingError("completion schedule failed to reach e_1")
    check = [ring.element(x) for x in beta.eval().row(0)]
    if check != [ring.element(x) for x in v]:
        raise RingError("postcondition v = e_1 beta failed")
    return beta


def _solve_local(L, a_rows, rhs):
    """Solve A y = rhs over a local ring by elimination on unit pivots."""
    ring = L.ring
    m = len(rhs)
    rows = [[ring.element(x) for x in r] + [ring.element(rhs[k])]
            for k, r in enumerate(a_rows)]
    perm = []
    for col in range(m):
        pivot = next((r for r in range(m) if r not in perm
                      and L.is_unit(rows[r][col])), None)
        if pivot is None:
            raise RingError("matrix is singular over %s" % (ring,))
        perm.append(pivot)
        inv = L.invert(rows[pivot][col])
        rows[pivot] = [x * inv for x in rows[pivot]]
        for r in range(m):
            if r != pivot and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * p for x, p in zip(rows[r], rows[pivot])]
    y = [ring.zero()] * m
    for col in range(m):
        y[col] = rows[perm[col]][m]
    return y


def _shift_atoms(atoms, k):
    return [GeneratorAtom(a.family, a.i + k, a.j + k, a.arg) for a in atoms]


def reduce_alternating_local(phi, L, I=None):
    """Word eps with (1 perp eval(eps))^t psi_n (1 perp eval(eps)) = phi.

    ``phi`` is an alternating matrix of Pfaffian 1 over the local ring;
    eps has size 2n-1 (embedded on indices 2..2n).  Induction on n:
    normalize row 1 to the e_2 pattern with a unimodular completion of
    its tail, clear row 2 against the trailing block, split off a
    2x2 standard block and recurse.  Relative variant (proper I,
    phi congruent to psi_n mod I) emits a relative-tagged word.
    """
    ring = L.ring
    m = phi.n
    if m % 2 or m < 2:
        raise RingError("alternating reduction needs even size >= 2")
    if not is_alternating(phi):
        raise RingError("phi is not alternating")
    if pfaffian(phi) != ring.one():
        raise RingError("phi must have Pfaffian 1")
    relative = I is not None and not I.is_full()
    psi = standard_form(ring, m // 2)
    if relative:
        for r in range(m):
            for c in range(m):
                if not ideal_contains(I, phi[r, c] - psi[r, c]):
                    raise RingError("phi is not congruent to psi_n mod %s" % (I,))

    atoms = _reduce_atoms(phi, L, I if relative else None)
    # Element-wise reversal inverts the word and keeps triples triples.
    eps = GeneratorWord(ring, m - 1,
                        [a.inverse() for a in reversed(atoms)],
                        tag="relative" if relative else "plain")
    if relative:
        eps.validate_tag(I)
    big = _embed_one_perp(eps.eval())
    if big.transpose() * psi * big != phi:
        raise RingError("postcondition congruence failed")
    return eps


def _embed_one_perp(mat):
    out = SquareMatrix.identity(mat.ring, mat.n + 1)
    for r in range(mat.n):
        for c in range(mat.n):
            out = out.with_entry(r + 1, c + 1, mat[r, c])
    return out


def _reduce_atoms(phi, L, I):
    """Atoms of a size-(m-1) word W with (1 perp eval(W))^t phi (1 perp
    eval(W)) = psi; the caller inverts it into eps."""
    ring = L.ring
    m = phi.n
    if m == 2:
        return []
    relative = I is not None

    # Step 1: row 1 tail to (1, 0, ..., 0) by a unimodular completion.
    tail = [phi[0, c] for c in range(1, m)]
    beta = complete_unimodular_local(tail, L, I)
    step1 = list(beta.inverse().atoms)
    big = _embed_one_perp(beta.inverse().eval())
    phi1 = big.transpose() * phi * big

    # Step 2: clear row 2 columns >= 3 against the trailing block.
    a_rows = [[phi1[r, c] for c in range(2, m)] for r in range(2, m)]
    rhs = [-phi1[r, 1] for r in range(2, m)]
    y = _solve_local(L, a_rows, rhs)
    step2 = []
    for c, yc in enumerate(y, start=3):
        if yc.is_zero() and not relative:
            continue
        if relative and not ideal_contains(I, yc):
            raise RingError("clearing coefficient %r escaped %s" % (yc, I))
        if relative:
            step2.extend(_triple(1, c - 1, ring.zero(), yc))
        else:
            step2.append(lin(c - 1, 1, yc))
    big2 = _embed_one_perp(
        GeneratorWord(ring, m - 1, step2).eval())
    phi2 = big2.transpose() * phi1 * big2

    # Step 3: split off the leading psi_1 block and recurse.
    block = SquareMatrix(ring, [[phi2[r, c] for c in range(2, m)]
                                for r in range(2, m)])
    step3 = _shift_atoms(_reduce_atoms(block, L, I), 2)
    return step1 + step2 + step3


def reduce_alternating_semilocal(phi, I=None):
    """Per-prime reduction table for phi over Z/m (m odd, square-free in
    primes but arbitrary powers): CRT projection to each local factor
    Z/p^k, local reduction there, certificates included."""
    ring = phi.ring
    if not isinstance(ring, Zmod) or ring.m % 2 == 0:
        raise RingError("semilocal reduction needs Z/m with m odd")
    table = {}
    for p in prime_factors(ring.m):
        local, project = localize_at_prime(ring, p)
        witness = LocalRingWitness(local)
        phi_p = SquareMatrix(local, [[project(e) for e in row]
                                     for row in phi.rows])
        I_p = _project_ideal(I, local, project)
        eps = reduce_alternating_local(phi_p, witness, I_p)
        table[p] = {"ring": local, "witness": witness,
                    "epsilon": eps, "verified": True}
    return table


def _project_ideal(I, local, project):
    if I is None or I.is_full():
        return None
    if I.shape == "zero":
        return Ideal.zero(local)
    if I.shape == "principal":
        return Ideal.principal(local, project(I.data))
    raise RingError("cannot project ideal %r" % (I,))
