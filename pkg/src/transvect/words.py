"""Generator atoms and words: elementary matrices, relative generators,
rho/mu transvection matrices and their generator decompositions, and
Bass symplectic transvections for free modules.
"""

from __future__ import annotations

import json

from .matrices import SquareMatrix, sigma, standard_form
from .rings import RingError, ideal_contains


LINEAR = "linear"
SYMPLECTIC = "symplectic"


class GeneratorAtom:
    """One elementary generator ge_ij(arg) of either family."""

    __slots__ = ("family", "i", "j", "arg")

    def __init__(self, family, i, j, arg):
        if family not in (LINEAR, SYMPLECTIC):
            raise RingError("unknown family %r" % (family,))
        if i == j or i < 1 or j < 1:
            raise RingError("bad indices (%d, %d)" % (i, j))
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "arg", arg)

    def __setattr__(self, *a):
        raise AttributeError("GeneratorAtom is immutable")

    def inverse(self):
        return GeneratorAtom(self.family, self.i, self.j, -self.arg)

    def transpose(self):
        """Formal transpose: ge_ij(z)^t = ge_ji(z) in both families."""
        return GeneratorAtom(self.family, self.j, self.i, self.arg)

    def matrix(self, ring, size):
        if max(self.i, self.j) > size:
            raise RingError("atom indices exceed size %d" % size)
        z = ring.element(self.arg)
        mat = SquareMatrix.identity(ring, size).with_entry(self.i - 1, self.j - 1, z)
        if self.family == LINEAR:
            return mat
        if size % 2 == 1:
            raise RingError("symplectic atoms need even size")
        if self.i != sigma(self.j):
            s = -z if (self.i + self.j) % 2 == 0 else z
            mat = mat.with_entry(sigma(self.j) - 1, sigma(self.i) - 1, s)
        return mat

    def __eq__(self, other):
        return (isinstance(other, GeneratorAtom) and self.family == other.family
                and (self.i, self.j) == (other.i, other.j) and self.arg == other.arg)

    def __repr__(self):
        fam = "E" if self.family == LINEAR else "se"
        return "%s_%d,%d(%r)" % (fam, self.i, self.j, self.arg)


def lin(i, j, arg):
    return GeneratorAtom(LINEAR, i, j, arg)


def se(i, j, arg):
    return GeneratorAtom(SYMPLECTIC, i, j, arg)


class GeneratorWord:
    """Ordered list of atoms over a fixed ring and matrix size.

    ``tag`` is an optional class marker: "plain", "relative", or
    "first-rowcol"; tag invariants are checked by ``validate_tag``.
    """

    __slots__ = ("ring", "size", "atoms", "tag")

    def __init__(self, ring, size, atoms, tag="plain"):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, *a):
        raise AttributeError("GeneratorWord is immutable")

    def eval(self):
        out = SquareMatrix.identity(self.ring, self.size)
        for atom in self.atoms:
            out = out * atom.matrix(self.ring, self.size)
        return out

    def inverse(self):
        return GeneratorWord(self.ring, self.size,
                             [a.inverse() for a in reversed(self.atoms)], self.tag)

    def __mul__(self, other):
        if other.ring != self.ring or other.size != self.size:
            raise RingError("word mismatch")
        return GeneratorWord(self.ring, self.size, self.atoms + other.atoms)

    def __len__(self):
        return len(self.atoms)

    def validate_tag(self, ideal=None):
        """Check the tag's structural invariant; returns True or raises."""
        if self.tag == "plain":
            return True
        if self.tag == "relative":
            atoms = self.atoms
            if len(atoms) % 3:
                raise RingError("relative word length not a multiple of 3")
            for k in range(0, len(atoms), 3):
                g1, g2, g3 = atoms[k:k + 3]
                if not ((g1.i, g1.j) == (g3.i, g3.j) == (g2.j, g2.i)
                        and g1.arg == -g3.arg and g1.family == g2.family == g3.family):
                    raise RingError("atom block %d is not a conjugation triple" % (k // 3,))
                if ideal is not None and not ideal_contains(ideal, g2.arg):
                    raise RingError("triple core %r not in %s" % (g2.arg, ideal))
            return True
        if self.tag == "first-rowcol":
            for a in self.atoms:
                if a.i != 1 and a.j != 1:
                    raise RingError("atom %r is not first-row/column" % (a,))
                if a.j == 1 and ideal is not None and not ideal_contains(ideal, a.arg):
                    raise RingError("first-column arg %r not in %s" % (a.arg, ideal))
            return True
        raise RingError("unknown tag %r" % (self.tag,))

    def __repr__(self):
        return "Word[%s]" % "; ".join(repr(a) for a in self.atoms)


def elem_linear(ring, n, i, j, lam):
    return lin(i, j, ring.element(lam)).matrix(ring, n)


def elem_symplectic(ring, n, i, j, z):
    return se(i, j, ring.element(z)).matrix(ring, 2 * n)


def eval_word(word):
    return word.eval()


def commutator_word(w1, w2):
    """The word for [w1, w2] = w1 w2 w1^-1 w2^-1."""
    return w1 * w2 * w1.inverse() * w2.inverse()


def conjugate_word(g, h):
    """The word for g h g^-1."""
    return g * h * g.inverse()


def relative_generator(ring, family, size, i, j, a, x, ideal):
    """Conjugation triple ge_ij(a) ge_ji(x) ge_ij(-a), x in I."""
    a = ring.element(a)
    x = ring.element(x)
    if not ideal_contains(ideal, x):
        raise RingError("core argument %r is not in %s" % (x, ideal))
    atoms = [GeneratorAtom(family, i, j, a),
             GeneratorAtom(family, j, i, x),
             GeneratorAtom(family, i, j, -a)]
    return GeneratorWord(ring, size, atoms, tag="relative")


# -- rho / mu transvection matrices ----------------------------------


def _as_row(ring, q):
    return [ring.element(x) for x in q]


def rho_matrix(ring, q, alpha, phi):
    """Block matrix [[1,0,0],[alpha,1,-q*phi],[q^t,0,I]] of size 2n+2."""
    q = _as_row(ring, q)
    m = phi.n
    if len(q) != m:
        raise RingError("q must have length %d" % m)
    out = SquareMatrix.identity(ring, m + 2)
    out = out.with_entry(1, 0, ring.element(alpha))
    qphi = [_rowdot(q, [phi[k, c] for k in range(m)], ring) for c in range(m)]
    for c in range(m):
        out = out.with_entry(1, c + 2, -qphi[c])
        out = out.with_entry(c + 2, 0, q[c])
    return out


def mu_matrix(ring, q, beta, phi):
    """Block matrix [[1,-beta,q*phi],[0,1,0],[0,q^t,I]] of size 2n+2."""
    q = _as_row(ring, q)
    m = phi.n
    if len(q) != m:
        raise RingError("q must have length %d" % m)
    out = SquareMatrix.identity(ring, m + 2)
    out = out.with_entry(0, 1, -ring.element(beta))
    qphi = [_rowdot(q, [phi[k, c] for k in range(m)], ring) for c in range(m)]
    for c in range(m):
        out = out.with_entry(0, c + 2, qphi[c])
        out = out.with_entry(c + 2, 1, q[c])
    return out


def _rowdot(u, v, ring):
    acc = ring.zero()
    for a, b in zip(u, v):
        acc = acc + ring.element(a) * ring.element(b)
    return acc


def hyperbolic_defect(ring, q):
    """h(q) = sum q_{2k-1} q_{2k}: the cross-term a generator product
    accumulates; see PAPER_ERRATA for why the decompositions need it."""
    q = _as_row(ring, q)
    acc = ring.zero()
    for k in range(0, len(q), 2):
        acc = acc + q[k] * q[k + 1]
    return acc


def decompose_rho(ring, q, alpha):
    """Generator word evaluating to rho_matrix(q, alpha, psi_n).

    First factor se_21(alpha + h(q)); the plain se_21(alpha) of the
    source display fails by the hyperbolic cross-term (see errata).
    """
    q = _as_row(ring, q)
    size = len(q) + 2
    atoms = [se(2, 1, ring.element(alpha) + hyperbolic_defect(ring, q))]
    for i in range(3, size + 1):
        atoms.append(se(i, 1, q[i - 3]))
    return GeneratorWord(ring, size, atoms)


def decompose_mu(ring, q, beta):
    """Generator word evaluating to mu_matrix(q, beta, psi_n)."""
    q = _as_row(ring, q)
    size = len(q) + 2
    atoms = [se(1, 2, hyperbolic_defect(ring, q) - ring.element(beta))]
    for i in range(3, size + 1):
        arg = q[sigma(i - 2) - 1]
        if i % 2 == 1:
            arg = -arg
        atoms.append(se(1, i, arg))
    return GeneratorWord(ring, size, atoms)


# -- Bass symplectic transvections -----------------------------------


def _pairing(ring, u, v, phi):
    """<u, v> = u phi v^t."""
    m = phi.n
    acc = ring.zero()
    for r in range(m):
        for c in range(m):
            acc = acc + ring.element(u[r]) * phi[r, c] * ring.element(v[c])
    return acc


def bass_symplectic_transvection(ring, u, v, alpha, phi):
    """(I - v^t u phi - u^t v phi)(I - alpha u^t u phi); needs <u,v> = 0."""
    u = _as_row(ring, u)
    v = _as_row(ring, v)
    if not _pairing(ring, u, v, phi).is_zero():
        raise RingError("Bass transvection requires <u, v> = 0")
    m = phi.n
    alpha = ring.element(alpha)

    def outer_phi(a, b):
        # matrix a^t * (b phi)
        bphi = [_rowdot(b, [phi[k, c] for k in range(m)], ring) for c in range(m)]
        return SquareMatrix(ring, [[a[r] * bphi[c] for c in range(m)] for r in range(m)])

    eye = SquareMatrix.identity(ring, m)
    first = eye - outer_phi(v, u) - outer_phi(u, v)
    second = eye - outer_phi(u, u) * alpha
    return first * second


def bass_inverse(ring, u, v, alpha, phi):
    """Inverse of the Bass transvection: negate (v, alpha)."""
    return bass_symplectic_transvection(ring, u, [-ring.element(x) for x in v],
                                        -ring.element(alpha), phi)


def transvection_action_rho(ring, q, alpha, phi, point):
    """Def-style map (a, b, p) -> (a, b - <p,q> + alpha a, p + a q)
    with the pairing convention <p, q> = q phi p^t."""
    a, b, p = point
    a = ring.element(a)
    b = ring.element(b)
    p = _as_row(ring, p)
    q = _as_row(ring, q)
    pair = _pairing(ring, q, p, phi)
    return (a, b - pair + ring.element(alpha) * a,
            tuple(pc + a * qc for pc, qc in zip(p, q)))


def transvection_action_mu(ring, q, beta, phi, point):
    """Def-style map (a, b, p) -> (a + <p,q> - beta b, b, p + b q),
    same pairing convention."""
    a, b, p = point
    a = ring.element(a)
    b = ring.element(b)
    p = _as_row(ring, p)
    q = _as_row(ring, q)
    pair = _pairing(ring, q, p, phi)
    return (a + pair - ring.element(beta) * b, b,
            tuple(pc + b * qc for pc, qc in zip(p, q)))


# -- linear transvections E_x / E*_tau -------------------------------


def elementary_linear_transvection(ring, kind, vec):
    """E_x = [[1, x],[0, I]] or E*_tau = [[1, 0],[y^t, I]], size n+1."""
    vec = _as_row(ring, vec)
    n = len(vec)
    out = SquareMatrix.identity(ring, n + 1)
    for k, entry in enumerate(vec):
        if kind == "E_x":
            out = out.with_entry(0, k + 1, entry)
        elif kind == "E*_tau":
            out = out.with_entry(k + 1, 0, entry)
        else:
            raise RingError("kind must be E_x or E*_tau")
    return out


# -- serialization ----------------------------------------------------


def word_to_json(word):
    return json.dumps([
        {"fam": "L" if a.family == LINEAR else "S", "i": a.i, "j": a.j,
         "arg": _arg_to_json(a.arg)}
        for a in word.atoms])


def _arg_to_json(arg):
    from .matrices import _entry_to_json
    return _entry_to_json(arg)


def word_from_json(ring, size, text):
    from .matrices import _entry_from_json
    atoms = []
    for rec in json.loads(text):
        fam = LINEAR if rec["fam"] == "L" else SYMPLECTIC
        atoms.append(GeneratorAtom(fam, rec["i"], rec["j"],
                                   _entry_from_json(ring, rec["arg"])))
    return GeneratorWord(ring, size, atoms)


def parse_word_inline(ring, size, text):
    """Parse ``S:2,1:3;S:3,1:1`` into a word (integer args only)."""
    atoms = []
    for chunk in text.split(";"):
        if not chunk:
            continue
        fam_s, ij, arg_s = chunk.split(":")
        fam = LINEAR if fam_s == "L" else SYMPLECTIC
        i_s, j_s = ij.split(",")
        atoms.append(GeneratorAtom(fam, int(i_s), int(j_s), ring.element(int(arg_s))))
    return GeneratorWord(ring, size, atoms)


def word_psi(ring, n):
    return standard_form(ring, n)
