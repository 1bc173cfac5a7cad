"""Exact arithmetic over the supported coefficient rings.

Supported rings (2 is a unit in all of them):

* ``Zmod(m)``   -- integers mod m, m odd >= 3
* ``GF(p)``     -- prime field, p an odd prime
* ``Dyadic()``  -- Z[1/2], pairs n/2^k in lowest terms
* ``PolyRing(base, vars)`` -- sparse multivariate polynomials over one of
  the above, graded-lex canonical order

Elements are immutable and canonical: two elements are equal iff their
representations are equal.  All arithmetic is exact.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd


class RingError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RingDescriptor:
    """Base class for ring descriptors.  Instances are immutable."""

    kind = None

    def element(self, raw):
        """Coerce ``raw`` (int, RingElement, ...) into this ring."""
        raise NotImplementedError

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def half(self):
        """The inverse of 2; exists in every constructible ring."""
        raise NotImplementedError

    def is_finite(self):
        return False

    def descriptor(self):
        """Serialized form, e.g. ``zmod:9`` or ``poly:dyadic:a,b``."""
        raise NotImplementedError

    def __repr__(self):
        return self.descriptor()

    def __eq__(self, other):
        return isinstance(other, RingDescriptor) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())


class Zmod(RingDescriptor):
    kind = "zmod"

    def __init__(self, m):
        if m < 3 or m % 2 == 0:
            raise RingError("Z/m requires odd m >= 3 (2 must be a unit); got m=%r" % (m,))
        self.m = m

    def element(self, raw):
        if isinstance(raw, RingElement):
            if raw.ring != self:
                raise RingError("element of %s used in %s" % (raw.ring, self))
            return raw
        return RingElement(self, int(raw) % self.m)

    def half(self):
        return self.element((self.m + 1) // 2)

    def is_finite(self):
        return True

    def size(self):
        return self.m

    def elements(self):
        return [self.element(i) for i in range(self.m)]

    def is_unit(self, elt):
        return gcd(elt.value, self.m) == 1

    def invert(self, elt):
        if not self.is_unit(elt):
            raise RingError("%r is not a unit mod %d" % (elt.value, self.m))
        return self.element(pow(elt.value, -1, self.m))

    def descriptor(self):
        return "zmod:%d" % self.m


class GF(Zmod):
    kind = "gf"

    def __init__(self, p):
        if not _is_prime(p) or p == 2:
            raise RingError("GF(p) requires an odd prime; got %r" % (p,))
        super().__init__(p)
        self.p = p

    def descriptor(self):
        return "gf:%d" % self.p


class Dyadic(RingDescriptor):
    """Z[1/2]: values n/2^k with n odd or zero, k >= 0."""

    kind = "dyadic"

    def element(self, raw):
        if isinstance(raw, RingElement):
            if raw.ring != self:
                raise RingError("element of %s used in %s" % (raw.ring, self))
            return raw
        if isinstance(raw, tuple):
            num, k = raw
        elif isinstance(raw, Fraction):
            den = raw.denominator
            k = den.bit_length() - 1
            if den != 1 << k:
                raise RingError("%r is not dyadic" % (raw,))
            num, k = raw.numerator, k
        else:
            num, k = int(raw), 0
        if num == 0:
            return RingElement(self, (0, 0))
        while k > 0 and num % 2 == 0:
            num //= 2
            k -= 1
        if k < 0:
            raise RingError("negative dyadic exponent")
        return RingElement(self, (num, k))

    def half(self):
        return self.element((1, 1))

    def is_unit(self, elt):
        num, _ = elt.value
        return num != 0 and abs(num) & (abs(num) - 1) == 0

    def invert(self, elt):
        num, k = elt.value
        if not self.is_unit(elt):
            raise RingError("%r is not a unit in Z[1/2]" % (elt,))
        sign = 1 if num > 0 else -1
        j = abs(num).bit_length() - 1
        return self.element((sign * 2 ** k, j))

    def descriptor(self):
        return "dyadic"


class PolyRing(RingDescriptor):
    """Sparse multivariate polynomials over a base ring.

    Values are dicts mapping exponent tuples to nonzero base elements;
    stored canonically as sorted tuples of (monomial, coefficient).
    """

    kind = "poly"

    def __init__(self, base, names):
        if not isinstance(base, RingDescriptor) or isinstance(base, PolyRing):
            raise RingError("polynomial base must be a non-polynomial ring descriptor")
        names = tuple(names)
        if len(set(names)) != len(names) or not names:
            raise RingError("variable names must be nonempty and unique")
        self.base = base
        self.names = names

    def element(self, raw):
        if isinstance(raw, RingElement):
            if raw.ring == self:
                return raw
            if raw.ring == self.base:
                return self._from_terms({(0,) * len(self.names): raw})
            raise RingError("element of %s used in %s" % (raw.ring, self))
        if isinstance(raw, dict):
            return self._from_terms({m: self.base.element(c) for m, c in raw.items()})
        return self._from_terms({(0,) * len(self.names): self.base.element(raw)})

    def _from_terms(self, terms):
        clean = {m: c for m, c in terms.items() if c.value != c.ring.zero().value}
        key = tuple(sorted(clean.items(), key=lambda mc: self._order(mc[0])))
        return RingElement(self, key)

    def _order(self, mono):
        return (sum(mono), tuple(-e for e in mono))

    def var(self, name):
        idx = self.names.index(name)
        mono = tuple(1 if i == idx else 0 for i in range(len(self.names)))
        return self._from_terms({mono: self.base.one()})

    def half(self):
        return self.element(self.base.half())

    def descriptor(self):
        return "poly:%s:%s" % (self.base.descriptor(), ",".join(self.names))


class RingElement:
    """Canonical exact element of a supported ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("RingElement is immutable")

    # -- arithmetic -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                if isinstance(self.ring, PolyRing) and other.ring == self.ring.base:
                    return self.ring.element(other)
                raise RingError("mixed rings: %s vs %s" % (self.ring, other.ring))
            return other
        return self.ring.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        r = self.ring
        if isinstance(r, Zmod):
            return r.element(self.value + other.value)
        if isinstance(r, Dyadic):
            (a, j), (b, k) = self.value, other.value
            n = max(j, k)
            return r.element((a * (1 << (n - j)) + b * (1 << (n - k)), n))
        terms = dict(self.value)
        for m, c in other.value:
            cur = terms.get(m)
            terms[m] = c if cur is None else cur + c
        return r._from_terms(terms)

    def __neg__(self):
        r = self.ring
        if isinstance(r, Zmod):
            return r.element(-self.value)
        if isinstance(r, Dyadic):
            n, k = self.value
            return r.element((-n, k))
        return r._from_terms({m: -c for m, c in self.value})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        r = self.ring
        if isinstance(r, Zmod):
            return r.element(self.value * other.value)
        if isinstance(r, Dyadic):
            (a, j), (b, k) = self.value, other.value
            return r.element((a * b, j + k))
        terms = {}
        for m1, c1 in self.value:
            for m2, c2 in other.value:
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                c = c1 * c2
                cur = terms.get(m)
                terms[m] = c if cur is None else cur + c
        return r._from_terms(terms)

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            try:
                other = self._coerce(other)
            except (RingError, TypeError, ValueError):
                return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self):
        if isinstance(self.ring, Zmod):
            return self.value == 0
        if isinstance(self.ring, Dyadic):
            return self.value[0] == 0
        return not self.value

    def halve(self):
        """Exact division by 2."""
        return self * self.ring.half()

    # -- printing ---------------------------------------------------

    def __repr__(self):
        r = self.ring
        if isinstance(r, Zmod):
            return str(self.value)
        if isinstance(r, Dyadic):
            n, k = self.value
            return str(n) if k == 0 else "%d/2^%d" % (n, k)
        if not self.value:
            return "0"
        parts = []
        for mono, coeff in self.value:
            vars_ = "*".join(
                n if e == 1 else "%s^%d" % (n, e)
                for n, e in zip(r.names, mono) if e
            )
            cs = repr(coeff)
            parts.append(cs if not vars_ else ("%s*%s" % (cs, vars_) if cs != "1" else vars_))
        return " + ".join(parts)


# -- ideals ----------------------------------------------------------


class Ideal:
    """Decidable-membership ideal of a supported ring.

    Shapes: zero, full, principal(generator) for Zmod/GF/Dyadic,
    variable-generated for polynomial rings.
    """

    def __init__(self, ring, shape, data=None):
        if shape not in ("zero", "full", "principal", "vars"):
            raise RingError("unknown ideal shape %r" % (shape,))
        if shape == "principal":
            if isinstance(ring, PolyRing):
                raise RingError("principal ideals unsupported in polynomial rings")
            data = ring.element(data)
        if shape == "vars":
            if not isinstance(ring, PolyRing):
                raise RingError("variable-generated ideals require a polynomial ring")
            data = tuple(data)
            for v in data:
                if v not in ring.names:
                    raise RingError("unknown variable %r" % (v,))
        self.ring = ring
        self.shape = shape
        self.data = data

    @classmethod
    def zero(cls, ring):
        return cls(ring, "zero")

    @classmethod
    def full(cls, ring):
        return cls(ring, "full")

    @classmethod
    def principal(cls, ring, gen):
        g = ring.element(gen)
        if isinstance(ring, Zmod) and gcd(g.value, ring.m) == 1:
            return cls(ring, "full")
        if g.is_zero():
            return cls(ring, "zero")
        return cls(ring, "principal", g)

    @classmethod
    def vars(cls, ring, names):
        return cls(ring, "vars", names)

    def is_full(self):
        return self.shape == "full"

    def contains(self, r):
        r = self.ring.element(r)
        if self.shape == "full":
            return True
        if self.shape == "zero":
            return r.is_zero()
        if self.shape == "principal":
            ring = self.ring
            if isinstance(ring, Zmod):
                return r.value % gcd(self.data.value, ring.m) == 0
            # Dyadic: (d) = (odd part of d)
            if r.is_zero():
                return True
            dn = abs(self.data.value[0])
            return abs(r.value[0]) % dn == 0
        gen_idx = [self.ring.names.index(v) for v in self.data]
        return all(any(mono[i] for i in gen_idx) for mono, _ in r.value)

    def additive_generators(self):
        """A finite additive generating set (finite rings only)."""
        ring = self.ring
        if self.shape == "zero":
            return []
        if self.shape == "full":
            return [ring.one()]
        if isinstance(ring, Zmod):
            return [ring.element(gcd(self.data.value, ring.m))]
        raise RingError("additive generators only for finite rings")

    def elements(self):
        if not self.ring.is_finite():
            raise RingError("ideal enumeration requires a finite ring")
        return [x for x in self.ring.elements() if self.contains(x)]

    def descriptor(self):
        if self.shape == "zero":
            return "ideal:0"
        if self.shape == "full":
            return "ideal:full"
        if self.shape == "principal":
            return "ideal:%r" % (self.data,)
        return "ideal:vars:%s" % ",".join(self.data)

    def __repr__(self):
        return self.descriptor()

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.ring == other.ring
                and self.shape == other.shape and self.data == other.data)


def ideal_contains(ideal, r):
    """Membership test; errors on ring mismatch."""
    if isinstance(r, RingElement) and r.ring != ideal.ring:
        raise RingError("ring mismatch: %s vs %s" % (r.ring, ideal.ring))
    return ideal.contains(r)


# -- parsing ---------------------------------------------------------


def parse_ring(text):
    """Parse ``zmod:9``, ``gf:5``, ``dyadic``, ``poly:dyadic:a,b,x``."""
    parts = text.split(":")
    if parts[0] == "zmod":
        return Zmod(int(parts[1]))
    if parts[0] == "gf":
        return GF(int(parts[1]))
    if parts[0] == "dyadic":
        return Dyadic()
    if parts[0] == "poly":
        base = parse_ring(":".join(parts[1:-1]))
        return PolyRing(base, parts[-1].split(","))
    raise RingError("cannot parse ring descriptor %r" % (text,))


def parse_ideal(ring, text):
    """Parse ``3`` (principal) or ``vars:x,y``; also accepts ``full``/``0``."""
    if text in ("full", "R"):
        return Ideal.full(ring)
    if text.startswith("vars:"):
        return Ideal.vars(ring, text[5:].split(","))
    gen = int(text)
    if gen == 0:
        return Ideal.zero(ring)
    return Ideal.principal(ring, gen)


# -- localization ----------------------------------------------------


def localize_at_prime(ring, p):
    """CRT projection Z/m -> Z/p^k for the exact p-power p^k || m.

    Returns (local ring, projection map).
    """
    if not isinstance(ring, Zmod):
        raise RingError("localization implemented for Z/m only")
    if p == 2 or not _is_prime(p):
        raise RingError("p must be an odd prime")
    m = ring.m
    if m % p != 0:
        raise RingError("%d does not divide %d" % (p, m))
    pk = 1
    while m % (pk * p) == 0:
        pk *= p
    local = Zmod(pk) if pk > 3 or pk == 3 else Zmod(pk)
    if _is_prime(pk):
        local = GF(pk)

    def project(elt):
        elt = ring.element(elt)
        return local.element(elt.value % pk)

    return local, project


def prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- exact division helpers -----------------------------------------


def var_multiplicity(elt, name):
    """Largest k with name^k dividing elt (inf for 0, capped at 64)."""
    ring = elt.ring
    if not isinstance(ring, PolyRing):
        raise RingError("variable divisibility requires a polynomial ring")
    if elt.is_zero():
        return 64
    idx = ring.names.index(name)
    return min(mono[idx] for mono, _ in elt.value)


def divide_by_var(elt, name, k=1):
    """Exact division by name^k; raises if not divisible."""
    ring = elt.ring
    if var_multiplicity(elt, name) < k:
        raise RingError("%r is not divisible by %s^%d" % (elt, name, k))
    idx = ring.names.index(name)
    terms = {}
    for mono, c in elt.value:
        m = list(mono)
        m[idx] -= k
        terms[tuple(m)] = c
    return ring._from_terms(terms)


def divide_by_unit(elt, unit):
    """Exact division of elt by a unit scalar of the (base) ring."""
    ring = elt.ring
    if isinstance(ring, PolyRing):
        inv = _scalar_inverse(ring.base, ring.base.element(unit))
        return elt * ring.element(inv)
    return elt * _scalar_inverse(ring, ring.element(unit))


def _scalar_inverse(ring, u):
    if isinstance(ring, Zmod):
        return ring.invert(u)
    if isinstance(ring, Dyadic):
        return ring.invert(u)
    raise RingError("no inverse in %s" % (ring,))


def substitute(elt, name, value):
    """Substitute `value` (an element of the same ring) for the variable."""
    ring = elt.ring
    if not isinstance(ring, PolyRing):
        raise RingError("substitution requires a polynomial ring")
    value = ring.element(value)
    idx = ring.names.index(name)
    out = ring.zero()
    for mono, c in elt.value:
        m = list(mono)
        k = m[idx]
        m[idx] = 0
        term = ring._from_terms({tuple(m): c})
        for _ in range(k):
            term = term * value
        out = out + term
    return out


# -- sampling --------------------------------------------------------


def sample_element(ring, rng, degree_bound=2, coeff_bound=9):
    """Deterministic-for-a-seed sample; uniform over finite rings.

    Polynomial and dyadic rings need the bounds (error otherwise is the
    caller's concern: the defaults make every ring sampleable).
    """
    if isinstance(ring, Zmod):
        return ring.element(rng.randrange(ring.m))
    if isinstance(ring, Dyadic):
        return ring.element((rng.randrange(-coeff_bound, coeff_bound + 1), rng.randrange(3)))
    if isinstance(ring, PolyRing):
        nvars = len(ring.names)
        terms = {}
        for _ in range(rng.randrange(4)):
            mono = [0] * nvars
            total = rng.randrange(degree_bound + 1)
            for _ in range(total):
                mono[rng.randrange(nvars)] += 1
            c = sample_element(ring.base, rng, degree_bound, coeff_bound)
            m = tuple(mono)
            terms[m] = terms.get(m, ring.base.zero()) + c
        return ring._from_terms({m: c for m, c in terms.items()})
    raise RingError("cannot sample from %s" % (ring,))
