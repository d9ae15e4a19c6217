"""Finite set-valued algebraic structures and the built-in examples.

A structure is a carrier together with two binary multioperations (sum and
product), a negation map and distinguished elements 0 and 1.  Result sets are
always nonempty subsets of the carrier.  The carrier order fixed at
construction time is the canonical total order used for deterministic
iteration, witness selection and serialization.
"""

from __future__ import annotations

from .errors import StructureError, WindowRequired

INF = "inf"  # token for the tropical point at infinity


def _check_token(e):
    if isinstance(e, str) and (not e or any(c.isspace() for c in e) or e.startswith("#")):
        raise StructureError(f"bad element token {e!r}")
    return e


class Structure:
    """A finite structure with set-valued sum and product tables.

    Instances are immutable after construction; every operation is a pure
    function of its inputs, so values can be shared freely across threads.
    """

    __slots__ = (
        "name", "elements", "zero", "one",
        "_idx", "_neg", "_sum", "_prod",
        "_add_cache", "_mul_cache", "_kind_cache",
    )

    def __init__(self, name, elements, zero, one, neg, sum_table, prod_table):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise StructureError("carrier contains duplicate elements")
        if not elements:
            raise StructureError("carrier is empty")
        for e in elements:
            _check_token(e)
        idx = {e: i for i, e in enumerate(elements)}
        if zero not in idx or one not in idx:
            raise StructureError("zero/one must belong to the carrier")
        k = len(elements)

        neg_idx = [None] * k
        for e in elements:
            if e not in neg:
                raise StructureError(f"negation undefined for {e!r}")
            v = neg[e]
            if v not in idx:
                raise StructureError(f"negation of {e!r} leaves the carrier: {v!r}")
            neg_idx[idx[e]] = idx[v]

        def build(table, label):
            masks = [[0] * k for _ in range(k)]
            for a in elements:
                for b in elements:
                    if (a, b) not in table:
                        raise StructureError(f"{label}({a!r},{b!r}) is undefined")
                    res = table[(a, b)]
                    m = 0
                    for r in res:
                        if r not in idx:
                            raise StructureError(
                                f"{label}({a!r},{b!r}) result {r!r} leaves the carrier")
                        m |= 1 << idx[r]
                    if m == 0:
                        raise StructureError(f"{label}({a!r},{b!r}) has empty result")
                    masks[idx[a]][idx[b]] = m
            return masks

        self.name = name
        self.elements = elements
        self.zero = zero
        self.one = one
        self._idx = idx
        self._neg = tuple(neg_idx)
        self._sum = build(sum_table, "sum")
        self._prod = build(prod_table, "prod")
        self._add_cache = {}
        self._mul_cache = {}
        self._kind_cache = {}

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self._idx

    def __repr__(self):
        return f"Structure({self.name!r}, {len(self.elements)} elements)"

    def index(self, e):
        try:
            return self._idx[e]
        except KeyError:
            raise StructureError(f"{e!r} is not an element of {self.name}") from None

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return (self.name == other.name and self.elements == other.elements
                and self.zero == other.zero and self.one == other.one
                and self._neg == other._neg
                and self._sum == other._sum and self._prod == other._prod)

    def __hash__(self):
        return hash((self.name, self.elements, self.zero, self.one))

    # -- mask helpers --------------------------------------------------------
    # Subsets of the carrier are represented as int bitmasks in carrier order;
    # this keeps exhaustive scans cheap and canonical order implicit.

    def mask_of(self, elems):
        m = 0
        for e in elems:
            m |= 1 << self.index(e)
        return m

    def set_of(self, mask):
        els = self.elements
        return frozenset(els[i] for i in range(len(els)) if mask >> i & 1)

    def canon_of(self, mask):
        els = self.elements
        return tuple(els[i] for i in range(len(els)) if mask >> i & 1)

    def sum_mask(self, a, b):
        return self._sum[self.index(a)][self.index(b)]

    def prod_mask(self, a, b):
        return self._prod[self.index(a)][self.index(b)]

    def add_masks(self, m1, m2):
        """Setwise sum of two subsets, as masks."""
        cache = self._add_cache
        key = (m1, m2)
        res = cache.get(key)
        if res is None:
            table = self._sum
            k = len(self.elements)
            res = 0
            for i in range(k):
                if m1 >> i & 1:
                    row = table[i]
                    for j in range(k):
                        if m2 >> j & 1:
                            res |= row[j]
            cache[key] = res
        return res

    def mul_masks(self, m1, m2):
        """Setwise product of two subsets, as masks."""
        cache = self._mul_cache
        key = (m1, m2)
        res = cache.get(key)
        if res is None:
            table = self._prod
            k = len(self.elements)
            res = 0
            for i in range(k):
                if m1 >> i & 1:
                    row = table[i]
                    for j in range(k):
                        if m2 >> j & 1:
                            res |= row[j]
            cache[key] = res
        return res

    def neg_mask(self, mask):
        res = 0
        neg = self._neg
        for i in range(len(self.elements)):
            if mask >> i & 1:
                res |= 1 << neg[i]
        return res

    # -- element-level API ---------------------------------------------------

    def sum_set(self, a, b):
        return self.set_of(self.sum_mask(a, b))

    def prod_set(self, a, b):
        return self.set_of(self.prod_mask(a, b))

    def neg(self, a):
        return self.elements[self._neg[self.index(a)]]

    def neg_set(self, elems):
        return frozenset(self.neg(e) for e in elems)

    def canon(self, elems):
        """Canonical tuple form of a subset: deduplicated, in carrier order."""
        return self.canon_of(self.mask_of(elems))

    def inverses(self, a):
        """All b with 1 in a*b, in carrier order."""
        one_bit = 1 << self.index(self.one)
        row = self._prod[self.index(a)]
        return tuple(b for j, b in enumerate(self.elements) if row[j] & one_bit)

    def inverse(self, a):
        """Least inverse of a in carrier order, or None."""
        inv = self.inverses(a)
        return inv[0] if inv else None

    @property
    def is_strict(self):
        """True when every sum and product result is a singleton."""
        for tab in (self._sum, self._prod):
            for row in tab:
                for m in row:
                    if m & (m - 1):
                        return False
        return True

    @property
    def has_singleton_product(self):
        for row in self._prod:
            for m in row:
                if m & (m - 1):
                    return False
        return True

    # -- derived structures ----------------------------------------------------

    def with_entry(self, op, a, b, new_set, name=None):
        """Copy of this structure with one table entry replaced (for mutation tests)."""
        if op not in ("sum", "prod"):
            raise StructureError(f"unknown operation {op!r}")
        sum_table = {(x, y): self.sum_set(x, y) for x in self.elements for y in self.elements}
        prod_table = {(x, y): self.prod_set(x, y) for x in self.elements for y in self.elements}
        (sum_table if op == "sum" else prod_table)[(a, b)] = frozenset(new_set)
        return Structure(name or f"{self.name}*", self.elements, self.zero, self.one,
                         {e: self.neg(e) for e in self.elements}, sum_table, prod_table)


# -- folds ---------------------------------------------------------------------


def msum_sets(S, sets):
    """Left fold of the set-valued sum over subsets; empty fold gives {0}."""
    acc = S.mask_of([S.zero])
    started = False
    for part in sets:
        m = part if isinstance(part, int) else S.mask_of(part)
        acc = m if not started else S.add_masks(acc, m)
        started = True
    return S.set_of(acc)


def mprod_sets(S, sets):
    """Left fold of the set-valued product over subsets; empty fold gives {1}."""
    acc = S.mask_of([S.one])
    started = False
    for part in sets:
        m = part if isinstance(part, int) else S.mask_of(part)
        acc = m if not started else S.mul_masks(acc, m)
        started = True
    return S.set_of(acc)


def msum(S, xs):
    """Fold of the sum over a sequence of elements; empty sequence gives {0}."""
    return msum_sets(S, ([x] for x in xs))


def mprod(S, xs):
    """Fold of the product over a sequence of elements; empty sequence gives {1}."""
    return mprod_sets(S, ([x] for x in xs))


# -- built-in structures ---------------------------------------------------------


def _krasner():
    els = (0, 1)
    s = {(0, 0): {0}, (0, 1): {1}, (1, 0): {1}, (1, 1): {0, 1}}
    p = {(a, b): {a * b} for a in els for b in els}
    return Structure("K", els, 0, 1, {0: 0, 1: 1}, s, p)


def _signs():
    els = (-1, 0, 1)
    s = {}
    for a in els:
        for b in els:
            if a == 0:
                s[(a, b)] = {b}
            elif b == 0:
                s[(a, b)] = {a}
            elif a == b:
                s[(a, b)] = {a}
            else:
                s[(a, b)] = {-1, 0, 1}
    p = {(a, b): {a * b} for a in els for b in els}
    return Structure("Q2", els, 0, 1, {a: -a for a in els}, s, p)


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def _hp(p):
    if not _is_prime(p):
        raise StructureError(f"Hp needs a prime, got {p}")
    els = tuple(range(p))
    full = set(els)
    s = {}
    for a in els:
        for b in els:
            if a == 0:
                s[(a, b)] = {b}
            elif b == 0:
                s[(a, b)] = {a}
            elif a == b:
                s[(a, b)] = full
            else:
                s[(a, b)] = {a, b}
    pr = {(a, b): {(a * b) % p} for a in els for b in els}
    return Structure(f"H{p}", els, 0, 1, {a: a for a in els}, s, pr)


def _kaleidoscope(n):
    if n < 0:
        raise StructureError(f"Xn needs n >= 0, got {n}")
    els = tuple(range(-n, n + 1))
    s = {}
    for a in els:
        for b in els:
            if b == -a:
                s[(a, b)] = set(range(-abs(a), abs(a) + 1))
            elif abs(b) <= abs(a):
                s[(a, b)] = {a}
            else:
                s[(a, b)] = {b}
    def prod(a, b):
        if a == 0 or b == 0:
            return 0
        sgn = 1 if (a > 0) == (b > 0) else -1
        return sgn * max(abs(a), abs(b))
    p = {(a, b): {prod(a, b)} for a in els for b in els}
    return Structure(f"X{n}", els, 0, 1, {a: -a for a in els}, s, p)


def strict_ring(n, name=None):
    """The ordinary ring of integers mod n, as a strict (singleton-valued) structure."""
    if n < 1:
        raise StructureError("modulus must be positive")
    els = tuple(range(n))
    s = {(a, b): {(a + b) % n} for a in els for b in els}
    p = {(a, b): {(a * b) % n} for a in els for b in els}
    return Structure(name or f"Z{n}", els, 0, 1 % n, {a: (-a) % n for a in els}, s, p)


def _fp(p):
    if not _is_prime(p):
        raise StructureError(f"Fp needs a prime, got {p}")
    return strict_ring(p, name=f"F{p}")


class TropicalStructure:
    """The tropical structure over the integers with a point at infinity.

    The carrier is lazy: membership, negation and the operation rules are
    available everywhere, but enumeration and exhaustive checks need an
    explicit finite window of integers.
    """

    name = "Trop"
    zero = INF  # additive neutral element
    one = 0     # multiplicative neutral element

    def __contains__(self, e):
        return e == INF or isinstance(e, int)

    def neg(self, a):
        self._check(a)
        return a

    def _check(self, a):
        if a not in self:
            raise StructureError(f"{a!r} is not a tropical element")

    def sum_contains(self, a, b, x):
        """Exact membership test for x in a+b, no window needed."""
        self._check(a), self._check(b), self._check(x)
        if a == INF:
            return x == b
        if b == INF:
            return x == a
        if a != b:
            return x == min(a, b)
        return x == INF or (isinstance(x, int) and x >= a)

    def prod_value(self, a, b):
        """The single member of a*b (min-plus convolution of points)."""
        self._check(a), self._check(b)
        if a == INF or b == INF:
            return INF
        return a + b

    def window_elements(self, lo, hi):
        if lo > hi:
            raise StructureError("empty tropical window")
        return tuple(range(lo, hi + 1)) + (INF,)

    def window_tables(self, lo, hi):
        """Clip the rules to [lo, hi] + {inf}.

        Returns (elements, sum_entry, prod_entry, neg, zero, one) where the
        entry maps give (result_set, exact) or None when the true result
        escapes the window entirely.  Infinite sums are clipped and flagged
        inexact; products that land outside the window are escapes.
        """
        els = self.window_elements(lo, hi)
        inside = set(els)

        def sum_entry(a, b):
            if a == INF:
                return frozenset([b]), True
            if b == INF:
                return frozenset([a]), True
            if a != b:
                return frozenset([min(a, b)]), True
            up = frozenset([x for x in range(a, hi + 1)] + [INF])
            return up, False  # the true up-set continues past hi

        def prod_entry(a, b):
            v = self.prod_value(a, b)
            if v not in inside:
                return None
            return frozenset([v]), True

        return els, sum_entry, prod_entry, self.neg, INF, 0

    def _no_window(self, *_args, **_kw):
        raise WindowRequired("tropical structure needs a window for this operation")

    sum_set = _no_window
    prod_set = _no_window


def builtin(name, param=None):
    """Return a built-in structure by name.

    Names: K, Q2, Hp (prime param), Xn (n >= 0), Fp (prime param), Trop.
    """
    if name == "K":
        return _krasner()
    if name == "Q2":
        return _signs()
    if name == "Hp":
        if param is None:
            raise StructureError("Hp needs a prime parameter")
        return _hp(param)
    if name == "Xn":
        if param is None:
            raise StructureError("Xn needs an integer parameter")
        return _kaleidoscope(param)
    if name == "Fp":
        if param is None:
            raise StructureError("Fp needs a prime parameter")
        return _fp(param)
    if name == "Trop":
        return TropicalStructure()
    raise StructureError(f"unknown builtin {name!r}")
