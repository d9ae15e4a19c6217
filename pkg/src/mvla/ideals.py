"""Characteristic, ideals, ideal classification and finite quotients."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CongruenceError, StructureError, WindowRequired
from .structures import Structure, TropicalStructure


def characteristic(S, window=None):
    """Least n >= 1 with 0 in the n-fold sum of ones; 0 when no such n exists.

    The iterated sum-of-ones sets live in a finite powerset, so the sequence
    is eventually periodic: a repeat without hitting 0 proves characteristic
    zero.  Lazy structures are searched on a window; finding 0 there is
    conclusive, anything else returns None (inconclusive).
    """
    if isinstance(S, TropicalStructure):
        if window is None:
            raise WindowRequired("characteristic of a lazy structure needs a window")
        from .axioms import _View
        view = _View.of_window(S, *window)
        one_bit = 1 << view.one_i
        zero_i = view.zero_i
        mask, exact = one_bit, True
        seen = {mask}
        for n in range(1, 2 ** view.k + 2):
            if mask >> zero_i & 1:
                return n
            nxt, nxt_exact = 0, exact
            m, i = mask, 0
            while m:
                if m & 1:
                    cell = view.sum[i][view.one_i]
                    if cell is None:
                        nxt_exact = False
                    else:
                        nxt |= cell[0]
                        nxt_exact = nxt_exact and cell[1]
                m >>= 1
                i += 1
            mask, exact = nxt, nxt_exact
            if mask in seen and exact:
                return 0
            if mask in seen and not exact:
                return None
            seen.add(mask)
        return None

    zero_bit = 1 << S.index(S.zero)
    one_mask = 1 << S.index(S.one)
    mask = one_mask
    seen = {mask}
    n = 1
    while True:
        if mask & zero_bit:
            return n
        mask = S.add_masks(mask, one_mask)
        n += 1
        if mask in seen:
            return 0
        seen.add(mask)


@dataclass(frozen=True)
class Ideal:
    parent: Structure
    members: frozenset

    def __contains__(self, e):
        return e in self.members

    def canon(self):
        return self.parent.canon(self.members)


def is_ideal(S, members):
    """Nonempty, closed under the set sum and under carrier multiplication."""
    m = S.mask_of(members)
    if m == 0:
        return False
    full = (1 << len(S.elements)) - 1
    return (S.add_masks(m, m) | m) == m and (S.mul_masks(full, m) | m) == m


def principal_ideal(S, gens):
    """Least ideal containing gens, by fixed-point closure."""
    mask = S.mask_of(gens) | 1 << S.index(S.zero)
    full = (1 << len(S.elements)) - 1
    while True:
        nxt = mask | S.add_masks(mask, mask) | S.mul_masks(full, mask)
        if nxt == mask:
            return Ideal(S, S.set_of(mask))
        mask = nxt


@dataclass(frozen=True)
class IdealFlags:
    is_ideal: bool
    prime: bool | None
    strongly_prime: bool | None
    maximal: bool | None


def classify_ideal(S, ideal):
    """Exhaustive prime / strongly prime / maximal flags for a candidate ideal."""
    members = ideal.members if isinstance(ideal, Ideal) else frozenset(ideal)
    if not is_ideal(S, members):
        return IdealFlags(False, None, None, None)
    imask = S.mask_of(members)
    full = (1 << len(S.elements)) - 1
    one_in = S.one in members

    prime = not one_in
    strongly = not one_in
    if not one_in:
        for a in S.elements:
            for b in S.elements:
                pm = S.prod_mask(a, b)
                inside = a in members or b in members
                if not inside:
                    if pm & ~imask == 0:
                        prime = False
                    if pm & imask:
                        strongly = False
            if not prime and not strongly:
                break

    maximal = imask != full
    if maximal:
        for x in S.elements:
            if x in members:
                continue
            grown = S.mask_of(principal_ideal(S, members | {x}).members)
            if grown != full and grown != imask:
                maximal = False
                break
    return IdealFlags(True, prime, strongly, maximal)


def quotient(S, ideal):
    """Quotient of a finite structure by an ideal, on canonical representatives.

    Elements x, y are identified when the sets x+I and y+I coincide; the
    induced operations are re-checked for well-definedness over every pair of
    representatives, and a CongruenceError names the witnesses when the
    candidate relation is not a congruence.
    """
    members = ideal.members if isinstance(ideal, Ideal) else frozenset(ideal)
    if not is_ideal(S, members):
        raise StructureError("quotient requires an ideal")
    imask = S.mask_of(members)

    coset = {}
    classes = {}
    for e in S.elements:
        key = S.add_masks(1 << S.index(e), imask)
        coset[e] = key
        classes.setdefault(key, []).append(e)
    rep = {key: min(cls, key=S.index) for key, cls in classes.items()}
    cls_of = {e: rep[coset[e]] for e in S.elements}
    reps = tuple(sorted(rep.values(), key=S.index))

    def induced(op_set, label):
        table = {}
        for ra in reps:
            for rb in reps:
                expected = None
                for a in classes[coset[ra]]:
                    for b in classes[coset[rb]]:
                        got = frozenset(cls_of[z] for z in op_set(a, b))
                        if expected is None:
                            expected = got
                        elif got != expected:
                            raise CongruenceError(
                                f"{label} not well defined on classes of "
                                f"{ra!r}, {rb!r}",
                                witnesses=[(label, ra, rb, a, b,
                                            tuple(sorted(map(str, got))),
                                            tuple(sorted(map(str, expected))))])
                table[(ra, rb)] = expected
        return table

    sum_table = induced(S.sum_set, "sum")
    prod_table = induced(S.prod_set, "prod")

    neg_table = {}
    for r in reps:
        images = {cls_of[S.neg(a)] for a in classes[coset[r]]}
        if len(images) != 1:
            raise CongruenceError(f"negation not well defined on class of {r!r}",
                                  witnesses=[("neg", r, tuple(sorted(map(str, images))))])
        neg_table[r] = images.pop()

    return Structure(f"{S.name}/I", reps, cls_of[S.zero], cls_of[S.one],
                     neg_table, sum_table, prod_table)


def all_ideals(S):
    """Every ideal of a small finite structure, by subset scan."""
    from itertools import combinations
    out = []
    rest = [e for e in S.elements if e != S.zero]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            members = frozenset(extra) | {S.zero}
            if is_ideal(S, members):
                out.append(Ideal(S, members))
    return out
