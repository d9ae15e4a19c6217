"""Set-valued matrix algebra: boxes of matrices, determinants, inverses.

Sums, scalar products and matrix products make every result entry an
independent choice, so the canonical container is a box: one nonempty set per
entry, with the full Cartesian product materialized only on demand (for
determinants, membership and golden output).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .axioms import structure_is
from .errors import BlowupError, StructureError
from .structures import mprod_sets, msum_sets

DEFAULT_MEMBER_CAP = 10 ** 6
DEFAULT_FACTORIAL_CAP = 6


class Matrix:
    """A concrete matrix over a finite structure, stored row-major."""

    __slots__ = ("base", "rows", "cols", "entries")

    def __init__(self, base, rows, cols, entries):
        entries = tuple(entries)
        if rows < 1 or cols < 1:
            raise StructureError("matrix shape must be positive")
        if len(entries) != rows * cols:
            raise StructureError("entry count does not match the shape")
        for e in entries:
            if e not in base:
                raise StructureError(f"entry {e!r} not in {base.name}")
        self.base = base
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, base, rows):
        rows = [tuple(r) for r in rows]
        return cls(base, len(rows), len(rows[0]), tuple(itertools.chain(*rows)))

    @classmethod
    def zero(cls, base, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(base, rows, cols, (base.zero,) * (rows * cols))

    @classmethod
    def identity(cls, base, n):
        return cls(base, n, n, tuple(base.one if i == j else base.zero
                                     for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, base, entries):
        entries = tuple(entries)
        return cls(base, len(entries), 1, entries)

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def is_upper_triangular(self):
        return all(self.entry(i, j) == self.base.zero
                   for i in range(self.rows) for j in range(min(i, self.cols)))

    def with_entry(self, i, j, value):
        es = list(self.entries)
        es[i * self.cols + j] = value
        return Matrix(self.base, self.rows, self.cols, es)

    def sort_key(self):
        idx = self.base.index
        return tuple(idx(e) for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.base is other.base and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((id(self.base), self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix[{body}]"


class MatrixSet:
    """A box of matrices: per-entry sets with independent choices."""

    __slots__ = ("base", "rows", "cols", "entry_sets")

    def __init__(self, base, rows, cols, entry_sets):
        entry_sets = tuple(frozenset(s) for s in entry_sets)
        if len(entry_sets) != rows * cols:
            raise StructureError("entry set count does not match the shape")
        for s in entry_sets:
            if not s:
                raise StructureError("empty matrix entry set")
            for e in s:
                if e not in base:
                    raise StructureError(f"entry {e!r} not in {base.name}")
        self.base = base
        self.rows = rows
        self.cols = cols
        self.entry_sets = entry_sets

    @classmethod
    def of(cls, m):
        if isinstance(m, MatrixSet):
            return m
        return cls(m.base, m.rows, m.cols, [frozenset([e]) for e in m.entries])

    def entry_set(self, i, j):
        return self.entry_sets[i * self.cols + j]

    @property
    def member_count(self):
        n = 1
        for s in self.entry_sets:
            n *= len(s)
        return n

    def members(self, cap=DEFAULT_MEMBER_CAP):
        if self.member_count > cap:
            raise BlowupError(f"matrix box of {self.member_count} members exceeds cap {cap}")
        axes = [self.base.canon(s) for s in self.entry_sets]
        return tuple(Matrix(self.base, self.rows, self.cols, combo)
                     for combo in itertools.product(*axes))

    def __contains__(self, m):
        if not isinstance(m, Matrix) or (m.rows, m.cols) != (self.rows, self.cols):
            return False
        return all(e in s for e, s in zip(m.entries, self.entry_sets))

    def intersect(self, other):
        """Box intersection, or None when some entry pair is disjoint."""
        self._compatible(other)
        sets = [a & b for a, b in zip(self.entry_sets, other.entry_sets)]
        if any(not s for s in sets):
            return None
        return MatrixSet(self.base, self.rows, self.cols, sets)

    def _compatible(self, other):
        if self.base is not other.base:
            raise StructureError("matrix sets over different structures")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructureError("matrix shapes do not match")

    def __eq__(self, other):
        if not isinstance(other, MatrixSet):
            return NotImplemented
        return (self.base is other.base and self.rows == other.rows
                and self.cols == other.cols and self.entry_sets == other.entry_sets)

    def __hash__(self):
        return hash((id(self.base), self.rows, self.cols, self.entry_sets))

    def __repr__(self):
        def cell(s):
            return "{" + ",".join(str(e) for e in self.base.canon(s)) + "}"
        body = "; ".join(" ".join(cell(self.entry_set(i, j)) for j in range(self.cols))
                         for i in range(self.rows))
        return f"MatrixSet[{body}]"


def madd(a, b):
    """Entrywise set-valued sum."""
    A, B = MatrixSet.of(a), MatrixSet.of(b)
    A._compatible(B)
    S = A.base
    sets = [S.set_of(S.add_masks(S.mask_of(x), S.mask_of(y)))
            for x, y in zip(A.entry_sets, B.entry_sets)]
    return MatrixSet(S, A.rows, A.cols, sets)


def mneg(a):
    A = MatrixSet.of(a)
    return MatrixSet(A.base, A.rows, A.cols, [A.base.neg_set(s) for s in A.entry_sets])


def mscale(lam, a):
    """Entrywise left scalar product."""
    A = MatrixSet.of(a)
    S = A.base
    lam_mask = 1 << S.index(lam)
    sets = [S.set_of(S.mul_masks(lam_mask, S.mask_of(s))) for s in A.entry_sets]
    return MatrixSet(S, A.rows, A.cols, sets)


def mmul(a, b):
    """Matrix product; every result entry ranges over its sum of products."""
    A, B = MatrixSet.of(a), MatrixSet.of(b)
    if A.base is not B.base:
        raise StructureError("matrix sets over different structures")
    if A.cols != B.rows:
        raise StructureError("inner dimensions do not match")
    S = A.base
    sets = []
    for i in range(A.rows):
        row_masks = [S.mask_of(A.entry_set(i, k)) for k in range(A.cols)]
        for j in range(B.cols):
            terms = [S.mul_masks(row_masks[k], S.mask_of(B.entry_set(k, j)))
                     for k in range(A.cols)]
            sets.append(msum_sets(S, terms))
    return MatrixSet(S, A.rows, B.cols, sets)


# -- determinant -------------------------------------------------------------------


def _perm_sign(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv & 1 else 1


def det(a, factorial_cap=DEFAULT_FACTORIAL_CAP, member_cap=DEFAULT_MEMBER_CAP):
    """Permutation-expansion determinant; over a box, the union over members.

    Terms are accumulated in canonical order (identity permutation first,
    then lexicographic); the multivalued sum does not depend on the order, so
    the fixed order only pins down determinism.
    """
    A = MatrixSet.of(a)
    if A.rows != A.cols:
        raise StructureError("determinant needs a square matrix")
    n = A.rows
    if n > factorial_cap:
        raise BlowupError(f"determinant size {n} exceeds factorial cap {factorial_cap}")
    S = A.base
    out = 0
    for M in A.members(member_cap):
        terms = []
        for perm in itertools.permutations(range(n)):
            term = mprod_sets(S, [[M.entry(j, perm[j])] for j in range(n)])
            if _perm_sign(perm) < 0:
                term = S.neg_set(term)
            terms.append(S.mask_of(term))
        out |= S.mask_of(msum_sets(S, terms))
    return S.set_of(out)


# -- elementary operations -----------------------------------------------------------


@dataclass(frozen=True)
class ElementaryOp:
    """swap(i,j), scale(i, lam != 0) or add(i,j) meaning row i += row j."""

    kind: str
    i: int
    j: int = None
    lam: object = None

    @classmethod
    def swap(cls, i, j):
        return cls("swap", i, j)

    @classmethod
    def scale(cls, i, lam):
        return cls("scale", i, lam=lam)

    @classmethod
    def add(cls, i, j):
        return cls("add", i, j)


def elementary(op, a):
    """Apply one elementary row operation; add operations branch entrywise."""
    A = MatrixSet.of(a)
    S = A.base
    rows, cols = A.rows, A.cols
    if op.kind not in ("swap", "scale", "add"):
        raise StructureError(f"unknown elementary operation {op.kind!r}")
    if not 0 <= op.i < rows or (op.j is not None and not 0 <= op.j < rows):
        raise StructureError("row index out of range")

    sets = list(A.entry_sets)
    if op.kind == "swap":
        for j in range(cols):
            x, y = op.i * cols + j, op.j * cols + j
            sets[x], sets[y] = sets[y], sets[x]
    elif op.kind == "scale":
        if op.lam is None or op.lam == S.zero:
            raise StructureError("scale needs a nonzero element")
        lam_mask = 1 << S.index(op.lam)
        for j in range(cols):
            x = op.i * cols + j
            sets[x] = S.set_of(S.mul_masks(lam_mask, S.mask_of(sets[x])))
    else:
        if op.j is None:
            raise StructureError("add needs a source row")
        for j in range(cols):
            x, y = op.i * cols + j, op.j * cols + j
            sets[x] = S.set_of(S.add_masks(S.mask_of(sets[x]), S.mask_of(sets[y])))
    return MatrixSet(S, rows, cols, sets)


# -- invertibility -----------------------------------------------------------------


def is_inverse_pair(A, B):
    """1 in AB and 1 in BA."""
    ident = Matrix.identity(A.base, A.rows)
    return ident in mmul(A, B) and ident in mmul(B, A)


def _triangular_inverse(A, node_cap):
    """Back-substitution construction for triangular matrices, choosing
    the least admissible element at each step, with backtracking."""
    S = A.base
    n = A.rows
    zero, one = S.zero, S.one

    diag_inverses = []
    for i in range(n):
        inv = S.inverses(A.entry(i, i))
        if not inv:
            return None
        diag_inverses.append(inv)

    # positions: diagonal first, then bands of increasing superdiagonal offset
    positions = [(i, i) for i in range(n)]
    for d in range(1, n):
        positions += [(i, i + d) for i in range(n - d)]

    def candidates(pos, chosen):
        i, j = pos
        if i == j:
            return diag_inverses[i]
        # need 0 in sum_{k=i..j} a_ik * b_kj with all b_kj (k > i) already chosen
        rest = [S.prod_mask(A.entry(i, k), chosen[(k, j)]) for k in range(i + 1, j + 1)]
        rest_mask = S.mask_of(msum_sets(S, rest)) if rest else 1 << S.index(zero)
        zero_bit = S.index(zero)
        out = []
        for x in S.elements:
            m = S.add_masks(S.prod_mask(A.entry(i, i), x), rest_mask)
            if m >> zero_bit & 1:
                out.append(x)
        return out

    nodes = 0
    chosen = {}

    def dfs(k):
        nonlocal nodes
        if k == len(positions):
            entries = [[zero] * n for _ in range(n)]
            for (i, j), v in chosen.items():
                entries[i][j] = v
            B = Matrix.from_rows(S, entries)
            return B if is_inverse_pair(A, B) else None
        for x in candidates(positions[k], chosen):
            nodes += 1
            if nodes > node_cap:
                raise BlowupError("inverse construction exceeded its node cap")
            chosen[positions[k]] = x
            got = dfs(k + 1)
            if got is not None:
                return got
            del chosen[positions[k]]
        return None

    return dfs(0)


def find_inverse(A, search_cap=DEFAULT_MEMBER_CAP, node_cap=10 ** 5):
    """A two-sided inverse of A, or None when the bounded search is exhausted.

    Upper-triangular matrices with 0 not in det go through the constructive
    back-substitution recipe; everything else falls back to a bounded
    exhaustive scan over candidate matrices.
    """
    if not A.is_square:
        raise StructureError("only square matrices can be inverted")
    S = A.base
    if not structure_is(S, "superfield"):
        raise StructureError(f"{S.name} is not a superfield")

    if A.is_upper_triangular:
        diag = det(A)
        if S.zero in diag:
            return None  # a zero on the diagonal rules out invertibility
        got = _triangular_inverse(A, node_cap)
        if got is not None:
            return got

    n = A.rows
    total = len(S.elements) ** (n * n)
    if total > search_cap:
        raise BlowupError(f"inverse search space {total} exceeds cap {search_cap}")
    for combo in itertools.product(S.elements, repeat=n * n):
        B = Matrix(S, n, n, combo)
        if is_inverse_pair(A, B):
            return B
    return None


def all_matrices(base, rows, cols):
    """Every matrix of the given shape, in canonical order."""
    for combo in itertools.product(base.elements, repeat=rows * cols):
        yield Matrix(base, rows, cols, combo)
