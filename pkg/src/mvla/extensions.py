"""Superfield extensions and the quotient construction F[X]/<p>.

Quotient elements are coefficient vectors of length deg p (canonical coset
representatives); products go through the polynomial convolution followed by
reduction against every admissible remainder, so no multivalue is silently
dropped.  Constructed quotients are only released after passing the full
superfield axiom scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .axioms import MorphismSpec, check_morphism, structure_is, verify_axioms
from .errors import CongruenceError, StructureError
from .polys import Poly, all_polys, evaluate, is_irreducible, pmul
from .structures import Structure, mprod_sets, msum_sets


@dataclass(frozen=True)
class ExtensionPair:
    small: Structure
    big: Structure
    embedding: MorphismSpec

    @classmethod
    def inclusion(cls, small, big):
        return cls(small, big, MorphismSpec.inclusion(small, big))

    @classmethod
    def of(cls, small, big, mapping):
        return cls(small, big, MorphismSpec.from_mapping(small, big, mapping))


def classify_extension(pair):
    """Strongest applicable label: full > extension > proto > not-an-extension."""
    emb = pair.embedding
    if not emb.is_injective:
        return "not-an-extension"
    if check_morphism(emb, full=True).passed:
        return "full"
    if check_morphism(emb).passed:
        return "extension"
    return "proto"


# -- the quotient superfield -----------------------------------------------------


def _reduce_poly(z, p):
    """All remainder vectors r (length deg p) with z in q*p + r for bounded q."""
    F = p.base
    m = p.degree
    if z.degree < m:
        return {z.padded(m)}
    out = set()
    dq = z.degree - m
    lead = [e for e in F.elements if e != F.zero]
    for top in lead:
        for low in itertools.product(F.elements, repeat=dq):
            q = Poly(F, low + (top,))
            box = pmul(q, p)
            span = max(len(box.coeff_sets), len(z.coeffs), m)
            for rc in itertools.product(F.elements, repeat=m):
                ok = True
                for i in range(span):
                    r_i = rc[i] if i < m else F.zero
                    cell = F.add_masks(F.mask_of(box.coeff_set(i)), 1 << F.index(r_i))
                    if not cell >> F.index(z.coeff(i)) & 1:
                        ok = False
                        break
                if ok:
                    out.add(rc)
    return out


def make_quotient_superfield(F, p, verify=True):
    """The quotient of the polynomial superring by an irreducible p.

    The carrier is every coefficient vector of length deg p; the sum is
    componentwise, the product reduces each convolution member against all
    admissible remainders.  The superfield axioms are re-checked before the
    structure is returned; failure raises a CongruenceError carrying the
    witness (the faithfulness of representative arithmetic to coset
    arithmetic is exactly what that check probes).
    """
    if not structure_is(F, "superfield"):
        raise StructureError(f"{F.name} is not a superfield")
    verdict = is_irreducible(p)
    if not verdict:
        raise StructureError(f"{p!r} is reducible (witness {verdict.witness!r})")
    m = p.degree
    elements = list(itertools.product(F.elements, repeat=m))
    zero = (F.zero,) * m
    one = (F.one,) + (F.zero,) * (m - 1)

    sum_table = {}
    for x in elements:
        for y in elements:
            axes = [F.canon(F.sum_set(a, b)) for a, b in zip(x, y)]
            sum_table[(x, y)] = set(itertools.product(*axes))

    prod_table = {}
    for x in elements:
        fx = Poly(F, x)
        for y in elements:
            if (y, x) in prod_table:
                prod_table[(x, y)] = prod_table[(y, x)]
                continue
            fy = Poly(F, y)
            acc = set()
            for z in pmul(fx, fy).members():
                acc |= _reduce_poly(z, p)
            prod_table[(x, y)] = acc

    neg = {x: tuple(F.neg(a) for a in x) for x in elements}
    name = f"{F.name}({','.join(str(c) for c in p.coeffs)})"
    out = Structure(name, elements, zero, one, neg, sum_table, prod_table)
    if verify:
        report = verify_axioms(out, "superfield")
        if not report.passed:
            raise CongruenceError(
                f"quotient by {p!r} fails the superfield axioms",
                witnesses=report.witnesses)
    return out


def quotient_pair(F, p, verify=True):
    """(quotient, extension pair, generator): the constant embedding and X-bar."""
    K = make_quotient_superfield(F, p, verify=verify)
    m = p.degree
    mapping = {a: (a,) + (F.zero,) * (m - 1) for a in F.elements}
    pair = ExtensionPair.of(F, K, mapping)
    if m >= 2:
        gamma = (F.zero, F.one) + (F.zero,) * (m - 2)
    else:
        gamma = min(_reduce_poly(Poly.x_power(F, 1), p), key=K.index)
    return K, pair, gamma


def find_irreducible(F, degree):
    """First irreducible polynomial of the given degree, in canonical order."""
    for f in all_polys(F, degree):
        if f.degree == degree and is_irreducible(f):
            return f
    return None


def find_quotient_superfield(F, degree):
    """First irreducible p of the given degree whose quotient verifies.

    Representative arithmetic is not guaranteed to match coset arithmetic for
    every irreducible p (the construction may acquire zero divisors); this
    scan keeps going until the axiom check passes and reports the rejected
    candidates alongside the construction.

    Returns (quotient, pair, gamma, p, rejected) or None.
    """
    rejected = []
    for p in all_polys(F, degree):
        if p.degree != degree or not is_irreducible(p):
            continue
        try:
            K, pair, gamma = quotient_pair(F, p)
        except CongruenceError:
            rejected.append(p)
            continue
        return K, pair, gamma, p, tuple(rejected)
    return None


# -- evaluation closures ------------------------------------------------------------


def eval_closure(gamma, pair, family="all", g=None, bound=None):
    """Union of evaluations at gamma over a polynomial family, to saturation.

    family "all" runs over every polynomial of F; "multiples" over members of
    h*g.  Degrees grow until the union stops growing or the bound (default
    |K|) is hit; the result reports whether it saturated.
    """
    F, K, emb = pair.small, pair.big, pair.embedding
    if gamma not in K:
        raise StructureError(f"{gamma!r} is not in {K.name}")
    if family not in ("all", "multiples"):
        raise StructureError(f"unknown family {family!r}")
    if family == "multiples" and g is None:
        raise StructureError("family 'multiples' needs g")
    bound = len(K.elements) if bound is None else bound

    seen = frozenset()
    saturated = False
    for d in range(bound + 1):
        grown = seen
        for h in all_polys(F, d):
            if h.degree != d and not (d == 0 and h.is_zero):
                continue
            if family == "all":
                grown = grown | evaluate(h, gamma, K, via=emb)
            else:
                for f in pmul(h, g).members():
                    grown = grown | evaluate(f, gamma, K, via=emb)
        if d > 0 and grown == seen:
            saturated = True
            seen = grown
            break
        seen = grown
    return seen, saturated


@dataclass(frozen=True)
class AlgebraicityCertificate:
    element: object
    witness: Poly
    checked: bool


def minimal_polynomial(gamma, pair, bound):
    """Least-degree, then lexicographically least f over F with a root at gamma."""
    F, K, emb = pair.small, pair.big, pair.embedding
    if gamma not in K:
        raise StructureError(f"{gamma!r} is not in {K.name}")
    for d in range(1, bound + 1):
        for coeffs in itertools.product(F.elements, repeat=d):
            for top in (e for e in F.elements if e != F.zero):
                f = Poly(F, coeffs + (top,))
                if K.zero in evaluate(f, gamma, K, via=emb):
                    return AlgebraicityCertificate(gamma, f, True)
    return None


# -- almost-fullness ----------------------------------------------------------------


def _power_sets(K, gamma, top):
    """gamma^0 .. gamma^top as subsets of K (iterated set products)."""
    powers = [frozenset([K.one])]
    for _ in range(top):
        powers.append(mprod_sets(K, [powers[-1], [gamma]]))
    return powers


def generation_degree(pair, gamma, limit=None):
    """Least n with K covered by sums a_0 + a_1 g + ... + a_n g^n, else None."""
    F, K, emb = pair.small, pair.big, pair.embedding
    f = emb.mapping
    limit = len(K.elements) if limit is None else limit
    powers = _power_sets(K, gamma, limit)
    for n in range(limit + 1):
        covered = frozenset()
        for coeffs in itertools.product(F.elements, repeat=n + 1):
            terms = [mprod_sets(K, [[f[a]], powers[i]]) for i, a in enumerate(coeffs)]
            covered = covered | msum_sets(K, terms)
        if covered == frozenset(K.elements):
            return n
    return None


def is_almost_full(pair, gamma, gen_degree=None, witness_limit=3):
    """Check (a g^p + b g^q + c g^r) g = a g^(p+1) + b g^(q+1) + c g^(r+1).

    Exhausts all a, b, c in F and distinct powers p, q, r up to n+1 where n
    is the generation degree.  Returns (verdict, witness); verdict is None
    (inconclusive) when the generation assumption cannot be established.
    """
    F, K, emb = pair.small, pair.big, pair.embedding
    f = emb.mapping
    n = generation_degree(pair, gamma) if gen_degree is None else gen_degree
    if n is None:
        return None, "generation degree not established"
    top = n + 2  # identities mention exponents up to n+2
    powers = _power_sets(K, gamma, top)
    witnesses = []
    for p, q, r in itertools.combinations(range(n + 2), 3):
        for a in F.elements:
            for b in F.elements:
                for c in F.elements:
                    terms = [mprod_sets(K, [[f[a]], powers[p]]),
                             mprod_sets(K, [[f[b]], powers[q]]),
                             mprod_sets(K, [[f[c]], powers[r]])]
                    left = mprod_sets(K, [msum_sets(K, terms), [gamma]])
                    rterms = [mprod_sets(K, [[f[a]], powers[p + 1]]),
                              mprod_sets(K, [[f[b]], powers[q + 1]]),
                              mprod_sets(K, [[f[c]], powers[r + 1]])]
                    right = msum_sets(K, rterms)
                    if left != right:
                        witnesses.append((a, b, c, p, q, r))
                        if len(witnesses) >= witness_limit:
                            return False, tuple(witnesses)
    if witnesses:
        return False, tuple(witnesses)
    return True, None


# -- algebraic extension certification ------------------------------------------------


@dataclass(frozen=True)
class ExtensionReport:
    pair_label: str
    certificates: dict
    missing: tuple
    degree_claim_bound: int
    degree_claim_holds: bool
    degree_witness: object = None

    @property
    def all_algebraic(self):
        return not self.missing


def _power_chains(K, gamma, length):
    """All selections (1, gamma, p2, ..., p_length) with p_{k+1} in p_k * gamma."""
    chains = [[K.one, gamma]]
    for _ in range(length - 1):
        grown = []
        for ch in chains:
            for nxt in K.prod_set(ch[-1], gamma):
                grown.append(ch + [nxt])
        chains = grown
    return chains


def certify_algebraic_extension(pair, bound):
    """Per-element algebraicity certificates plus the degree bound check.

    Every element of the big structure gets a minimal-polynomial search up to
    the bound; the degree claim is checked through vector-space independence
    of power chains {1, lambda, ..., lambda^bound} (selections of the
    multivalued powers), which must never be independent past the bound.
    """
    from .vspaces import extension_space, is_linearly_independent

    K = pair.big
    certificates = {}
    missing = []
    for el in K.elements:
        cert = minimal_polynomial(el, pair, bound)
        if cert is None:
            missing.append(el)
        else:
            certificates[el] = cert

    V = extension_space(pair)
    claim_holds = True
    degree_witness = None
    for el in K.elements:
        for chain in _power_chains(K, el, bound):
            vs = list(dict.fromkeys(chain))
            if len(vs) != bound + 1:
                continue  # collisions cannot witness an oversized independent set
            indep, _ = is_linearly_independent(V, vs)
            if indep:
                claim_holds = False
                degree_witness = (el, tuple(chain))
                break
        if not claim_holds:
            break

    return ExtensionReport(pair_label=f"{pair.big.name}|{pair.small.name}",
                           certificates=certificates, missing=tuple(missing),
                           degree_claim_bound=bound,
                           degree_claim_holds=claim_holds,
                           degree_witness=degree_witness)
