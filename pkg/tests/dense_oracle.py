"""Independent dense-elimination oracle used to cross-check the sparse engine.

Deliberately naive: monomial bases come from itertools over exponent
vectors and ranks from textbook dense Gaussian elimination on lists of
Fractions.  Keep this module free of imports from cdga.homology so the
two rank computations share no code path.
"""

from fractions import Fraction
from itertools import product

from cdga.algebra import Element, Monomial
from cdga.dga import extend_differential


def dense_rank(rows):
    """Row-reduce a dense list-of-lists matrix over Q and return its rank."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        m[rank] = [v / lead for v in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def oracle_basis(alg, degree, cap):
    """All monomials of the given reduced degree with word length <= cap."""
    gens = alg.generators
    ranges = [range(0, 2) if g.degree % 2 else range(0, cap + 1) for g in gens]
    out = []
    for exps in product(*ranges):
        if sum(exps) > cap:
            continue
        mono = Monomial(tuple((g, e) for g, e in zip(gens, exps) if e > 0))
        if alg.grading.reduce(mono.degree()) == alg.grading.reduce(degree):
            out.append(mono)
    out.sort(key=lambda m: m.sort_key())
    return out


def oracle_boundary_rank(alg, k, cap):
    """Rank of d from the degree-k basis to the degree-(k+1) basis."""
    dom = oracle_basis(alg, k, cap)
    images = [extend_differential(alg, Element.from_monomial(m)) for m in dom]
    cod = list(oracle_basis(alg, k + 1, cap + 1))
    seen = set(cod)
    for dm in images:
        for mm in dm.terms:
            if mm not in seen:
                seen.add(mm)
                cod.append(mm)
    index = {m: i for i, m in enumerate(cod)}
    rows = []
    for dm in images:
        row = [Fraction(0)] * len(cod)
        for mm, c in dm.terms.items():
            row[index[mm]] = c
        rows.append(row)
    # columns of d are the images; rank of the transpose equals rank
    return dense_rank(rows)


def oracle_homology(alg, d_min, d_max, cap):
    """Homology ranks per degree on the window, computed densely."""
    dims = {}
    for k in range(d_min, d_max + 1):
        dim_k = len(oracle_basis(alg, k, cap))
        rk_k = oracle_boundary_rank(alg, k, cap)
        rk_prev = oracle_boundary_rank(alg, k - 1, cap)
        dims[k] = dim_k - rk_k - rk_prev
    return dims
