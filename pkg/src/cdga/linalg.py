"""Exact sparse Gaussian elimination over the rationals.

Vectors are sparse columns: dicts mapping row index -> nonzero Fraction.
Pivots are deterministic (rank computations process columns smallest
support first; pivot rows are the least row index of the residual) so
that solutions and kernel bases are reproducible run to run.
"""

from __future__ import annotations

from fractions import Fraction


def _clean(col) -> dict[int, Fraction]:
    return {r: Fraction(v) for r, v in col.items() if v != 0}


class Eliminator:
    """Incremental reduced row-echelon basis of a growing column span.

    Every pivot column is monic at its pivot row and zero at all other
    pivot rows, so reducing a column is a single pass.  When tracking is
    enabled, each pivot remembers how it is expressed as a combination of
    the originally inserted columns.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self.track = track
        self.combos: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, col, combo=None):
        """Residual of col modulo the current span.

        When combo is given it is updated in place, maintaining
        residual = original + sum(combo[j] * inserted_column_j).
        """
        col = _clean(col)
        for r in sorted(set(col) & set(self.pivots)):
            c = col.get(r)
            if not c:
                continue
            pv = self.pivots[r]
            for rr, vv in pv.items():
                nv = col.get(rr, Fraction(0)) - c * vv
                if nv:
                    col[rr] = nv
                else:
                    col.pop(rr, None)
            if combo is not None:
                pc = self.combos[r]
                for j, vv in pc.items():
                    nv = combo.get(j, Fraction(0)) - c * vv
                    if nv:
                        combo[j] = nv
                    else:
                        combo.pop(j, None)
        return col

    def insert(self, col, tag=None) -> bool:
        """Add a column to the span; returns True when the rank grew.

        tag identifies the column in tracked combinations (defaults to
        the insertion count).
        """
        combo: dict[int, Fraction] | None = {} if self.track else None
        residual = self.reduce(col, combo)
        if not residual:
            self._last_combo = combo
            return False
        r = min(residual)
        lead = residual[r]
        pv = {rr: vv / lead for rr, vv in residual.items()}
        if self.track:
            if tag is None:
                tag = len(self.combos)
            combo[tag] = combo.get(tag, Fraction(0)) + 1
            pc = {j: vv / lead for j, vv in combo.items()}
            # keep older pivots reduced against the new row
            for rr, old in list(self.pivots.items()):
                c = old.get(r)
                if not c:
                    continue
                for k, vv in pv.items():
                    nv = old.get(k, Fraction(0)) - c * vv
                    if nv:
                        old[k] = nv
                    else:
                        old.pop(k, None)
                oc = self.combos[rr]
                for k, vv in pc.items():
                    nv = oc.get(k, Fraction(0)) - c * vv
                    if nv:
                        oc[k] = nv
                    else:
                        oc.pop(k, None)
            self.combos[r] = pc
        else:
            for rr, old in list(self.pivots.items()):
                c = old.get(r)
                if not c:
                    continue
                for k, vv in pv.items():
                    nv = old.get(k, Fraction(0)) - c * vv
                    if nv:
                        old[k] = nv
                    else:
                        old.pop(k, None)
        self.pivots[r] = pv
        self._last_combo = None
        return True


def rank_of_columns(cols) -> int:
    """Rank, processing columns smallest support first (deterministic)."""
    elim = Eliminator()
    order = sorted(range(len(cols)), key=lambda i: (len(cols[i]), i))
    for i in order:
        elim.insert(cols[i])
    return elim.rank


def solve_columns(cols, rhs):
    """One exact solution x of sum(x_j * cols[j]) = rhs, or None."""
    elim = Eliminator(track=True)
    for j, col in enumerate(cols):
        elim.insert(col, tag=j)
    combo: dict[int, Fraction] = {}
    residual = elim.reduce(rhs, combo)
    if residual:
        return None
    x = [Fraction(0)] * len(cols)
    for j, v in combo.items():
        x[j] = -v
    return x


def kernel_of_columns(cols):
    """Sparse basis of {x : sum(x_j * cols[j]) = 0}, one dict per vector."""
    elim = Eliminator(track=True)
    kernel = []
    for j, col in enumerate(cols):
        if not elim.insert(col, tag=j):
            combo = dict(elim._last_combo)
            combo[j] = combo.get(j, Fraction(0)) + 1
            kernel.append({k: v for k, v in combo.items() if v != 0})
    return kernel


def independent_over(span_cols, candidates):
    """Indices of candidate columns independent modulo the span, in order."""
    elim = Eliminator()
    for col in span_cols:
        elim.insert(col)
    picked = []
    for i, col in enumerate(candidates):
        if elim.insert(col):
            picked.append(i)
    return picked
