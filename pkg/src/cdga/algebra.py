"""Sign-correct arithmetic in free graded-commutative algebras over exact rationals.

Elements are sparse rational linear combinations of sign-normalized
monomials.  All arithmetic is exact (fractions.Fraction); there is no
floating point anywhere in this package.  The grading convention is
cohomological throughout: differentials raise degree by +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import MissingImage, MixedAlgebras


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class GradingSpec:
    """Grading group: the integers (modulus 0) or a cyclic group Z/2m.

    Convention marker: cohomological, differentials have degree +1.
    A cyclic modulus must be even so that parity (and hence every Koszul
    sign) is well defined.
    """

    modulus: int = 0

    CONVENTION = "cohomological"
    DIFFERENTIAL_DEGREE = +1

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError("grading modulus must be 0 (integers) or an even number >= 2")
        if self.modulus and self.modulus % 2 != 0:
            raise ValueError("cyclic grading modulus must be even, got %d" % self.modulus)

    @property
    def is_integer(self) -> bool:
        return self.modulus == 0

    def reduce(self, degree: int) -> int:
        return degree if self.modulus == 0 else degree % self.modulus

    def degrees_in_window(self, d_min: int, d_max: int) -> list[int]:
        """Distinct reduced degrees represented by the integer window."""
        return sorted({self.reduce(d) for d in range(d_min, d_max + 1)})


@dataclass(frozen=True)
class Generator:
    """A free algebra generator.

    order_index is the position in the well-order used for triangularity;
    it must be unique within an algebra, as must the name.  action and
    h1_label are carried for the contact front end and ignored by the
    core arithmetic.
    """

    name: str
    degree: int
    order_index: int
    action: Optional[Fraction] = None
    h1_label: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.action is not None and self.action < 0:
            raise ValueError("generator action must be nonnegative")

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __repr__(self):
        return "Generator(%r, deg=%d, idx=%d)" % (self.name, self.degree, self.order_index)


def make_generators(specs, start_index: int = 0) -> list[Generator]:
    """Build generators from (name, degree) or (name, degree, action) tuples."""
    gens = []
    for i, spec in enumerate(specs):
        name, degree = spec[0], spec[1]
        action = as_fraction(spec[2]) if len(spec) > 2 and spec[2] is not None else None
        gens.append(Generator(name, degree, start_index + i, action))
    return gens


@dataclass(frozen=True)
class Monomial:
    """A sorted word of generator powers.

    factors are sorted by order_index; exponents are >= 1 and odd-degree
    generators appear with exponent exactly 1 (odd squares vanish over Q).
    The empty monomial is the unit.
    """

    factors: tuple[tuple[Generator, int], ...] = ()

    def degree(self) -> int:
        return sum(e * g.degree for g, e in self.factors)

    def word_length(self) -> int:
        return sum(e for _, e in self.factors)

    def parity(self) -> int:
        return self.degree() % 2

    def generators(self):
        return tuple(g for g, _ in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def sort_key(self):
        return (self.word_length(), tuple((g.order_index, e) for g, e in self.factors))

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for g, e in self.factors:
            parts.append(g.name if e == 1 else "%s^%d" % (g.name, e))
        return "*".join(parts)


UNIT_MONOMIAL = Monomial()


def normalize_monomial(factors: Iterable[tuple[Generator, int]]):
    """Sort an unordered factor list into Koszul normal form.

    Returns (Monomial, sign) with sign in {+1, -1}, or None when the word
    vanishes (an odd generator squared).  Exponent-zero factors are
    dropped; negative exponents are rejected.
    """
    blocks: list[tuple[Generator, int]] = []
    for g, e in factors:
        if e < 0:
            raise ValueError("negative exponent on %s" % g.name)
        if e == 0:
            continue
        if g.parity == 1 and e > 1:
            return None
        blocks.append((g, e))

    # Insertion sort counting transpositions of odd blocks; a block (g, e)
    # is odd exactly when e*|g| is odd.
    sign = 1
    for i in range(1, len(blocks)):
        j = i
        while j > 0 and blocks[j - 1][0].order_index > blocks[j][0].order_index:
            a, b = blocks[j - 1], blocks[j]
            if (a[1] * a[0].degree) % 2 == 1 and (b[1] * b[0].degree) % 2 == 1:
                sign = -sign
            blocks[j - 1], blocks[j] = b, a
            j -= 1

    merged: list[tuple[Generator, int]] = []
    for g, e in blocks:
        if merged and merged[-1][0].order_index == g.order_index:
            prev_g, prev_e = merged[-1]
            if prev_g != g:
                raise MixedAlgebras(
                    "generators %r and %r share order index %d but differ"
                    % (prev_g.name, g.name, g.order_index)
                )
            if g.parity == 1:
                return None
            merged[-1] = (g, prev_e + e)
        else:
            if merged and merged[-1][0].name == g.name:
                raise MixedAlgebras("two distinct generators named %r in one word" % g.name)
            merged.append((g, e))
    return Monomial(tuple(merged)), sign


class Element:
    """Sparse rational linear combination of normalized monomials.

    Immutable by convention: no method mutates self, and the terms table
    must not be modified after construction.  Values may be shared freely
    between threads.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[Monomial, Fraction]] = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = as_fraction(c)
                if c != 0:
                    clean[m] = c
        self.terms = clean

    # -- constructors --

    @staticmethod
    def zero() -> "Element":
        return Element()

    @staticmethod
    def scalar(c) -> "Element":
        return Element({UNIT_MONOMIAL: as_fraction(c)})

    @staticmethod
    def one() -> "Element":
        return Element.scalar(1)

    @staticmethod
    def from_generator(g: Generator) -> "Element":
        return Element({Monomial(((g, 1),)): Fraction(1)})

    @staticmethod
    def from_monomial(m: Monomial, c=1) -> "Element":
        return Element({m: as_fraction(c)})

    # -- predicates & views --

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(UNIT_MONOMIAL, Fraction(0))

    def without_constant(self) -> "Element":
        if UNIT_MONOMIAL not in self.terms:
            return self
        t = dict(self.terms)
        del t[UNIT_MONOMIAL]
        return Element(t)

    def support_generators(self) -> set[Generator]:
        out: set[Generator] = set()
        for m in self.terms:
            out.update(m.generators())
        return out

    def homogeneous_degree(self) -> Optional[int]:
        """Raw (unreduced) degree when all monomials agree; None otherwise or for 0."""
        degs = {m.degree() for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, grading: Optional[GradingSpec] = None) -> bool:
        if not self.terms:
            return True
        if grading is None:
            return len({m.degree() for m in self.terms}) == 1
        return len({grading.reduce(m.degree()) for m in self.terms}) == 1

    def word_lengths(self) -> set[int]:
        return {m.word_length() for m in self.terms}

    def word_length_part(self, k: int) -> "Element":
        return Element({m: c for m, c in self.terms.items() if m.word_length() == k})

    # -- arithmetic --

    def __add__(self, other: "Element") -> "Element":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return Element(t)

    def __sub__(self, other: "Element") -> "Element":
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) - c
        return Element(t)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "Element":
        c = as_fraction(c)
        if c == 0:
            return Element()
        return Element({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        t: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                norm = normalize_monomial(m1.factors + m2.factors)
                if norm is None:
                    continue
                m, sign = norm
                t[m] = t.get(m, Fraction(0)) + sign * c1 * c2
        return Element(t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = Element.one()
        for _ in range(n):
            out = out * self
        return out

    def substitute(self, images: dict[Generator, "Element"]) -> "Element":
        """Apply the unique algebra-map extension of generator images."""
        out = Element.zero()
        for m, c in self.terms.items():
            val = Element.scalar(c)
            for g, e in m.factors:
                if g not in images:
                    raise MissingImage("no image supplied for generator %r" % g.name)
                val = val * (images[g] ** e)
            out = out + val
        return out

    # -- comparison & display --

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m.is_unit():
                body = str(abs(c))
            elif abs(c) == 1:
                body = str(m)
            else:
                body = "%s*%s" % (abs(c), m)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Element(%s)" % str(self)
