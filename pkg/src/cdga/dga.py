"""Differentials, dg-algebra maps, augmentations, and structural checks.

A Dga is a free graded-commutative algebra on an ordered generator list
together with a differential given on generators and extended by the
graded Leibniz rule.  Validity (d^2 = 0, degree +1, triangularity) is
established by check_dga on generators only, which suffices by Leibniz
and linearity.  A Dga is treated as immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import Element, Generator, GradingSpec, as_fraction, make_generators
from .errors import MissingImage, NotASubcomplex, ObjectMismatch, UnknownGenerator


@dataclass
class Issue:
    kind: str
    subject: str
    detail: str

    def __str__(self):
        return "[%s] %s: %s" % (self.kind, self.subject, self.detail)


@dataclass
class ValidityReport:
    ok: bool
    issues: list[Issue] = field(default_factory=list)

    @staticmethod
    def failure(issues: list[Issue]) -> "ValidityReport":
        return ValidityReport(False, issues)

    @staticmethod
    def valid() -> "ValidityReport":
        return ValidityReport(True, [])

    def kinds(self) -> set[str]:
        return {i.kind for i in self.issues}

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(str(i) for i in self.issues)


class Dga:
    """Free graded-commutative algebra with a triangular differential."""

    def __init__(self, grading: GradingSpec, generators, diff=None):
        self.grading = grading
        self.generators: tuple[Generator, ...] = tuple(generators)
        self.by_name: dict[str, Generator] = {}
        seen_idx = set()
        for g in self.generators:
            if g.name in self.by_name:
                raise ValueError("duplicate generator name %r" % g.name)
            if g.order_index in seen_idx:
                raise ValueError("duplicate order index %d" % g.order_index)
            self.by_name[g.name] = g
            seen_idx.add(g.order_index)
        self.diff: dict[Generator, Element] = {}
        diff = diff or {}
        for g in self.generators:
            dv = diff.get(g, Element.zero())
            for h in dv.support_generators():
                if self.by_name.get(h.name) != h:
                    raise UnknownGenerator(
                        "differential of %r uses generator %r not in this algebra"
                        % (g.name, h.name)
                    )
            self.diff[g] = dv
        for g in diff:
            if self.by_name.get(g.name) != g:
                raise UnknownGenerator("differential assigned to foreign generator %r" % g.name)

    # -- convenience --

    @staticmethod
    def build(grading: GradingSpec, gen_specs, diff_names=None) -> "Dga":
        """Construct from (name, degree[, action]) tuples and a name-keyed diff table."""
        gens = make_generators(gen_specs)
        by_name = {g.name: g for g in gens}
        diff = {}
        for name, dv in (diff_names or {}).items():
            if name not in by_name:
                raise UnknownGenerator("differential assigned to unknown name %r" % name)
            diff[by_name[name]] = dv
        return Dga(grading, gens, diff)

    @staticmethod
    def unit(grading: Optional[GradingSpec] = None) -> "Dga":
        """The coefficient ring viewed as the algebra on no generators."""
        return Dga(grading or GradingSpec(), [])

    def generator(self, name: str) -> Generator:
        try:
            return self.by_name[name]
        except KeyError:
            raise UnknownGenerator("no generator named %r" % name) from None

    def gen(self, name: str) -> Element:
        return Element.from_generator(self.generator(name))

    def contains_element(self, elem: Element) -> bool:
        return all(self.by_name.get(g.name) == g for g in elem.support_generators())

    def reduced_degree(self, g: Generator) -> int:
        return self.grading.reduce(g.degree)

    def __eq__(self, other):
        if not isinstance(other, Dga):
            return NotImplemented
        return (
            self.grading == other.grading
            and self.generators == other.generators
            and self.diff == other.diff
        )

    def __hash__(self):
        return hash((self.grading, self.generators))

    def __repr__(self):
        return "Dga(%s)" % ", ".join(
            "%s:%d" % (g.name, g.degree) for g in self.generators
        )

    # -- the differential --

    def d(self, elem: Element) -> Element:
        return extend_differential(self, elem)


def extend_differential(alg: Dga, elem: Element) -> Element:
    """Graded Leibniz extension of the generator differential.

    d(uv) = du*v + (-1)^{|u|} u*dv on homogeneous u; for a power of a
    single even generator this collapses to d(g^e) = e*g^(e-1)*dg.
    """
    if not alg.contains_element(elem):
        raise UnknownGenerator("element does not live in this algebra")
    out = Element.zero()
    for m, c in elem.terms.items():
        sign = 1
        for i, (g, e) in enumerate(m.factors):
            dg = alg.diff[g]
            if not dg.is_zero():
                # d hits one of the e copies of g, with the Koszul sign of the prefix
                out = out + _insert_diff(m.factors, i, dg).scale(sign * c * e)
            sign *= (-1) ** (e * g.degree)
    return out


def _normalized(factors):
    from .algebra import normalize_monomial

    norm = normalize_monomial(factors)
    if norm is None:
        from .algebra import UNIT_MONOMIAL

        return UNIT_MONOMIAL, Fraction(0)
    m, s = norm
    return m, Fraction(s)


def _insert_diff(factors, i, dg: Element) -> Element:
    """Replace one factor of the i-th power block by its differential."""
    g, e = factors[i]
    left = Element.from_monomial(*_normalized(list(factors[:i]) + ([(g, e - 1)] if e > 1 else [])))
    right = Element.from_monomial(*_normalized(list(factors[i + 1:])))
    return left * dg * right


class DgaMap:
    """Map of dg-algebras given by generator images.

    Images must be homogeneous of the same reduced degree as their
    generator (or zero).  verified_* flags are caches set by the checks;
    they never affect the mathematical content.
    """

    def __init__(self, source: Dga, target: Dga, images: dict[Generator, Element]):
        self.source = source
        self.target = target
        self.images: dict[Generator, Element] = {}
        for g in source.generators:
            if g not in images:
                raise MissingImage("no image for generator %r" % g.name)
            img = images[g]
            if not target.contains_element(img):
                raise UnknownGenerator("image of %r does not live in the target" % g.name)
            if not img.is_zero():
                deg = img.homogeneous_degree()
                if deg is None or target.grading.reduce(deg) != source.grading.reduce(g.degree):
                    raise ValueError(
                        "image of %r must be homogeneous of degree %d" % (g.name, g.degree)
                    )
            self.images[g] = img
        self.verified_chain_map = False
        self.verified_pointed = False

    @staticmethod
    def identity(alg: Dga) -> "DgaMap":
        return DgaMap(alg, alg, {g: Element.from_generator(g) for g in alg.generators})

    @staticmethod
    def unit_inclusion(alg: Dga) -> "DgaMap":
        return DgaMap(Dga.unit(alg.grading), alg, {})

    def apply(self, elem: Element) -> Element:
        if not self.source.contains_element(elem):
            raise UnknownGenerator("element does not live in the source algebra")
        return elem.substitute(self.images)

    def __eq__(self, other):
        if not isinstance(other, DgaMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self):
        ims = ", ".join("%s->%s" % (g.name, v) for g, v in self.images.items())
        return "DgaMap(%s)" % ims


def compose(g: DgaMap, f: DgaMap) -> DgaMap:
    """g after f; images are computed by substitution."""
    if f.target != g.source:
        raise ObjectMismatch("target of inner map differs from source of outer map")
    return DgaMap(f.source, g.target, {v: g.apply(img) for v, img in f.images.items()})


class Augmentation:
    """A dg-algebra map to the coefficient ring, given by scalar values.

    Values may be nonzero only on generators of reduced degree 0; all
    other generators are sent to 0.
    """

    def __init__(self, owner: Dga, values: Optional[dict[Generator, Fraction]] = None):
        self.owner = owner
        self.values: dict[Generator, Fraction] = {}
        for g, v in (values or {}).items():
            if owner.by_name.get(g.name) != g:
                raise UnknownGenerator("augmentation value on foreign generator %r" % g.name)
            v = as_fraction(v)
            if v != 0:
                if owner.grading.reduce(g.degree) != 0:
                    raise ValueError(
                        "augmentation must vanish on %r (degree %d)" % (g.name, g.degree)
                    )
                self.values[g] = v

    @staticmethod
    def trivial(owner: Dga) -> "Augmentation":
        return Augmentation(owner, {})

    def value(self, g: Generator) -> Fraction:
        return self.values.get(g, Fraction(0))

    def evaluate(self, elem: Element) -> Fraction:
        """epsilon extended multiplicatively and linearly to the algebra."""
        total = Fraction(0)
        for m, c in elem.terms.items():
            v = c
            for g, e in m.factors:
                v *= self.value(g) ** e
            total += v
        return total

    def is_trivial(self) -> bool:
        return not self.values

    def shift_images(self, sign: int) -> dict[Generator, Element]:
        """Generator images of v -> v + sign*eps(v)."""
        return {
            g: Element.from_generator(g) + Element.scalar(sign * self.value(g))
            for g in self.owner.generators
        }

    def as_map(self) -> DgaMap:
        """The augmentation as a dg-map onto the algebra with no generators."""
        unit = Dga.unit(self.owner.grading)
        return DgaMap(self.owner, unit, {
            g: Element.scalar(self.value(g)) if self.value(g) != 0 else Element.zero()
            for g in self.owner.generators
        })

    def __eq__(self, other):
        if not isinstance(other, Augmentation):
            return NotImplemented
        return self.owner == other.owner and self.values == other.values

    def __repr__(self):
        if not self.values:
            return "Augmentation(trivial)"
        return "Augmentation(%s)" % ", ".join(
            "%s=%s" % (g.name, v) for g, v in self.values.items()
        )


# -- checks --

def check_dga(alg: Dga) -> ValidityReport:
    """Verify degree, triangularity and d^2 = 0 on every generator."""
    issues: list[Issue] = []
    for g in alg.generators:
        dv = alg.diff[g]
        if dv.is_zero():
            continue
        deg = dv.homogeneous_degree()
        if deg is None or alg.grading.reduce(deg) != alg.grading.reduce(g.degree + 1):
            issues.append(Issue(
                "DegreeViolation", g.name,
                "d(%s) = %s is not homogeneous of degree %d" % (g.name, dv, g.degree + 1),
            ))
            continue
        for h in dv.support_generators():
            if h.order_index >= g.order_index:
                issues.append(Issue(
                    "TriangularityViolation", g.name,
                    "d(%s) uses %s which is not strictly earlier" % (g.name, h.name),
                ))
                break
        ddv = extend_differential(alg, dv)
        if not ddv.is_zero():
            issues.append(Issue(
                "D2Violation", g.name, "d(d(%s)) = %s" % (g.name, ddv),
            ))
    return ValidityReport(not issues, issues)


def check_chain_map(f: DgaMap) -> ValidityReport:
    """Verify f(dv) = d(f(v)) on generators; sufficient by Leibniz."""
    issues: list[Issue] = []
    for g in f.source.generators:
        lhs = f.apply(f.source.diff[g])
        rhs = extend_differential(f.target, f.images[g])
        if lhs != rhs:
            issues.append(Issue(
                "ChainMapViolation", g.name,
                "f(d %s) = %s but d(f %s) = %s" % (g.name, lhs, g.name, rhs),
            ))
    report = ValidityReport(not issues, issues)
    if report.ok:
        f.verified_chain_map = True
    return report


def check_pointed(f: DgaMap, eps: Augmentation, mu: Augmentation) -> bool:
    """True iff mu(f(v)) = eps(v) for every source generator."""
    if eps.owner != f.source or mu.owner != f.target:
        raise ObjectMismatch("augmentations do not match the map endpoints")
    ok = all(mu.evaluate(f.images[g]) == eps.value(g) for g in f.source.generators)
    if ok:
        f.verified_pointed = True
    return ok


def check_augmentation(eps: Augmentation) -> bool:
    """True iff eps kills every differential (it vanishes off degree 0 by construction)."""
    alg = eps.owner
    return all(eps.evaluate(alg.diff[g]) == 0 for g in alg.generators)


def restrict(alg: Dga, prefix: Optional[int] = None, action_cap=None) -> Dga:
    """Sub-dga on a generator prefix or on generators of bounded action.

    Raises NotASubcomplex when a retained differential leaves the span of
    the retained generators.
    """
    if (prefix is None) == (action_cap is None):
        raise ValueError("specify exactly one of prefix or action_cap")
    if prefix is not None:
        kept = alg.generators[:prefix]
    else:
        action_cap = as_fraction(action_cap)
        for g in alg.generators:
            if g.action is None:
                raise ValueError("generator %r has no action; cannot cut by action" % g.name)
        kept = tuple(g for g in alg.generators if g.action <= action_cap)
    kept_set = set(kept)
    for g in kept:
        for h in alg.diff[g].support_generators():
            if h not in kept_set:
                raise NotASubcomplex(
                    "d(%s) uses %s which is outside the restriction" % (g.name, h.name)
                )
    return Dga(alg.grading, kept, {g: alg.diff[g] for g in kept})
