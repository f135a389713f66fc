"""The algebra H(f) with exact normal-form arithmetic.

H(f) is generated by x, y, h subject to

    h*x = x*f(h),    y*h = f(h)*y,    y*x - x*y = f(h) - h,

for a polynomial f.  Monomials x^i * g(h) * y^k form a basis, so every
element is stored as a finite map (i, k) -> polynomial in h and products are
rewritten back to that normal form.  The distinguished central element is
z = x*y - h.

The only nontrivial rewriting is pushing a power of y past a power of x;
``Presentation`` memoises those middle reductions, which is what makes
repeated products cheap.  ``FreeModuleElement`` and
:func:`free_module_action` implement the faithful action on the free
commutative polynomial ring C[X, H, Y] used as an independent oracle for the
product.
"""

from __future__ import annotations

from fractions import Fraction

from .config import CONFIG
from .polys import DegreeOverflowError, Poly
from .scalars import (
    ApproxComplex,
    CyclotomicNumber,
    Scalar,
    as_scalar,
    one_like,
    zero_like,
)

_NEUTRAL = (int, Fraction)


class PresentationMismatchError(ValueError):
    """Raised when elements of different H(f) presentations are combined."""


class Presentation:
    """H(f) for a fixed defining polynomial f.

    Carries per-presentation caches: iterates f^(i), the normal forms of
    y^k x^i, and the recursive y-action on free-module monomials.
    ``middle_reductions`` counts distinct y^k x^i reductions actually
    computed; it is bounded by (k+1)*(i+1) for a product with top
    exponents k and i, which is the termination certificate for the
    rewriting recursion.
    """

    def __init__(self, f: Poly) -> None:
        if f.is_zero():
            f = Poly.constant(0, f.backend)
        self.f = f
        self._iterates: list[Poly] = [Poly.variable(f.backend)]
        self._f_powers: list[Poly] = [Poly.constant(1, f.backend)]
        self._middles: dict[tuple[int, int], dict[tuple[int, int], Poly]] = {}
        self._y_actions: dict[tuple[int, int, int], dict[tuple[int, int, int], Scalar]] = {}
        self.middle_reductions = 0

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self is other or self.f == other.f

    __hash__ = None

    def __repr__(self) -> str:
        return f"Presentation(f = {self.f})"

    def f_iterate(self, i: int) -> Poly:
        """f^(i), the i-fold self-composition (f^(0) = h)."""
        while len(self._iterates) <= i:
            prev = self._iterates[-1]
            d, pd = self.f.degree, prev.degree
            if d > 0 and pd > 0 and d * pd > CONFIG.max_compose_degree:
                raise DegreeOverflowError(
                    f"f^({len(self._iterates)}) would have degree {d * pd}; "
                    "raise CONFIG.max_compose_degree to allow it"
                )
            self._iterates.append(self.f.compose(prev))
        return self._iterates[i]

    def f_power(self, j: int) -> Poly:
        """f(h)**j as a polynomial (plain power, not composition)."""
        while len(self._f_powers) <= j:
            self._f_powers.append(self._f_powers[-1] * self.f)
        return self._f_powers[j]

    # -- element constructors ---------------------------------------------

    def zero(self) -> "GHAElement":
        return GHAElement(self, {})

    def one(self) -> "GHAElement":
        return GHAElement(self, {(0, 0): Poly.constant(1, self.f.backend)})

    def scalar(self, s) -> "GHAElement":
        s = as_scalar(s, self.f.backend)
        return GHAElement(self, {(0, 0): Poly([s])})

    def from_poly(self, g: Poly) -> "GHAElement":
        """The element g(h)."""
        return GHAElement(self, {(0, 0): g})

    def generator(self, name: str) -> "GHAElement":
        one = Poly.constant(1, self.f.backend)
        if name == "x":
            return GHAElement(self, {(1, 0): one})
        if name == "y":
            return GHAElement(self, {(0, 1): one})
        if name == "h":
            return GHAElement(self, {(0, 0): Poly.variable(self.f.backend)})
        if name == "z":
            # z = x*y - h, central for every f
            return GHAElement(
                self, {(1, 1): one, (0, 0): -Poly.variable(self.f.backend)}
            )
        raise ValueError(f"unknown generator {name!r} (expected x, y, h, or z)")

    def monomial(self, i: int, g: Poly, k: int) -> "GHAElement":
        """x^i * g(h) * y^k."""
        if i < 0 or k < 0:
            raise ValueError("exponents must be >= 0")
        if g.is_zero():
            return self.zero()
        return GHAElement(self, {(i, k): g})

    # -- the rewriting core -------------------------------------------------

    def _middle(self, k: int, i: int) -> dict[tuple[int, int], Poly]:
        """Normal form of y^k x^i as a map (a, b) -> polynomial.

        Recurrence: y^k x^i = (y^(k-1) x)(y x^(i-1)) + y^(k-1) x^(i-1) q(h)
        with q = (f - h) o f^(i-1), using y*x = x*y + f(h) - h once.  Both
        pieces only involve middles with smaller (k, i), so filling the
        (k+1) x (i+1) rectangle bottom-up terminates after at most
        (k+1)*(i+1) reductions; the memo persists on the presentation.
        """
        hit = self._middles.get((k, i))
        if hit is not None:
            return hit
        for kk in range(k + 1):
            for ii in range(i + 1):
                if (kk, ii) not in self._middles:
                    self._compute_middle(kk, ii)
        return self._middles[(k, i)]

    def _compute_middle(self, k: int, i: int) -> None:
        self.middle_reductions += 1
        one = Poly.constant(1, self.f.backend)
        if k == 0:
            out = {(i, 0): one}
        elif i == 0:
            out = {(0, k): one}
        else:
            out = self._mul_terms(self._middles[(k - 1, 1)], self._middles[(1, i - 1)])
            q = (self.f - Poly.variable(self.f.backend)).compose(self.f_iterate(i - 1))
            for (a, b), p in self._middles[(k - 1, i - 1)].items():
                extra = p * q.compose(self.f_iterate(b))
                _accumulate(out, (a, b), extra)
        self._middles[(k, i)] = {ik: g for ik, g in out.items() if not g.is_zero()}

    def _mul_terms(
        self,
        t1: dict[tuple[int, int], Poly],
        t2: dict[tuple[int, int], Poly],
    ) -> dict[tuple[int, int], Poly]:
        """Product of two normal forms, returned as a normal form.

        For x^i1 g1 y^k1 * x^i2 g2 y^k2, substitute the normal form of the
        middle y^k1 x^i2 = sum x^a p y^b and use the commutation rules
        g(h) x^a = x^a g(f^(a)(h)) and y^b g(h) = g(f^(b)(h)) y^b:

            x^(i1+a) * g1(f^(a)) p g2(f^(b)) * y^(b+k2).
        """
        out: dict[tuple[int, int], Poly] = {}
        for (i1, k1), g1 in t1.items():
            for (i2, k2), g2 in t2.items():
                for (a, b), p in self._middle(k1, i2).items():
                    left = g1 if a == 0 else g1.compose(self.f_iterate(a))
                    right = g2 if b == 0 else g2.compose(self.f_iterate(b))
                    _accumulate(out, (i1 + a, b + k2), left * p * right)
        return {ik: g for ik, g in out.items() if not g.is_zero()}

    # -- free-module oracle ---------------------------------------------------

    def _y_monomial_action(self, i: int, j: int, k: int) -> dict[tuple[int, int, int], Scalar]:
        """y acting on the free-module basis vector X^i H^j Y^k.

        On X-free vectors y multiplies by f(H)^j and raises the Y power;
        otherwise one x is peeled off via y = (x*y + f(h) - h) x^(-1),
        recursing on the smaller X power.
        """
        key = (i, j, k)
        hit = self._y_actions.get(key)
        if hit is not None:
            return hit
        one = as_scalar(1, self.f.backend)
        if i == 0:
            out = {
                (0, m, k + 1): c
                for m, c in enumerate(self.f_power(j).coeffs)
                if not _is_zero_scalar(c)
            }
        else:
            inner = {(i - 1, j, k): one}
            moved = _free_y(self, inner)
            moved = _free_x(moved)
            plus = _free_poly(self, self.f - Poly.variable(self.f.backend), inner)
            out = dict(moved)
            for mon, c in plus.items():
                cur = out.get(mon)
                tot = c if cur is None else cur + c
                if _is_zero_scalar(tot):
                    out.pop(mon, None)
                else:
                    out[mon] = tot
        self._y_actions[key] = out
        return out


def _is_zero_scalar(s: Scalar) -> bool:
    return s == zero_like(s)


def _accumulate(terms: dict, key, g: Poly) -> None:
    cur = terms.get(key)
    terms[key] = g if cur is None else cur + g


class GHAElement:
    """An element of H(f) in normal form: sum of x^i * g_ik(h) * y^k.

    Instances are immutable by convention; arithmetic returns new elements.
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: dict[tuple[int, int], Poly]) -> None:
        self.presentation = presentation
        self.terms = {ik: g for ik, g in terms.items() if not g.is_zero()}

    def _check(self, other: "GHAElement") -> None:
        if self.presentation is not other.presentation and self.presentation != other.presentation:
            raise PresentationMismatchError("elements belong to different H(f)")

    def _coerce(self, other):
        if isinstance(other, GHAElement):
            return other
        if isinstance(other, (CyclotomicNumber, ApproxComplex) + _NEUTRAL):
            return self.presentation.scalar(other)
        if isinstance(other, Poly):
            return self.presentation.from_poly(other)
        return None

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for ik, g in other.terms.items():
            _accumulate(out, ik, g)
        return GHAElement(self.presentation, out)

    __radd__ = __add__

    def __neg__(self):
        return GHAElement(self.presentation, {ik: -g for ik, g in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, s) -> "GHAElement":
        s = as_scalar(s, self.presentation.f.backend)
        return GHAElement(self.presentation, {ik: g * s for ik, g in self.terms.items()})

    # -- multiplication -----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, _NEUTRAL + (CyclotomicNumber, ApproxComplex)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = self.presentation._mul_terms(self.terms, other.terms)
        return GHAElement(self.presentation, out)

    def __rmul__(self, other):
        if isinstance(other, _NEUTRAL + (CyclotomicNumber, ApproxComplex)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.presentation.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.presentation is not other.presentation and self.presentation != other.presentation:
            return False
        keys = set(self.terms) | set(other.terms)
        zero = Poly([])
        return all(self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    # -- structure queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> tuple[int, int]:
        """The lexicographically largest (x-exponent, y-exponent) pair.

        The polynomial part does not count: with this grading the degree
        of a product is the componentwise sum of the degrees whenever f is
        nonconstant (composition with a nonconstant f cannot kill a
        leading coefficient).
        """
        if self.is_zero():
            raise ValueError("degree of the zero element is undefined")
        return max(self.terms)

    def leading_term(self) -> tuple[int, int, Poly]:
        """(n, m, g) for the term x^n g(h) y^m of highest (x-degree, y-degree).

        Here the order is by (i, k) lexicographically; g keeps its full
        polynomial part.
        """
        if self.is_zero():
            raise ValueError("leading term of the zero element is undefined")
        i, k = max(self.terms)
        return i, k, self.terms[(i, k)]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for (i, k) in sorted(self.terms, reverse=True):
            g = self.terms[(i, k)]
            pieces.extend(_term_strings(i, g, k))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"GHAElement({self})"


def _scalar_atom(s: Scalar) -> str:
    """Scalar rendered for use as a product factor (parenthesised if composite)."""
    text = str(s)
    bare = text.replace("/", "").replace(".", "", 1)
    if bare.isdigit() or (text.replace("/", "").isdigit()):
        return text
    try:
        float(text)
        if not text.startswith("-"):
            return text
    except ValueError:
        pass
    return f"({text})"


def _term_strings(i: int, g: Poly, k: int) -> list[str]:
    """Render x^i * g(h) * y^k as one or more canonical summands."""
    xpart = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
    ypart = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
    nonzero = [(j, c) for j, c in enumerate(g.coeffs) if not _is_zero_scalar(c)]
    if i == 0 and k == 0:
        # splice the polynomial into the sum directly
        out = []
        for j, c in sorted(nonzero, reverse=True):
            mono = "" if j == 0 else ("h" if j == 1 else f"h^{j}")
            if not mono:
                out.append(_scalar_atom(c))
            elif c == one_like(c):
                out.append(mono)
            else:
                out.append(f"{_scalar_atom(c)}*{mono}")
        return out
    if len(nonzero) == 1:
        j, c = nonzero[0]
        mono = "" if j == 0 else ("h" if j == 1 else f"h^{j}")
        parts = []
        if xpart:
            parts.append(xpart)
        if c != one_like(c):
            parts.append(_scalar_atom(c))
        if mono:
            parts.append(mono)
        if ypart:
            parts.append(ypart)
        if not parts:
            parts = ["1"]
        return ["*".join(parts)]
    return ["*".join(p for p in (xpart, f"({g})", ypart) if p)]


# ---------------------------------------------------------------------------
# derived operations
# ---------------------------------------------------------------------------


def commutator(a: GHAElement, b: GHAElement) -> GHAElement:
    return a * b - b * a


def is_central(a: GHAElement) -> bool:
    """True when a commutes with the generators x, h, y."""
    p = a.presentation
    return all(
        commutator(a, p.generator(g)).is_zero() for g in ("x", "h", "y")
    )


# ---------------------------------------------------------------------------
# the free-module oracle
# ---------------------------------------------------------------------------


class FreeModuleElement:
    """A vector in the free polynomial module C[X, H, Y].

    Stored as a map (i, j, k) -> scalar for the monomial X^i H^j Y^k.  The
    algebra acts through :func:`free_module_action`; the action of a product
    must match the composite action, which is what the oracle checks.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], Scalar] | None = None) -> None:
        self.terms = {m: c for m, c in (terms or {}).items() if not _is_zero_scalar(c)}

    @classmethod
    def one(cls) -> "FreeModuleElement":
        from .scalars import exact

        return cls({(0, 0, 0): exact(1)})

    @classmethod
    def basis(cls, i: int, j: int, k: int, backend: str = "exact") -> "FreeModuleElement":
        return cls({(i, j, k): as_scalar(1, backend)})

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            tot = c if cur is None else cur + c
            if _is_zero_scalar(tot):
                out.pop(m, None)
            else:
                out[m] = tot
        return FreeModuleElement(out)

    def __neg__(self) -> "FreeModuleElement":
        return FreeModuleElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        return self + (-other)

    def scale(self, s: Scalar) -> "FreeModuleElement":
        return FreeModuleElement({m: c * s for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a, b = self.terms.get(k), other.terms.get(k)
            if a is None:
                a = zero_like(b)
            if b is None:
                b = zero_like(a)
            if a != b:
                return False
        return True

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        inner = ", ".join(f"X^{i} H^{j} Y^{k}: {c}" for (i, j, k), c in sorted(self.terms.items()))
        return f"FreeModuleElement({{{inner}}})"


def _free_x(v: FreeModuleElement | dict) -> dict:
    terms = v.terms if isinstance(v, FreeModuleElement) else v
    return {(i + 1, j, k): c for (i, j, k), c in terms.items()}


def _free_h(p: Presentation, v: FreeModuleElement | dict) -> dict:
    # h . X^i H^j Y^k = X^i f^(i)(H) H^j Y^k
    terms = v.terms if isinstance(v, FreeModuleElement) else v
    out: dict = {}
    for (i, j, k), c in terms.items():
        for m, coef in enumerate(p.f_iterate(i).coeffs):
            if _is_zero_scalar(coef):
                continue
            key = (i, j + m, k)
            cur = out.get(key)
            tot = c * coef if cur is None else cur + c * coef
            if _is_zero_scalar(tot):
                out.pop(key, None)
            else:
                out[key] = tot
    return out


def _free_poly(p: Presentation, g: Poly, v: FreeModuleElement | dict) -> dict:
    # g(h) acting, by Horner in the h-action
    terms = dict(v.terms if isinstance(v, FreeModuleElement) else v)
    acc: dict = {}
    for c in reversed(g.coeffs):
        acc = _free_h(p, acc)
        if not _is_zero_scalar(c):
            for m, cv in terms.items():
                cur = acc.get(m)
                tot = cv * c if cur is None else cur + cv * c
                if _is_zero_scalar(tot):
                    acc.pop(m, None)
                else:
                    acc[m] = tot
    return acc


def _free_y(p: Presentation, v: FreeModuleElement | dict) -> dict:
    terms = v.terms if isinstance(v, FreeModuleElement) else v
    out: dict = {}
    for (i, j, k), c in terms.items():
        for m, coef in p._y_monomial_action(i, j, k).items():
            cur = out.get(m)
            tot = c * coef if cur is None else cur + c * coef
            if _is_zero_scalar(tot):
                out.pop(m, None)
            else:
                out[m] = tot
    return out


def free_module_action(a: GHAElement, v: FreeModuleElement) -> FreeModuleElement:
    """Act by a on the free-module vector v.

    Each normal-form term x^i g(h) y^k acts as the composite of k y-actions,
    then g(h), then i x-shifts; summing over terms gives the action of a.
    """
    p = a.presentation
    total = FreeModuleElement()
    for (i, k), g in a.terms.items():
        cur = v.terms
        for _ in range(k):
            cur = _free_y(p, cur)
        cur = _free_poly(p, g, cur)
        for _ in range(i):
            cur = _free_x(cur)
        total = total + FreeModuleElement(cur)
    return total
