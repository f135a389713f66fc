"""Univariate polynomials over either scalar backend, plus root machinery.

The polynomial variable is written ``h`` throughout (it always stands for the
Cartan-type generator of the algebra).  Coefficients are stored densely in
ascending order and live entirely in one backend; neutral int/Fraction
literals lift to whichever backend the other coefficients use.

Root finding comes in two flavours:

* :func:`roots` finds all complex roots with multiplicity, by simultaneous
  Aberth-Ehrlich iteration followed by Newton polishing.
* :func:`exact_roots` finds the roots lying in Q(zeta_N), by recognising
  numeric roots as field elements and verifying by exact division.

:func:`periodic_points` builds on both to enumerate the exact-period-n
orbits of the self-map h -> f(h).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import CONFIG
from .scalars import (
    ApproxComplex,
    BackendMismatchError,
    CyclotomicNumber,
    Scalar,
    approx,
    backend_of,
    divisors,
    euler_phi,
    exact,
    one_like,
    zero_like,
    zeta,
)

_NEUTRAL = (int, Fraction)


class DegreeOverflowError(ValueError):
    """Polynomial iteration exceeded the configured degree guard."""


class RootFindingError(RuntimeError):
    """The numeric root finder failed to converge; partial roots attached."""

    def __init__(self, message: str, partial=None) -> None:
        super().__init__(message)
        self.partial = partial or []


class ContinuumOfOrbitsError(ValueError):
    """Every point is periodic, so orbits form a continuum, not a list."""


def _lift_all(coeffs) -> tuple[tuple[Scalar, ...], str]:
    coeffs = list(coeffs)
    backend = None
    for c in coeffs:
        if isinstance(c, CyclotomicNumber):
            b = "exact"
        elif isinstance(c, ApproxComplex):
            b = "approx"
        elif isinstance(c, (float, complex)):
            b = "approx"
        elif isinstance(c, _NEUTRAL):
            continue
        else:
            raise TypeError(f"bad polynomial coefficient {c!r}")
        if backend is None:
            backend = b
        elif backend != b:
            raise BackendMismatchError("polynomial mixes exact and approximate coefficients")
    backend = backend or "exact"
    lifted = []
    for c in coeffs:
        if isinstance(c, (CyclotomicNumber, ApproxComplex)):
            lifted.append(c)
        elif backend == "exact":
            lifted.append(exact(c))
        else:
            lifted.append(approx(complex(c)))
    while lifted and _strictly_zero(lifted[-1]):
        lifted.pop()
    return tuple(lifted), backend


def _strictly_zero(s: Scalar) -> bool:
    # trailing-coefficient trim must not change degree semantics, so the
    # approximate backend only trims coefficients that are exactly 0.0
    if isinstance(s, CyclotomicNumber):
        return s.is_zero()
    return s.value == 0


class Poly:
    """Dense univariate polynomial in h over one scalar backend.

    >>> Poly([1, 2]) * Poly([1, 2])
    Poly(4*h^2 + 4*h + 1)
    >>> Poly([0, 1]).compose(Poly([-3, 0, 1]))
    Poly(h^2 - 3)
    """

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs=()) -> None:
        lifted, backend = _lift_all(coeffs)
        object.__setattr__(self, "coeffs", lifted)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, s, backend: str = "exact") -> "Poly":
        from .scalars import as_scalar

        return cls([as_scalar(s, backend)])

    @classmethod
    def variable(cls, backend: str = "exact") -> "Poly":
        one = exact(1) if backend == "exact" else approx(1)
        return cls([zero_like(one), one])

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Scalar:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return exact(0) if self.backend == "exact" else approx(0)

    def is_identity(self) -> bool:
        """True when this polynomial is exactly h."""
        return (
            len(self.coeffs) == 2
            and self.coeffs[1] == 1
            and self.coeffs[0] == zero_like(self.coeffs[0])
        )

    def _zero(self) -> Scalar:
        return exact(0) if self.backend == "exact" else approx(0)

    def _one(self) -> Scalar:
        return exact(1) if self.backend == "exact" else approx(1)

    def _check(self, other: "Poly") -> None:
        if not self.is_zero() and not other.is_zero() and self.backend != other.backend:
            raise BackendMismatchError("polynomials use different scalar backends")

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (CyclotomicNumber, ApproxComplex) + _NEUTRAL):
            return Poly([other]) if not isinstance(other, _NEUTRAL) else Poly.constant(other, self.backend)
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

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

    def __mul__(self, other):
        if isinstance(other, (CyclotomicNumber, ApproxComplex)):
            return Poly([c * other for c in self.coeffs])
        if isinstance(other, _NEUTRAL):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [self._zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly([self._one()])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead_inv = one_like(other.leading) / other.leading
        q = [self._zero()] * max(0, len(rem) - dd)
        for i in range(len(rem) - dd - 1, -1, -1):
            c = rem[i + dd] * lead_inv
            q[i] = c
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - c * b
        return Poly(q), Poly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() != other.is_zero():
            # compare an all-but-trimmed approx poly against zero coefficientwise
            longer = self if not self.is_zero() else other
            return all(c == zero_like(c) for c in longer.coeffs)
        if not self.is_zero() and self.backend != other.backend:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(k) == other.coefficient(k) for k in range(n))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    # -- evaluation and composition ------------------------------------------

    def evaluate(self, point: Scalar) -> Scalar:
        from .scalars import as_scalar

        point = as_scalar(point, self.backend)
        if backend_of(point) != self.backend and not self.is_zero():
            raise BackendMismatchError("evaluation point uses the other backend")
        acc = zero_like(point)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(h)), by Horner over polynomials."""
        self._check(inner)
        if (
            self.degree > 0
            and inner.degree > 1
            and self.degree * inner.degree > CONFIG.max_compose_degree
        ):
            raise DegreeOverflowError(
                f"composition would have degree {self.degree * inner.degree}; "
                "raise CONFIG.max_compose_degree to allow it"
            )
        acc = Poly([])
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def approx(self) -> "Poly":
        if self.backend == "approx":
            return self
        return Poly([c.approx() for c in self.coeffs])

    def embed_coeffs(self) -> list[complex]:
        return [c.embed() for c in self.coeffs]

    def conductor(self) -> int:
        """lcm of the coefficient conductors (exact backend only)."""
        if self.backend != "exact":
            raise BackendMismatchError("conductor is an exact-backend notion")
        out = 1
        for c in self.coeffs:
            out = math.lcm(out, c.conductor)
        return out

    # -- canonical text form ---------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k] if k < len(self.coeffs) else None
            if c is None or c == zero_like(c):
                continue
            body, negated = _coeff_body(c, k)
            if not pieces:
                pieces.append(("-" if negated else "") + body)
            else:
                pieces.append(("- " if negated else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _scalar_sign_split(c: Scalar) -> tuple[bool, Scalar | None]:
    """(is_negative, |c|) when c has a usable sign, else (False, None)."""
    if isinstance(c, CyclotomicNumber) and c.is_rational():
        q = c.as_rational()
        return (q < 0, exact(-q) if q < 0 else c)
    if isinstance(c, ApproxComplex) and c.value.imag == 0:
        v = c.value.real
        return (v < 0, approx(-v) if v < 0 else c)
    return False, None


def _coeff_body(c: Scalar, k: int) -> tuple[str, bool]:
    """Render c*h^k; returns (text, was_negated)."""
    mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
    negated, mag = _scalar_sign_split(c)
    show = mag if negated else c
    if show is None:
        # no clean sign: keep the full scalar, parenthesised if composite
        text = str(c)
        text = f"({text})" if any(ch in text for ch in " +-*/") and k > 0 else text
        return (f"{text}*{mono}" if mono else text), False
    if not mono:
        return str(show), negated
    if show == 1:
        return mono, negated
    text = str(show)
    if any(ch in text for ch in " +*/"):
        text = f"({text})"
    return f"{text}*{mono}", negated


def iterate(f: Poly, i: int) -> Poly:
    """i-fold composition of f with itself; f^(0) is the identity h.

    Degree grows like deg(f)**i, so growth past
    CONFIG.max_compose_degree raises DegreeOverflowError.
    """
    if i < 0:
        raise ValueError("iteration count must be >= 0")
    out = Poly.variable(f.backend)
    if f.degree >= 2 and i > 0 and f.degree**i > CONFIG.max_compose_degree:
        raise DegreeOverflowError(
            f"deg(f)^i = {f.degree}^{i} exceeds the degree guard {CONFIG.max_compose_degree}"
        )
    for _ in range(i):
        out = f.compose(out)
        if out.degree > CONFIG.max_compose_degree:
            raise DegreeOverflowError(
                f"iterated degree {out.degree} exceeds the guard {CONFIG.max_compose_degree}"
            )
    return out


# ---------------------------------------------------------------------------
# numeric root finding
# ---------------------------------------------------------------------------


def _aberth(cs: list[complex]) -> list[complex]:
    """All roots of the polynomial with ascending coefficients cs (deg >= 1)."""
    n = len(cs) - 1
    lead = cs[-1]
    mon = [c / lead for c in cs]
    norm = max(abs(c) for c in cs)

    def val(z: complex) -> complex:
        acc = 0j
        for c in reversed(mon):
            acc = acc * z + c
        return acc

    def dval(z: complex) -> complex:
        acc = 0j
        for k in range(n, 0, -1):
            acc = acc * z + k * mon[k]
        return acc

    radius = 1.0 + max(abs(c) for c in mon[:-1]) if n else 1.0
    zs = [
        0.7 * radius * cmath.exp(2j * math.pi * (j + 0.37) / n) + 0.1 + 0.05j
        for j in range(n)
    ]
    target = CONFIG.tol * (1 + norm) / max(1.0, abs(lead))
    for _ in range(CONFIG.root_max_iter):
        done = True
        for j in range(n):
            p = val(zs[j])
            if abs(p) <= target:
                continue
            done = False
            dp = dval(zs[j])
            if dp == 0:
                zs[j] += (0.01 + 0.007j) * (1 + abs(zs[j]))
                continue
            w = p / dp
            s = 0j
            for l in range(n):
                if l != j:
                    diff = zs[j] - zs[l]
                    if diff == 0:
                        diff = 1e-12 * (1 + abs(zs[j]))
                    s += 1 / diff
            denom = 1 - w * s
            zs[j] -= w if denom == 0 else w / denom
        if done:
            break
    else:
        residual = max(abs(val(z)) for z in zs)
        if residual > target:
            raise RootFindingError(
                f"root finder did not converge (residual {residual:.3g})", partial=zs
            )
    # Newton polish: a few extra steps while the residual keeps improving
    for j in range(n):
        z, best = zs[j], abs(val(zs[j]))
        for _ in range(4):
            dp = dval(z)
            if dp == 0:
                break
            z2 = z - val(z) / dp
            r2 = abs(val(z2))
            if r2 < best:
                z, best = z2, r2
            else:
                break
        zs[j] = z
    return sorted(zs, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def _refine_multiples(cs: list[complex], zs: list[complex]) -> list[complex]:
    """Collapse loose root clusters to sharp repeated roots.

    Aberth leaves an m-fold root as m values spread like residual**(1/m).
    Grouping those and running the multiplicity-aware Newton step
    z -= m*p(z)/p'(z) from the centroid restores fast convergence, so the
    cluster can be reported as m equal, accurate copies.
    """
    n = len(cs) - 1

    def val(z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    def dval(z):
        acc = 0j
        for k in range(n, 0, -1):
            acc = acc * z + k * cs[k]
        return acc

    scale = 1 + max(abs(z) for z in zs)
    radius = 1e-3 * scale
    groups: list[list[complex]] = []
    for z in sorted(zs, key=lambda w: (w.real, w.imag)):
        for g in groups:
            if abs(z - g[0]) <= radius:
                g.append(z)
                break
        else:
            groups.append([z])
    out: list[complex] = []
    for g in groups:
        if len(g) == 1:
            out.append(g[0])
            continue
        m = len(g)
        c = sum(g) / m
        z = c
        for _ in range(60):
            dp = dval(z)
            if dp == 0:
                break
            step = m * val(z) / dp
            z -= step
            if abs(step) <= 1e-15 * scale:
                break
        # keep the refinement only if it stayed inside the cluster
        if abs(z - c) <= 2 * radius:
            out.extend([z] * m)
        else:
            out.extend(g)
    return out


def roots(p: Poly) -> list[ApproxComplex]:
    """All complex roots of p with multiplicity (approximate values).

    An m-fold root is reported as m equal copies; its residual, not the
    spacing of the raw iteration, is what meets the tolerance.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("root finding needs a nonconstant polynomial")
    cs = p.embed_coeffs()
    out: list[complex] = []
    while len(cs) > 1 and cs[0] == 0:
        out.append(0j)
        cs = cs[1:]
    if len(cs) == 2:
        out.append(-cs[0] / cs[1])
    elif len(cs) > 2:
        out.extend(_refine_multiples(cs, _aberth(cs)))
    out.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return [approx(z) for z in out]


# ---------------------------------------------------------------------------
# exact roots in Q(zeta_N)
# ---------------------------------------------------------------------------


def _rational_candidates(x: float, eps: float):
    seen = set()
    for dmax in (1, 8, 64, 1024, 10**6):
        f = Fraction(x).limit_denominator(dmax)
        if abs(float(f) - x) <= eps and f not in seen:
            seen.add(f)
            yield f


def _recognize(z: complex, n: int) -> list[CyclotomicNumber]:
    """Candidate elements of Q(zeta_n) close to z (verification is the caller's job)."""
    eps = 1e-4 * (1 + abs(z))
    cands: list[CyclotomicNumber] = []

    def push(c: CyclotomicNumber):
        if abs(c.embed() - z) <= eps and not any(c == d for d in cands):
            cands.append(c)

    if abs(z.imag) <= eps:
        for q in _rational_candidates(z.real, eps):
            push(exact(q))
    if euler_phi(n) == 2:
        zc = zeta(n).embed()
        c1 = z.imag / zc.imag
        c0 = z.real - c1 * zc.real
        for q1 in _rational_candidates(c1, eps):
            for q0 in _rational_candidates(c0, eps):
                push(exact(q0) + exact(q1) * zeta(n))
                break
            break
    # rational multiples of the roots of unity available in the field
    m = n if n % 2 == 0 else 2 * n
    for k in range(m):
        w = cmath.exp(2j * math.pi * k / m)
        q = z / w
        if abs(q.imag) <= eps:
            for frac in _rational_candidates(q.real, eps):
                if n % 2 == 0 or k % 2 == 0:
                    unit = zeta(n, (k * (1 if n % 2 == 0 else (n + 1) // 2)) % n)
                else:
                    unit = -zeta(n, (k * (n + 1) // 2) % n)
                push(exact(frac) * unit)
                break
    return cands


def exact_roots(p: Poly, conductor: int | None = None):
    """Roots of p lying in Q(zeta_N) with multiplicities, plus the unsplit rest.

    Returns ``(found, remainder)`` where found is a list of
    (root, multiplicity) pairs and remainder is the exact quotient of p by
    the recognised linear factors.  remainder.degree == 0 means p split
    completely over the field.
    """
    if p.backend != "exact":
        raise BackendMismatchError("exact_roots needs an exact-backend polynomial")
    if p.is_zero():
        raise ValueError("zero polynomial")
    n = conductor or p.conductor()
    n = math.lcm(n, p.conductor())
    rem = p
    found: list[tuple[CyclotomicNumber, int]] = []
    if rem.degree >= 1:
        candidates: list[CyclotomicNumber] = []
        if rem.degree == 1:
            candidates = [-rem.coefficient(0) / rem.coefficient(1)]
        else:
            for z in roots(p):
                for c in _recognize(z.value, n):
                    if not any(c == d for d in candidates):
                        candidates.append(c)
        for cand in candidates:
            mult = 0
            while rem.degree >= 1 and rem.evaluate(cand) == 0:
                rem = rem // Poly([-cand, exact(1)])
                mult += 1
            if mult:
                found.append((cand, mult))
        # a leftover linear factor always splits
        if rem.degree == 1:
            r = -rem.coefficient(0) / rem.coefficient(1)
            found.append((r, 1))
            rem = Poly([rem.leading])
    return found, rem


# ---------------------------------------------------------------------------
# orbits of h -> f(h)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    """A periodic orbit (lambda(0), ..., lambda(m-1)) of the map h -> f(h)."""

    values: tuple[Scalar, ...]

    @property
    def period(self) -> int:
        return len(self.values)

    def rotated(self, s: int) -> "Orbit":
        s %= self.period
        return Orbit(self.values[s:] + self.values[:s])

    def canonical(self) -> "Orbit":
        """Rotate so the entry with smallest (re, im) leads; ties use later entries."""

        def key(orb: "Orbit"):
            return tuple(
                (round(v.embed().real, 9), round(v.embed().imag, 9)) for v in orb.values
            )

        return min((self.rotated(s) for s in range(self.period)), key=key)

    def same_cycle(self, other: "Orbit") -> bool:
        """True when other is a rotation of self (scalar equality per entry)."""
        if self.period != other.period:
            return False
        for s in range(self.period):
            rot = self.rotated(s)
            if all(a == b for a, b in zip(rot.values, other.values)):
                return True
        return False

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class OrbitSet:
    """Exact-period-n orbits of h -> f(h), plus any ungroupable numeric roots.

    ``continuum`` marks the degenerate case f^(n) = identity, where every
    non-exceptional point is periodic and the listed orbits are only sampled
    representatives of a continuum.
    """

    orbits: tuple[Orbit, ...]
    residual_roots: tuple[Scalar, ...] = ()
    continuum: bool = False


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor, by Euclid over the exact scalars."""
    if (not p.is_zero() and p.backend != "exact") or (
        not q.is_zero() and q.backend != "exact"
    ):
        raise BackendMismatchError("poly_gcd needs exact-backend polynomials")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a * Poly([one_like(a.leading) / a.leading])


def orbit_through(f: Poly, seed: Scalar, n: int) -> Orbit | None:
    """The orbit (seed, f(seed), ...) if it has exact period n, else None."""
    vals = [seed]
    for _ in range(n - 1):
        vals.append(f.evaluate(vals[-1]))
    if f.evaluate(vals[-1]) != seed:
        return None
    for d in divisors(n)[:-1]:
        if all(vals[i] == vals[(i + d) % n] for i in range(n)):
            return None
    return Orbit(tuple(vals))


def _exact_period_filter_exact(f: Poly, values, n: int):
    for d in divisors(n)[:-1]:
        fd = iterate(f, d)
        values = [v for v in values if fd.evaluate(v) != v]
    return values


def _cluster(values: list[complex]) -> list[complex]:
    """Merge near-coincident numeric roots, replacing clusters by centroids."""
    if not values:
        return []
    scale = 1 + max(abs(v) for v in values)
    radius = CONFIG.cluster_scale * scale
    values = sorted(values, key=lambda z: (z.real, z.imag))
    groups: list[list[complex]] = []
    for v in values:
        for g in groups:
            if abs(v - g[0]) <= radius:
                g.append(v)
                break
        else:
            groups.append([v])
    return [sum(g) / len(g) for g in groups]


def _group_orbits(f: Poly, pool: list[Scalar], n: int, match_tol) -> tuple[list[Orbit], list[Scalar]]:
    """Chain roots into orbits under f; unmatched values become residuals."""
    pool = sorted(pool, key=lambda s: (s.embed().real, s.embed().imag))
    orbits: list[Orbit] = []
    residuals: list[Scalar] = []
    while pool:
        start = pool.pop(0)
        seq = [start]
        ok = True
        for _ in range(n - 1):
            nxt = f.evaluate(seq[-1])
            hit = None
            for idx, v in enumerate(pool):
                if match_tol(v, nxt):
                    hit = idx
                    break
            if hit is None:
                ok = False
                break
            seq.append(pool.pop(hit))
        if ok:
            closing = f.evaluate(seq[-1])
            ok = match_tol(seq[0], closing)
        if ok:
            orbits.append(Orbit(tuple(seq)).canonical())
        else:
            residuals.append(start)
            pool = sorted(pool + seq[1:], key=lambda s: (s.embed().real, s.embed().imag))
    orbits.sort(key=lambda o: (o.values[0].embed().real, o.values[0].embed().imag))
    return orbits, residuals


def _sampled_continuum_orbits(f: Poly, n: int, count: int) -> list[Orbit]:
    out: list[Orbit] = []
    k = 1
    attempts = 0
    while len(out) < count and attempts < 100 * count + 100:
        attempts += 1
        seed = exact(k) if f.backend == "exact" else approx(k)
        k += 1
        orb = orbit_through(f, seed, n)
        if orb is None:
            continue
        orb = orb.canonical()
        if any(orb.same_cycle(o) for o in out):
            continue
        out.append(orb)
    return out


def periodic_points(
    f: Poly, n: int, *, samples: int | None = None, conductor: int | None = None
) -> OrbitSet:
    """All exact-period-n orbits of h -> f(h).

    Exact backend: lower-period factors of f^(n) - h are divided out by gcd
    with f^(d) - h (d a proper divisor of n), then roots of the quotient are
    searched inside Q(zeta_N) (N = conductor, defaulting to the lcm of f's
    coefficient conductors); if the quotient splits there the whole
    computation stays exact, otherwise it falls back to numeric roots.
    Orbits are returned in canonical rotation; numeric roots that cannot be
    grouped into an orbit are reported in residual_roots rather than
    silently dropped.

    When f^(n) is the identity map every point is periodic: f = h is always
    rejected, and otherwise a ContinuumOfOrbitsError is raised unless
    ``samples`` asks for that many sampled representative orbits.
    """
    if n < 1:
        raise ValueError("period must be >= 1")
    if f.is_identity():
        raise ContinuumOfOrbitsError(
            "continuum of orbits: f = h fixes every point; handle this case separately"
        )
    g = iterate(f, n) - Poly.variable(f.backend)
    if g.is_zero():
        if samples is None:
            raise ContinuumOfOrbitsError(
                "continuum of orbits: f^(n) is the identity, every point is n-periodic; "
                "pass samples= to get representative orbits"
            )
        orbs = _sampled_continuum_orbits(f, n, samples)
        return OrbitSet(tuple(orbs), (), continuum=True)
    if g.degree < 1:
        return OrbitSet(())

    if f.backend == "exact":
        cond = math.lcm(conductor or 1, f.conductor())
        # points of period d < n are roots of f^(d) - h; divide those factors
        # out first so an unsplittable lower-period factor (fixed points with
        # irrational coordinates, say) cannot force the period-n search numeric
        core = g
        for d in divisors(n)[:-1]:
            gd = iterate(f, d) - Poly.variable(f.backend)
            common = poly_gcd(core, gd)
            while common.degree >= 1:
                core = core // common
                common = poly_gcd(core, gd)
        if core.degree < 1:
            return OrbitSet(())
        found, rem = exact_roots(core, cond)
        if rem.degree == 0:
            values = [r for r, _ in found]
            values = _exact_period_filter_exact(f, values, n)
            orbits, residuals = _group_orbits(
                f, values, n, match_tol=lambda a, b: a == b
            )
            # closure of the root set under f makes exact grouping total
            assert not residuals, "exact orbit grouping must consume every root"
            return OrbitSet(tuple(orbits))

    # numeric path
    fa = f.approx()
    ga = iterate(fa, n) - Poly.variable("approx")
    numeric = [r.value for r in roots(ga)]
    centers = _cluster(numeric)
    scale = 1 + max((abs(v) for v in centers), default=0.0)
    radius = CONFIG.cluster_scale * scale
    for d in divisors(n)[:-1]:
        gd = iterate(fa, d) - Poly.variable("approx")
        if gd.is_zero() or all(c == zero_like(c) for c in gd.coeffs):
            return OrbitSet(())
        fixed = [r.value for r in roots(gd)]
        centers = [c for c in centers if all(abs(c - w) > radius for w in fixed)]
    pool = [approx(c) for c in centers]

    def match(a: ApproxComplex, b: Scalar) -> bool:
        bv = b.embed()
        return abs(a.value - bv) <= CONFIG.match_factor * CONFIG.tol * max(1.0, abs(bv))

    orbits, residuals = _group_orbits(fa, pool, n, match_tol=match)
    return OrbitSet(tuple(orbits), tuple(residuals))
