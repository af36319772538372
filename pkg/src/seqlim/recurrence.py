"""Linear difference equations with polynomial coefficients.

A recurrence is stored in the unnormalized integer form

    c_d(n) u(n+d) + ... + c_1(n) u(n+1) + c_0(n) u(n) = 0,

with the relation asserted for every n >= offset.  The monic normalization
p_k(n) = c_k(n)/c_d(n) is available as a derived view.  Solutions are exact
rational sequences cached in a :class:`SolutionTable`.

The module also provides Casoratian (discrete Wronskian) computations,
characteristic polynomials and their complex roots, growth classification
of solutions by characteristic root, recurrence guessing from initial
terms, and rescaling of recurrences by factorial-type factors.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

import mpmath
import numpy as np
from mpmath import mpc, mpf

from seqlim.arith import (
    BigFloat,
    Poly,
    RatFunc,
    poly_from_text,
    poly_to_text,
)


class RecurrenceError(Exception):
    pass


class SingularLeadingCoefficient(RecurrenceError):
    """The leading coefficient vanishes at a step the evaluation needs."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"leading coefficient vanishes at n = {n}")


class ZeroPrimaryTerm(RecurrenceError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"primary solution vanishes at n = {n}")


class DivergentCoefficient(RecurrenceError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"coefficient {k} dominates the leading coefficient")


class NoConvergence(RecurrenceError):
    def __init__(self, message, residuals=None):
        self.residuals = residuals
        super().__init__(message)


class InsufficientTerms(RecurrenceError):
    def __init__(self, required: int, got: int):
        self.required = required
        self.got = got
        super().__init__(f"need at least {required} terms, got {got}")


class ZeroRatio(RecurrenceError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"rescaling ratio vanishes identically (n = {n})")


class EqualModuli(RecurrenceError):
    pass


class ZeroTail(RecurrenceError):
    pass


# ----------------------------------------------------------------------
# Core types
# ----------------------------------------------------------------------


class Recurrence:
    """Order-d relation sum(c_k(n) u(n+k), k=0..d) = 0 for n >= offset.

    Coefficients are normalized to integer polynomials with overall content
    removed and positive leading coefficient on c_d.
    """

    __slots__ = ("order", "coeffs", "offset")

    def __init__(self, coeffs: Sequence[Poly], offset: int = 0):
        coeffs = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
        if len(coeffs) < 2:
            raise ValueError("a recurrence needs order >= 1 (at least two coefficients)")
        if coeffs[-1].is_zero:
            raise ValueError("leading coefficient polynomial must be nonzero")
        den = 1
        num = 0
        for c in coeffs:
            for q in c.coeffs:
                den = lcm(den, q.denominator)
        scaled = [c * den for c in coeffs]
        for c in scaled:
            for q in c.coeffs:
                num = gcd(num, q.numerator)
        if scaled[-1].leading < 0:
            num = -num
        coeffs = [c / num for c in scaled]
        object.__setattr__(self, "order", len(coeffs) - 1)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "offset", int(offset))

    def __setattr__(self, name, value):
        raise AttributeError("Recurrence is immutable")

    def p(self, k: int) -> RatFunc:
        """Monic-normalized coefficient p_k(n) = c_k(n) / c_d(n)."""
        return RatFunc(self.coeffs[k], self.coeffs[-1])

    def relation_value(self, terms, n: int):
        """sum(c_k(n) * terms[n+k]); zero iff the relation holds at n."""
        acc = None
        for k, c in enumerate(self.coeffs):
            t = c(Fraction(n)) * terms[n + k]
            acc = t if acc is None else acc + t
        return acc

    def proportional_to(self, other: "Recurrence") -> bool:
        """Same relation up to an overall rational-function multiple."""
        if self.order != other.order:
            return False
        lead_a, lead_b = self.coeffs[-1], other.coeffs[-1]
        return all(self.coeffs[k] * lead_b == other.coeffs[k] * lead_a
                   for k in range(self.order))

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        return self.coeffs == other.coeffs and self.offset == other.offset

    def __hash__(self):
        return hash((self.coeffs, self.offset))

    def __repr__(self):
        body = ", ".join(poly_to_text(c) for c in self.coeffs)
        return f"Recurrence(order={self.order}, offset={self.offset}, [{body}])"


@dataclass(frozen=True)
class InitialConditions:
    """d consecutive starting values u(start_index), ..., u(start_index+d-1)."""

    start_index: int
    values: tuple

    def __init__(self, start_index: int, values: Iterable):
        object.__setattr__(self, "start_index", int(start_index))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))


class SolutionTable:
    """A solution of a recurrence, lazily extended and cached exactly.

    Cache extension is serialized by a lock; lookups of already-cached terms
    are unsynchronized reads of an append-only dict.
    """

    def __init__(self, recurrence: Recurrence, init: InitialConditions):
        if len(init.values) != recurrence.order:
            raise ValueError(
                f"recurrence of order {recurrence.order} needs "
                f"{recurrence.order} initial values, got {len(init.values)}")
        if init.start_index < recurrence.offset:
            raise ValueError("initial conditions start below the recurrence offset")
        self.recurrence = recurrence
        self.init = init
        self._terms = {init.start_index + i: v for i, v in enumerate(init.values)}
        self._top = init.start_index + len(init.values) - 1
        self._lock = threading.Lock()

    @property
    def start_index(self) -> int:
        return self.init.start_index

    def with_term(self, n: int, value) -> "SolutionTable":
        """Explicitly supply u(n); the escape hatch for singular leading steps."""
        if n != self._top + 1:
            raise ValueError(f"can only append the next term (n = {self._top + 1})")
        self._terms[n] = Fraction(value)
        self._top = n
        return self

    def term(self, n: int):
        """Exact u(n), extending the cache as needed."""
        if n < self.init.start_index:
            raise ValueError(f"term {n} precedes the initial conditions")
        if n > self._top:
            self.evaluate(n)
        return self._terms[n]

    def evaluate(self, upto: int) -> list:
        """Exact terms u(start), ..., u(upto); idempotent cache extension."""
        with self._lock:
            rec = self.recurrence
            d = rec.order
            lead = rec.coeffs[-1]
            while self._top < upto:
                m = self._top + 1
                n = m - d
                cd = lead(Fraction(n))
                if cd == 0:
                    raise SingularLeadingCoefficient(n)
                acc = None
                for k in range(d):
                    t = rec.coeffs[k](Fraction(n)) * self._terms[n + k]
                    acc = t if acc is None else acc + t
                self._terms[m] = -acc / cd
                self._top = m
        return [self._terms[i] for i in range(self.init.start_index, upto + 1)]

    def known_through(self) -> int:
        return self._top


# ----------------------------------------------------------------------
# Casoratian
# ----------------------------------------------------------------------


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def casoratian(rec: Recurrence, sols: Sequence[SolutionTable], n: int) -> Fraction:
    """Determinant of the d x d window [sols_j(n + i)] (discrete Wronskian)."""
    d = rec.order
    if len(sols) != d:
        raise ValueError(f"need exactly {d} solutions, got {len(sols)}")
    for s in sols:
        if not s.recurrence.proportional_to(rec):
            raise ValueError("solution does not belong to this recurrence")
    return _det([[s.term(n + i) for s in sols] for i in range(d)])


def casoratian_check(rec: Recurrence, sols: Sequence[SolutionTable], upto: int) -> bool:
    """Exact check of w(n) = (-1)^(d n) p_0(0) ... p_0(n-1) w(0) for n <= upto."""
    d = rec.order
    w0 = casoratian(rec, sols, 0)
    p0 = rec.p(0)
    prod = Fraction(1)
    sign = 1 if d % 2 == 0 else -1
    expected = w0
    for n in range(upto + 1):
        if casoratian(rec, sols, n) != expected:
            return False
        prod *= p0(n)
        expected = (sign ** (n + 1)) * prod * w0
    return True


def secondary_from_primary(rec: Recurrence, primary: SolutionTable, upto: int) -> SolutionTable:
    """Second solution u2(n) = u1(n) * sum(w(k) / (u1(k) u1(k+1)), k < n).

    Here w(k) is the product p_0(0)...p_0(k-1), i.e. the Casoratian
    normalized to w(0) = 1; this gives u2(0) = 0 and u2(1) = 1/u1(0).
    Only order-2 recurrences are supported.
    """
    if rec.order != 2:
        raise ValueError("secondary construction requires an order-2 recurrence")
    p0 = rec.p(0)
    u1 = primary.evaluate(upto + 1)
    base = primary.start_index
    vals = []
    acc = Fraction(0)
    w = Fraction(1)
    for n in range(0, upto + 1):
        vals.append(u1[n - base] * acc)
        if u1[n - base] == 0:
            raise ZeroPrimaryTerm(n)
        acc += w / (u1[n - base] * u1[n + 1 - base])
        w *= p0(n)
    out = SolutionTable(rec, InitialConditions(0, vals[:2]))
    for n in range(2, upto + 1):
        out._terms[n] = vals[n]
    out._top = upto
    return out


# ----------------------------------------------------------------------
# Characteristic polynomial and roots
# ----------------------------------------------------------------------


def characteristic_polynomial(rec: Recurrence) -> Poly:
    """Monic limit polynomial of the ratios c_k(n)/c_d(n) as n grows."""
    lead = rec.coeffs[-1]
    out = [Fraction(0)] * (rec.order + 1)
    out[rec.order] = Fraction(1)
    for k in range(rec.order):
        c = rec.coeffs[k]
        if c.degree > lead.degree:
            raise DivergentCoefficient(k)
        if c.degree == lead.degree:
            out[k] = c.leading / lead.leading
    return Poly(out)


class CharRoots:
    """All complex roots of a characteristic polynomial, largest modulus first."""

    __slots__ = ("polynomial", "roots", "precision", "equal_moduli")

    def __init__(self, polynomial: Poly, roots: Sequence[mpc], precision: int):
        roots = sorted(roots, key=lambda z: (-abs(z), mpf(z.real), mpf(z.imag)))
        object.__setattr__(self, "polynomial", polynomial)
        object.__setattr__(self, "roots", tuple(roots))
        object.__setattr__(self, "precision", precision)
        tol = mpf(10) ** (10 - precision)
        scale = max(abs(z) for z in roots) if roots else mpf(1)
        flag = any(abs(abs(roots[i]) - abs(roots[i + 1])) < tol * max(scale, mpf(1))
                   for i in range(len(roots) - 1))
        object.__setattr__(self, "equal_moduli", flag)

    def __setattr__(self, name, value):
        raise AttributeError("CharRoots is immutable")

    def root_pairs(self) -> list[tuple[BigFloat, BigFloat]]:
        """Roots as (real, imaginary) BigFloat pairs."""
        return [(BigFloat(mpf(z.real), self.precision), BigFloat(mpf(z.imag), self.precision))
                for z in self.roots]

    def __repr__(self):
        with mpmath.workdps(8):
            body = ", ".join(str(+z) for z in self.roots)
        return f"CharRoots([{body}] @ {self.precision} digits)"


#: Iteration cap for the simultaneous root iteration, per unit of degree.
_ROOT_ITER_CAP = 200


def characteristic_roots(p: Poly, precision: int) -> CharRoots:
    """All complex roots by simultaneous Weierstrass (all-roots) iteration.

    Starting points sit on a slightly perturbed circle of the Cauchy radius;
    the iteration refines every root at once and the result is rejected
    unless every residual |p(root)| is below 10**-(precision-10).
    """
    if p.degree < 1:
        raise ValueError("root finding needs a nonconstant polynomial")
    d = p.degree
    monic = [c / p.leading for c in p.coeffs]
    work = precision + 15
    with mpmath.workdps(work):
        coeffs = [mpf(c.numerator) / mpf(c.denominator) for c in monic]
        radius = 1 + max(abs(c) for c in coeffs[:-1])
        roots = []
        for j in range(d):
            angle = 2 * mpmath.pi * (j + mpf("0.3737")) / d
            roots.append(radius * (1 + mpf(j + 1) / (100 * d)) * mpmath.exp(1j * angle))

        def peval(z):
            acc = mpc(1)
            for c in reversed(coeffs[:-1]):
                acc = acc * z + c
            return acc

        step_tol = mpf(10) ** (-(precision + 5))
        for _ in range(_ROOT_ITER_CAP * d):
            moved = mpf(0)
            for j in range(d):
                denom = mpc(1)
                for i in range(d):
                    if i != j:
                        denom *= roots[j] - roots[i]
                delta = peval(roots[j]) / denom
                roots[j] -= delta
                moved = max(moved, abs(delta) / max(mpf(1), abs(roots[j])))
            if moved < step_tol:
                break
        else:
            residuals = [abs(peval(z)) for z in roots]
            raise NoConvergence("root iteration did not settle", residuals)
        residuals = [abs(peval(z)) for z in roots]
        bad = max(residuals)
        if bad >= mpf(10) ** (10 - precision):
            raise NoConvergence("root residuals too large", residuals)
    return CharRoots(p, roots, precision)


@dataclass(frozen=True)
class GrowthClass:
    """Root assignment for a solution: index into CharRoots plus diagnostics."""

    root_index: int
    ratio: BigFloat
    distance: BigFloat


def poincare_classify(sol, roots: CharRoots, upto: int) -> GrowthClass:
    """Match the tail ratio u(N+1)/u(N) to the nearest characteristic root.

    ``sol`` is either a SolutionTable (exact terms) or an indexable sequence
    of numeric values covering indices up to N+1.  Requires roots of
    pairwise distinct moduli; a tail of zeros is reported as such.
    """
    if roots.equal_moduli:
        raise EqualModuli("characteristic roots do not have distinct moduli")
    prec = roots.precision
    if isinstance(sol, SolutionTable):
        values = sol.evaluate(upto + 1)
        lo = sol.start_index
        window = values[max(0, upto - 3 - lo): upto + 2 - lo]
        if all(v == 0 for v in window):
            raise ZeroTail("solution vanishes over the sampled tail")
        a, b = values[upto - lo], values[upto + 1 - lo]
        if a == 0:
            raise ZeroTail(f"u({upto}) = 0; pick a different N")
        with mpmath.workdps(prec):
            ratio = (mpf(b.numerator) / mpf(b.denominator)) / (mpf(a.numerator) / mpf(a.denominator))
    else:
        seq = [v.val if isinstance(v, BigFloat) else mpf(v) for v in sol]
        if upto + 1 >= len(seq):
            raise ValueError("need values through index N+1")
        window = seq[max(0, upto - 3): upto + 2]
        if all(v == 0 for v in window):
            raise ZeroTail("values vanish over the sampled tail")
        if seq[upto] == 0:
            raise ZeroTail(f"value at {upto} is 0; pick a different N")
        with mpmath.workdps(prec):
            ratio = seq[upto + 1] / seq[upto]
    with mpmath.workdps(prec):
        dists = [abs(ratio - z) for z in roots.roots]
        k = min(range(len(dists)), key=lambda i: dists[i])
    return GrowthClass(k, BigFloat(mpf(ratio), prec), BigFloat(dists[k], prec))


# ----------------------------------------------------------------------
# Guessing recurrences from terms
# ----------------------------------------------------------------------


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(sieve[i * i:: i]))
    return [i for i, f in enumerate(sieve) if f]


_TRIAL_PRIMES = _small_primes(1000)


def _is_prime(n: int) -> bool:
    for p in _TRIAL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _modular_primes(count: int) -> list[int]:
    """``count`` primes just below 2**25 (safe for int64 numpy products)."""
    out = []
    n = 2**25 - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return out


_GUESS_PRIMES = _modular_primes(64)


def _rref_mod(matrix: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (pivot columns, reduced rows)."""
    a = matrix % p
    rows, cols = a.shape
    pivots = []
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), p - 2, p) % p
        others = a[:, col].copy()
        others[rank] = 0
        a = (a - np.outer(others, a[rank])) % p
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    return pivots, a


def _nullspace_vectors_mod(matrix: np.ndarray, p: int):
    """Nullspace basis mod p, one vector per free column (free coord = 1)."""
    pivots, a = _rref_mod(matrix, p)
    cols = matrix.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int((-a[i, f]) % p)
        basis.append(v)
    return pivots, free, basis


def _rational_reconstruct(x: int, modulus: int) -> Fraction | None:
    """p/q congruent to x with |p|, |q| <= sqrt(modulus/2), if one exists."""
    bound = isqrt(modulus // 2)
    r0, r1 = modulus, x % modulus
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    inv = pow(m1, -1, m2)
    x = (a1 + (a2 - a1) * inv % m2 * m1) % (m1 * m2)
    return x, m1 * m2


def _window_rows(order: int, degree: int, eqs: int) -> int:
    """Nullspace window size: the first unknowns+10 relation indices (capped)."""
    return min((order + 1) * (degree + 1) + 10, eqs)


def _window_matrix_mod(ints, order, degree, rows, p):
    m = np.zeros((rows, (order + 1) * (degree + 1)), dtype=np.int64)
    residues = [t % p for t in ints]
    for n in range(rows):
        npow = 1
        for j in range(degree + 1):
            for k in range(order + 1):
                m[n, k * (degree + 1) + j] = npow * residues[n + k] % p
            npow = npow * n % p
    return m


def _candidate_from_vector(vec: list[Fraction], order: int, degree: int) -> list[Poly] | None:
    den = 1
    for q in vec:
        den = lcm(den, q.denominator)
    ints = [int(q * den) for q in vec]
    g = 0
    for q in ints:
        g = gcd(g, q)
    if g == 0:
        return None
    ints = [q // g for q in ints]
    polys = [Poly(ints[k * (degree + 1): (k + 1) * (degree + 1)]) for k in range(order + 1)]
    if polys[-1].is_zero:
        return None
    return polys


def _verify_relation(polys: list[Poly], ints: Sequence[int], order: int) -> bool:
    coeff_ints = [[c.numerator for c in poly.coeffs] for poly in polys]
    for n in range(len(ints) - order):
        total = 0
        for k, cs in enumerate(coeff_ints):
            acc = 0
            for c in reversed(cs):
                acc = acc * n + c
            total += acc * ints[n + k]
        if total:
            return False
    return True


def _reconstruct_candidate(ints, order, degree, rows, free_index, max_primes=48):
    """CRT nullspace vectors across primes until rational reconstruction verifies."""
    ref_pivots = None
    residue = None
    modulus = None
    used = 0
    for p in _GUESS_PRIMES:
        pivots, free, basis = _nullspace_vectors_mod(
            _window_matrix_mod(ints, order, degree, rows, p), p)
        if not basis or free_index >= len(basis):
            continue
        if ref_pivots is None:
            ref_pivots = pivots
        elif pivots != ref_pivots:
            continue
        vec = basis[free_index]
        if residue is None:
            residue, modulus = vec, p
        else:
            residue = [_crt_pair(a, modulus, b, p)[0] for a, b in zip(residue, vec)]
            modulus *= p
        used += 1
        if used >= 2:
            recon = [_rational_reconstruct(x, modulus) for x in residue]
            if all(r is not None for r in recon):
                return _candidate_from_vector(recon, order, degree)
        if used >= max_primes:
            break
    return None


def _nullspace_dim(ints, order, degree, eqs) -> int:
    """Nullspace dimension of the window system, agreed by two primes.

    A primitive integer relation survives reduction mod any prime, so the
    conservative min over two primes never misses a true recurrence.
    """
    rows = _window_rows(order, degree, eqs)
    dims = []
    for p in _GUESS_PRIMES[:2]:
        _, _, basis = _nullspace_vectors_mod(
            _window_matrix_mod(ints, order, degree, rows, p), p)
        dims.append(len(basis))
    return min(dims)


def guess_recurrence(terms: Sequence, max_order: int, max_degree: int) -> Recurrence | None:
    """Minimal (order, then degree) integer recurrence annihilating ``terms``.

    The nullspace is computed on a leading window of the term matrix using
    modular arithmetic with rational reconstruction; every candidate is then
    verified exactly against all supplied terms, so a wrong reconstruction
    can only cause a miss, never a wrong answer.  Returns None when nothing
    within the bounds survives.
    """
    terms = [Fraction(t) for t in terms]
    total = len(terms)
    required = (max_order + 1) * (max_degree + 1) + max_order + 5
    if total < required:
        raise InsufficientTerms(required, total)
    den = 1
    for t in terms:
        den = lcm(den, t.denominator)
    ints = [int(t * den) for t in terms]
    for order in range(1, max_order + 1):
        eqs = total - order
        # keep at least 5 equations beyond the unknown count
        cap = min(max_degree, (eqs - 5) // (order + 1) - 1)
        if cap < 0 or _nullspace_dim(ints, order, cap, eqs) == 0:
            continue
        lo, hi = 0, cap
        while lo < hi:
            mid = (lo + hi) // 2
            if _nullspace_dim(ints, order, mid, eqs) > 0:
                hi = mid
            else:
                lo = mid + 1
        for degree in range(lo, cap + 1):
            dim = _nullspace_dim(ints, order, degree, eqs)
            if dim == 0:
                continue
            rows = _window_rows(order, degree, eqs)
            for free_index in range(dim):
                cand = _reconstruct_candidate(ints, order, degree, rows, free_index)
                if cand is None:
                    continue
                if _verify_relation(cand, ints, order):
                    return Recurrence(cand, offset=0)
    return None


# ----------------------------------------------------------------------
# Rescaling
# ----------------------------------------------------------------------


def _integer_roots(p: Poly) -> list[int]:
    """All integer roots, via the Cauchy bound and direct evaluation."""
    if p.is_zero:
        raise ValueError("zero polynomial has every root")
    q = p.primitive()
    bound = 1 + max(abs(c) for c in q.coeffs) / abs(q.leading)
    limit = int(bound) + 1
    return [n for n in range(-limit, limit + 1) if q(Fraction(n)) == 0]


def rescale(rec: Recurrence, ratio: RatFunc) -> Recurrence:
    """Recurrence satisfied by f(n) u(n) where ratio(n) = f(n+1)/f(n).

    Each coefficient c_k(n) is multiplied by the telescoping product
    ratio(n+k) ... ratio(n+d-1); denominators are then cleared and any
    common polynomial factor with no integer root in the validity range is
    removed.  The offset moves past any zero or pole of the ratio.
    """
    if ratio.numer.is_zero:
        raise ZeroRatio("all n")
    d = rec.order
    shifted = [ratio.shift(i) for i in range(d)]
    scaled: list[RatFunc] = []
    for k in range(d + 1):
        f = RatFunc(rec.coeffs[k])
        for i in range(k, d):
            f = f * shifted[i]
        scaled.append(f)
    denom_lcm = Poly.const(1)
    for f in scaled:
        g = denom_lcm.gcd(f.denom)
        denom_lcm = denom_lcm * f.denom.divmod(g)[0]
    polys = []
    for f in scaled:
        q, r = denom_lcm.divmod(f.denom)
        assert r.is_zero
        polys.append(f.numer * q)
    offset = rec.offset
    for z in _integer_roots(ratio.numer) + _integer_roots(ratio.denom):
        offset = max(offset, z + 1)
    common = polys[0]
    for p in polys[1:]:
        common = common.gcd(p)
    if common.degree > 0 and all(z < offset for z in _integer_roots(common)):
        polys = [p.divmod(common)[0] for p in polys]
    return Recurrence(polys, offset=offset)


# ----------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------


def recurrence_to_text(rec: Recurrence) -> str:
    """Serialize as order/offset headers plus one ``c_k:`` line per coefficient."""
    lines = [f"order: {rec.order}", f"offset: {rec.offset}"]
    lines += [f"c_{k}: {poly_to_text(c)}" for k, c in enumerate(rec.coeffs)]
    return "\n".join(lines) + "\n"


def recurrence_from_text(text: str) -> Recurrence:
    order = None
    offset = 0
    coeffs: dict[int, Poly] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "order":
            order = int(value)
        elif key == "offset":
            offset = int(value)
        elif key.startswith("c_"):
            coeffs[int(key[2:])] = poly_from_text(value)
        else:
            raise ValueError(f"unrecognized line in recurrence spec: {raw!r}")
    if order is None:
        raise ValueError("recurrence spec is missing the order header")
    missing = [k for k in range(order + 1) if k not in coeffs]
    if missing:
        raise ValueError(f"recurrence spec is missing coefficients {missing}")
    return Recurrence([coeffs[k] for k in range(order + 1)], offset=offset)
