"""Arithmetic in GF(3^n) for odd n, with quadratic character and canonical roots.

Field elements are plain ints in ``range(3**n)``: the base-3 digits of the
index, least significant first, are the coefficients of the residue
polynomial modulo the defining irreducible.  Every int in range is one
canonical element, so no normalisation state exists anywhere.  The small
constants behave as expected: ``0`` is zero, ``1`` is one and ``2`` is
minus one.

A :class:`FieldCtx` is immutable after construction and safe to share
between threads.  The optional acceleration tables (digit matrix, discrete
logs, pairwise-sum table) are published lazily under a lock and never
mutated afterwards; everything else is a pure function of ``(ctx, args)``.

Text format for elements and moduli: a compact string of base-3 digits,
lowest degree first.  ``"120"`` is ``1 + 2x`` in a degree-3 field, and the
default degree-3 modulus ``x^3 + 2x + 1`` prints as ``"1201"``.
"""

from __future__ import annotations

import threading
from typing import Optional, Sequence, Union

import numpy as np

P = 3

# Lazy-table ceilings.  Discrete logs need q-1 sequential multiplications,
# pairwise sum tables need q*q ints; both stay cheap up to these sizes.
LOG_TABLE_MAX_Q = P**9
PAIR_TABLE_MAX_Q = P**7

PolyLike = Union[str, Sequence[int]]


class ReducibleModulusError(ValueError):
    """A supplied modulus has a nontrivial factor over GF(3)."""

    def __init__(self, modulus_str: str, factor_str: str):
        super().__init__(
            f"modulus {modulus_str!r} is reducible: divisible by {factor_str!r}"
            " (digit strings, lowest degree first)"
        )
        self.modulus_str = modulus_str
        self.factor_str = factor_str


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; this always indicates a bug."""


# ---------------------------------------------------------------------------
# polynomials over GF(3), as little-endian digit tuples (modulus handling only)
# ---------------------------------------------------------------------------


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Remainder of num / den over GF(3); den must be nonzero."""
    rem = list(num)
    dd = len(den) - 1
    inv_lead = 1 if den[-1] == 1 else 2
    while len(rem) - 1 >= dd and _poly_trim(rem):
        shift = len(rem) - 1 - dd
        factor = (rem[-1] * inv_lead) % P
        for i, d in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * d) % P
        _poly_trim(rem)
    return rem


def _poly_str(c: Sequence[int]) -> str:
    return "".join(str(d) for d in c) if c else "0"


def _idx_digits(idx: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(idx % P)
        idx //= P
    return out


def irreducible_witness(poly: Sequence[int]) -> Optional[list[int]]:
    """Smallest monic factor of degree 1..deg/2, or None if irreducible.

    Trial division; degree-1 factors double as root witnesses.
    """
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for idx in range(P**d):
            cand = _idx_digits(idx, d) + [1]
            if not _poly_trim(_poly_mod(poly, cand)):
                return cand
    return None


def smallest_irreducible(n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n in base-3 counter order."""
    for idx in range(P**n):
        cand = _idx_digits(idx, n) + [1]
        if irreducible_witness(cand) is None:
            return tuple(cand)
    raise InconsistencyError(f"no irreducible of degree {n} found")  # unreachable


def _factorize(m: int) -> list[int]:
    """Prime factors of m (distinct), trial division."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------


class FieldCtx:
    """GF(3^n) with a verified irreducible modulus and primitive element.

    All scalar operations accept and return element indices (ints).  The
    ``*_vec`` methods operate on numpy index arrays and exist for
    full-field scans; they give bit-identical results to the scalar path.
    """

    def __init__(self, n: int, modulus: Optional[PolyLike] = None):
        if n % 2 == 0:
            raise ValueError(f"n must be odd, got {n}")
        if not 3 <= n <= 13:
            raise ValueError(f"n must be in 3..13, got {n}")
        self.n = n
        self.q = P**n

        if modulus is None:
            mod = smallest_irreducible(n)
        else:
            mod = self._coerce_modulus(modulus)
            witness = irreducible_witness(mod)
            if witness is not None:
                raise ReducibleModulusError(_poly_str(mod), _poly_str(witness))
        self.modulus: tuple[int, ...] = tuple(mod)

        # x^(n+k) mod modulus for k = 0..n-2, as digit tuples; lets mul fold
        # a degree-(2n-2) product back into range without long division.
        self._reduction_rows = self._build_reduction_rows()

        self._lock = threading.Lock()
        self._dig: Optional[np.ndarray] = None
        self._p3 = (P ** np.arange(n, dtype=np.int64))
        self._log: Optional[np.ndarray] = None
        self._alog: Optional[np.ndarray] = None
        self._pair_add: Optional[np.ndarray] = None
        self._neg_tab: Optional[np.ndarray] = None

        self.generator = self._find_generator()

    # -- construction helpers ------------------------------------------------

    def _coerce_modulus(self, modulus: PolyLike) -> list[int]:
        if isinstance(modulus, str):
            digits = [int(ch) for ch in modulus]
        else:
            digits = [int(d) for d in modulus]
        if any(d not in (0, 1, 2) for d in digits):
            raise ValueError(f"modulus digits must be 0/1/2, got {modulus!r}")
        if len(digits) != self.n + 1 or digits[-1] != 1:
            raise ValueError(
                f"modulus must be monic of degree {self.n}"
                f" ({self.n + 1} digits ending in 1), got {modulus!r}"
            )
        return digits

    def _build_reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        base = tuple((-d) % P for d in self.modulus[:n])  # x^n mod modulus
        rows = [base]
        for _ in range(n - 2):
            prev = rows[-1]
            shifted = [0] + list(prev[: n - 1])
            carry = prev[n - 1]
            if carry:
                shifted = [(s + carry * b) % P for s, b in zip(shifted, base)]
            rows.append(tuple(shifted))
        return tuple(rows)

    def _find_generator(self) -> int:
        cofactors = [(self.q - 1) // p for p in _factorize(self.q - 1)]
        for g in range(2, self.q):
            if all(self.pow(g, c) != 1 for c in cofactors):
                return g
        raise InconsistencyError("no primitive element found")  # unreachable

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        out = 0
        m = 1
        for _ in range(self.n):
            out += ((a + b) % P) * m
            a //= P
            b //= P
            m *= P
        return out

    def neg(self, a: int) -> int:
        out = 0
        m = 1
        for _ in range(self.n):
            out += (-a % P) * m
            a //= P
            m *= P
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(
                self._alog[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)]
            )
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        n = self.n
        da = _idx_digits(a, n)
        db = _idx_digits(b, n)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] += ai * bj
        res = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k] % P
            if c:
                row = self._reduction_rows[k - n]
                for j in range(n):
                    res[j] += c * row[j]
        out = 0
        m = 1
        for j in range(n):
            out += (res[j] % P) * m
            m *= P
        return out

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; 0**0 == 1 by convention."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return int(self._alog[(int(self._log[a]) * e) % (self.q - 1)])
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(a, self.q - 2)

    def chi(self, a: int) -> int:
        """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0."""
        c = self.pow(a, (self.q - 1) // 2)
        if c == 0:
            return 0
        return 1 if c == 1 else -1

    def sqrt_canonical(self, a: int) -> int:
        """The square root r of a with chi(r) == +1.

        Unique because chi(-1) == -1 for odd n.  Since q = 3 (mod 4),
        a**((q+1)/4) is a root whenever a is a square.
        """
        if self.chi(a) != 1:
            raise ValueError(f"sqrt_canonical needs a nonzero square, got chi={self.chi(a)}")
        r = self.pow(a, (self.q + 1) // 4)
        return r if self.chi(r) == 1 else self.neg(r)

    def elements(self) -> range:
        """All q elements, base-3 counter order: 0, 1, 2, x, x+1, ..."""
        return range(self.q)

    # -- text / coefficient views ---------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(_idx_digits(a, self.n))

    def element_from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            raise ValueError(f"at most {self.n} coefficients, got {len(coeffs)}")
        out = 0
        m = 1
        for d in coeffs:
            if d not in (0, 1, 2):
                raise ValueError(f"coefficients must be 0/1/2, got {d}")
            out += d * m
            m *= P
        return out

    def parse_element(self, text: str) -> int:
        if not text or not text.isdigit():
            raise ValueError(f"element string must be base-3 digits, got {text!r}")
        return self.element_from_coeffs([int(ch) for ch in text])

    def format_element(self, a: int) -> str:
        if not 0 <= a < self.q:
            raise ValueError(f"element index out of range: {a}")
        return "".join(str(d) for d in _idx_digits(a, self.n))

    @property
    def modulus_str(self) -> str:
        return _poly_str(self.modulus)

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldCtx(n={self.n}, modulus={self.modulus_str!r})"

    # -- lazy tables ------------------------------------------------------------

    def digit_table(self) -> np.ndarray:
        """(q, n) int8 array: base-3 digits of every element index."""
        t = self._dig
        if t is None:
            with self._lock:
                if self._dig is None:
                    idx = np.arange(self.q, dtype=np.int64)
                    cols = [((idx // P**i) % P).astype(np.int8) for i in range(self.n)]
                    self._dig = np.stack(cols, axis=1)
                t = self._dig
        return t

    def _log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._log is None:
            if self.q > LOG_TABLE_MAX_Q:
                raise RuntimeError(
                    f"discrete-log tables kept for q <= {LOG_TABLE_MAX_Q}; "
                    f"scan-layer ops unavailable at q = {self.q}"
                )
            with self._lock:
                if self._log is None:
                    alog = np.empty(self.q - 1, dtype=np.int64)
                    log = np.zeros(self.q, dtype=np.int64)
                    e = 1
                    for k in range(self.q - 1):
                        alog[k] = e
                        log[e] = k
                        e = self._mul_poly(e, self.generator)
                    if e != 1:
                        raise InconsistencyError("generator order check failed")
                    # publish together, after both are filled
                    self._alog = alog
                    self._log = log
        return self._log, self._alog  # type: ignore[return-value]

    def pair_add_table(self) -> Optional[np.ndarray]:
        """(q, q) table of element sums, or None above the size ceiling."""
        if self.q > PAIR_TABLE_MAX_Q:
            return None
        t = self._pair_add
        if t is None:
            with self._lock:
                if self._pair_add is None:
                    dg = self.digit_table()
                    acc = np.zeros((self.q, self.q), dtype=np.int32)
                    for i in range(self.n):
                        col = dg[:, i].astype(np.int32)
                        acc += ((col[:, None] + col[None, :]) % P) * (P**i)
                    self._pair_add = acc
                t = self._pair_add
        return t

    def neg_table(self) -> np.ndarray:
        t = self._neg_tab
        if t is None:
            with self._lock:
                if self._neg_tab is None:
                    dg = self.digit_table()
                    self._neg_tab = (((P - dg) % P) @ self._p3).astype(np.int64)
                t = self._neg_tab
        return t

    # -- vectorised arithmetic on index arrays ----------------------------------

    def add_vec(self, a, b) -> np.ndarray:
        dg = self.digit_table()
        s = (dg[np.asarray(a)] + dg[np.asarray(b)]) % P
        return s @ self._p3

    def neg_vec(self, a) -> np.ndarray:
        return self.neg_table()[np.asarray(a)]

    def sub_vec(self, a, b) -> np.ndarray:
        dg = self.digit_table()
        s = (dg[np.asarray(a)] - dg[np.asarray(b)]) % P
        return s @ self._p3

    def mul_vec(self, a, b) -> np.ndarray:
        log, alog = self._log_tables()
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = alog[(log[a[nz]] + log[b[nz]]) % (self.q - 1)]
        return out

    def pow_vec(self, a, e: int) -> np.ndarray:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        log, alog = self._log_tables()
        a = np.asarray(a)
        if e == 0:
            return np.ones(a.shape, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = a != 0
        out[nz] = alog[(log[a[nz]] * e) % (self.q - 1)]
        return out

    def inv_vec(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow_vec(a, self.q - 2)

    def chi_vec(self, a) -> np.ndarray:
        """Quadratic character of every entry, values in {-1, 0, +1}."""
        log, _ = self._log_tables()
        a = np.asarray(a)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = a != 0
        out[nz] = 1 - 2 * (log[a[nz]] & 1)
        return out


def make_context(n: int, modulus: Optional[PolyLike] = None) -> FieldCtx:
    """Build GF(3^n); default modulus is the smallest monic irreducible."""
    return FieldCtx(n, modulus)
