"""Prime fields F_q and extension fields F_{q^l} in the power basis of alpha.

Elements are encoded as integer codes: an element sum(c_i alpha^i) has code
sum(c_i q^i).  Matrices and vectors store codes; :class:`FieldElement` is the
user-facing wrapper that carries its field along.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import FieldMismatchError, InvalidInputError

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


# -- polynomials over F_q as coefficient tuples, constant term first ---------

def _trim(p: Sequence[int]) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], q - 2, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % q
        quot[shift] = c
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % q
        a = list(_trim(a))
    return _trim(quot), tuple(a)


def monic_polynomials(q: int, degree: int) -> Iterator[tuple[int, ...]]:
    """All monic polynomials of the given degree, lexicographic constant-term-first."""
    for low in itertools.product(range(q), repeat=degree):
        yield low + (1,)


def find_factor(p: Sequence[int], q: int) -> tuple[int, ...] | None:
    """Return a monic nontrivial factor of ``p`` over F_q, or None if irreducible."""
    p = _trim(p)
    deg = len(p) - 1
    for d in range(1, deg // 2 + 1):
        for cand in monic_polynomials(q, d):
            if not poly_divmod(p, cand, q)[1]:
                return cand
    return None


def format_poly(p: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
    return " + ".join(reversed(terms)) or "0"


# -- fields ------------------------------------------------------------------

class _FieldBase:
    q: int
    degree: int

    @property
    def size(self) -> int:
        return self.q ** self.degree

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_coeffs(value))
        value = int(value)
        if self.degree == 1:
            value %= self.q
        elif not 0 <= value < self.size:
            raise InvalidInputError(f"code {value} out of range for {self}")
        return FieldElement(self, value)

    def check(self, e: "FieldElement") -> None:
        if e.field != self:
            raise FieldMismatchError(f"element of {e.field} used in {self}")

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.size):
            yield FieldElement(self, c)

    def codes(self) -> range:
        return range(self.size)

    def coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, self.q)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.degree:
            raise InvalidInputError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        code = 0
        for c in reversed(coeffs):
            if not 0 <= int(c) < self.q:
                raise InvalidInputError(f"coefficient {c} not in F_{self.q}")
            code = code * self.q + int(c)
        return code

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def format(self, code: int) -> str:
        if self.q > len(_DIGITS):
            raise InvalidInputError("text format supports q <= 36 only")
        return "".join(_DIGITS[c] for c in self.coeffs(code))

    def parse(self, text: str) -> "FieldElement":
        return FieldElement(self, self.parse_code(text))

    def parse_code(self, text: str) -> int:
        text = text.strip().lower()
        if len(text) != self.degree:
            raise InvalidInputError(f"element {text!r} must have {self.degree} digit(s)")
        try:
            coeffs = [_DIGITS.index(ch) for ch in text]
        except ValueError:
            raise InvalidInputError(f"bad element digit in {text!r}") from None
        return self.from_coeffs(coeffs)


class PrimeField(_FieldBase):
    """The prime field F_q; element codes are the residues 0..q-1."""

    degree = 1

    def __init__(self, q: int):
        if not is_prime(q):
            raise InvalidInputError(f"q = {q} is not prime")
        self.q = q

    @property
    def token(self) -> tuple:
        return (self.q,)

    def __eq__(self, other) -> bool:
        return isinstance(other, _FieldBase) and self.token == other.token

    def __hash__(self) -> int:
        return hash(self.token)

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.q - 2, self.q)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self, 1)


class ExtField(_FieldBase):
    """F_{q^l} = F_q[x]/(p(x)) with alpha a root of the monic irreducible p."""

    def __init__(self, q: int, degree: int, modulus: Sequence[int] | None = None):
        if not is_prime(q):
            raise InvalidInputError(f"q = {q} is not prime")
        if degree < 1:
            raise InvalidInputError("extension degree must be >= 1")
        self.q = q
        self.degree = degree
        if modulus is None:
            modulus = default_modulus(q, degree)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise InvalidInputError(f"modulus {list(modulus)} must be monic of degree {degree}")
        factor = find_factor(modulus, q)
        if factor is not None:
            raise InvalidInputError(
                f"modulus {format_poly(modulus)} is reducible over F_{q}: "
                f"divisible by {format_poly(factor)}")
        self.modulus = modulus

    @property
    def token(self) -> tuple:
        # a degree-1 extension has the same element codes as the prime field
        return (self.q,) if self.degree == 1 else (self.q, self.degree, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, _FieldBase) and self.token == other.token

    def __hash__(self) -> int:
        return hash(self.token)

    def __repr__(self) -> str:
        return f"ExtField({self.q}, {self.degree}, modulus={list(self.modulus)})"

    @property
    def alpha(self) -> "FieldElement":
        if self.degree == 1:
            return FieldElement(self, -self.modulus[0] % self.q)
        return FieldElement(self, self.q)

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.q
        if self.q == 2:
            return a ^ b
        return self.from_coeffs([(x + y) % self.q for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self.degree == 1:
            return -a % self.q
        if self.q == 2:
            return a
        return self.from_coeffs([-x % self.q for x in self.coeffs(a)])

    @cached_property
    def _mul_table(self) -> list[list[int]] | None:
        if self.size > 256:
            return None
        return [[self._mul_slow(a, b) for b in range(self.size)] for a in range(self.size)]

    def _mul_slow(self, a: int, b: int) -> int:
        prod = poly_mul(self.coeffs(a), self.coeffs(b), self.q)
        rem = poly_divmod(prod, self.modulus, self.q)[1]
        return self.from_coeffs(list(rem) + [0] * (self.degree - len(rem)))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.q
        table = self._mul_table
        if table is not None:
            return table[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)


Field = PrimeField | ExtField


def default_modulus(q: int, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible (constant term compared first).

    For degree 1 the modulus x - 1 is used so that alpha = 1.
    """
    if degree == 1:
        return (q - 1, 1)
    for cand in monic_polynomials(q, degree):
        if find_factor(cand, q) is None:
            return cand
    raise AssertionError("an irreducible polynomial exists for every degree")


def ext_field_new(q: int, degree: int, modulus: Sequence[int] | None = None) -> ExtField:
    return ExtField(q, degree, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.element(other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and self.field.degree == 1:
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.token, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.format(self.value)!r} in {self.field!r})"


def frobenius(e: FieldElement, i: int) -> FieldElement:
    """e^(q^i)."""
    if i < 0:
        raise InvalidInputError("Frobenius exponent index must be >= 0")
    f = e.field
    # x -> x^(q^l) is the identity, so only i mod l matters
    return FieldElement(f, f.pow(e.value, f.q ** (i % f.degree)))


def phi_ell(e: FieldElement) -> tuple[int, ...]:
    """Coordinates of e in the basis 1, alpha, ..., alpha^(l-1)."""
    return e.coeffs


def phi_ell_inv(field: Field, vec: Sequence[int]) -> FieldElement:
    return FieldElement(field, field.from_coeffs(vec))
