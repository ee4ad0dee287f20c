"""Finite commutative rings with unity: Z/nZ, GF(p^r), and binary products.

Every ring enumerates its elements in a fixed canonical order and addresses
them by index in ``range(order)``; index 0 is always the zero element.  The
canonical representation behind an index is:

  * Z/nZ        -- the least nonnegative residue (index == residue),
  * GF(p^r)     -- a coefficient vector of length r over Z/pZ, stored as the
                   base-p digits of the index (low degree first),
  * Product     -- a pair (left, right), stored as left + |left| * right.

Scalar arithmetic works on indices; `vec_add`/`vec_mul` are the numpy
counterparts used by the enumeration and sampling hot paths.  `RingElement`
wraps (ring, index) for the user-facing API and checks ring compatibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import NotAFieldError, ParseError, RingMismatchError, ZerolabError

# Dense multiplication tables are only built for rings up to this order.
_TABLE_ORDER_LIMIT = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomials over Z/pZ (coefficient lists, low degree first) -- only
# used internally for Galois field construction and modulus validation


def _ptrim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num / den over Z/pZ; den must be nonzero."""
    rem = list(num)
    _ptrim(rem)
    ddeg = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    while len(rem) - 1 >= ddeg and rem:
        shift = len(rem) - 1 - ddeg
        factor = (rem[-1] * lead_inv) % p
        for i, dc in enumerate(den):
            rem[i + shift] = (rem[i + shift] - factor * dc) % p
        _ptrim(rem)
    return rem


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(mod)/2."""
    r = len(mod) - 1
    for d in range(1, r // 2 + 1):
        for tail in range(p**d):
            div = [0] * d + [1]
            t = tail
            for i in range(d):
                div[i] = t % p
                t //= p
            if not _pmod(mod, div, p):
                return False
    return True


def _smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over Z/pZ,
    comparing coefficient tuples low degree first."""
    from itertools import product as iproduct

    for low in iproduct(range(p), repeat=r):
        cand = list(low) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise ZerolabError(f"no irreducible polynomial of degree {r} over Z/{p}Z")


# ---------------------------------------------------------------------------
# rings


class Ring:
    """Base class; subclasses fill in order, one_index and index arithmetic."""

    order: int
    one_index: int

    # -- scalar index arithmetic -------------------------------------------

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def pow(self, a: int, e: int) -> int:
        """a**e by repeated squaring; e >= 0, with a**0 == 1."""
        result = self.one_index
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        """Multiplicative inverse by exhaustive scan; raises if a is not a unit."""
        cache = getattr(self, "_inv_cache", None)
        if cache is None:
            cache = {}
            self._inv_cache = cache
        try:
            return cache[a]
        except KeyError:
            pass
        for b in range(self.order):
            if self.mul(a, b) == self.one_index:
                cache[a] = b
                return b
        raise NotAFieldError(f"{self.format_element(a)} has no inverse in {self.spec_string()}")

    # -- vectorized index arithmetic ---------------------------------------

    def vec_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def vec_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _table(self, op) -> np.ndarray:
        if self.order > _TABLE_ORDER_LIMIT:
            raise ZerolabError(
                f"dense operation tables unsupported beyond order {_TABLE_ORDER_LIMIT}"
            )
        t = np.empty((self.order, self.order), dtype=np.int64)
        for i in range(self.order):
            for j in range(i, self.order):
                t[i, j] = t[j, i] = op(i, j)
        return t

    # -- canonical representations -----------------------------------------

    def repr_of(self, index: int):
        """Canonical representation object for an element index."""
        raise NotImplementedError

    def index_of(self, rep) -> int:
        raise NotImplementedError

    def format_element(self, index: int) -> str:
        raise NotImplementedError

    def parse_element(self, text: str, pos: int = 0) -> tuple[int, int]:
        """Parse one element literal starting at pos; return (index, next_pos)."""
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    # -- derived API ---------------------------------------------------------

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, 0)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.one_index)

    def element(self, rep) -> "RingElement":
        return RingElement(self, self.index_of(rep))

    def elements(self) -> list["RingElement"]:
        """All elements in canonical order; the first is zero."""
        return [RingElement(self, i) for i in range(self.order)]

    def iter_indices(self) -> Iterator[int]:
        return iter(range(self.order))

    def is_field(self) -> bool:
        """True iff every nonzero element has an inverse, checked exhaustively."""
        cached = getattr(self, "_is_field", None)
        if cached is None:
            cached = all(
                any(self.mul(a, b) == self.one_index for b in range(self.order))
                for a in range(1, self.order)
            )
            self._is_field = cached
        return cached

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec_string()!r})"

    def __getstate__(self):
        state = self.__dict__.copy()
        for key in ("_inv_cache", "_mul_table", "_add_table", "_is_field"):
            state.pop(key, None)
        return state


class Zmod(Ring):
    """The ring of integers modulo n, n >= 2."""

    def __init__(self, n: int):
        if n < 2:
            raise ZerolabError(f"Z/{n}Z is not a ring with unity of interest here (need n >= 2)")
        self.n = n
        self.order = n
        self.one_index = 1

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def pow(self, a, e):
        return pow(a, e, self.n)

    def vec_add(self, a, b):
        return (a + b) % self.n

    def vec_mul(self, a, b):
        return (a * b) % self.n

    def repr_of(self, index):
        return index

    def index_of(self, rep):
        if not isinstance(rep, int):
            raise ZerolabError(f"Z/{self.n}Z elements are integers, got {rep!r}")
        return rep % self.n

    def format_element(self, index):
        return str(index)

    def parse_element(self, text, pos=0):
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError(text, start, f"a residue in [0,{self.n})")
        value = int(text[start:pos])
        if value >= self.n:
            raise ParseError(text, start, f"a residue in [0,{self.n}), got {value}")
        return value, pos

    def spec_string(self):
        return f"Z{self.n}"

    def __eq__(self, other):
        return isinstance(other, Zmod) and other.n == self.n

    def __hash__(self):
        return hash(("Zmod", self.n))


class GaloisField(Ring):
    """GF(p^r) as Z/pZ[x] modulo a monic irreducible polynomial of degree r.

    The modulus is given (and stored) as a coefficient tuple of length r + 1,
    low degree first, with leading coefficient 1.  If omitted, the
    lexicographically smallest monic irreducible of degree r is used.
    """

    def __init__(self, p: int, r: int, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ZerolabError(f"GF characteristic must be prime, got {p}")
        if r < 1:
            raise ZerolabError(f"GF extension degree must be >= 1, got {r}")
        if modulus is None:
            modulus = _smallest_irreducible(p, r)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ZerolabError(f"GF modulus must be monic of degree {r}, got {modulus}")
        if not _is_irreducible(modulus, p):
            raise ZerolabError(f"GF modulus {modulus} is reducible over Z/{p}Z")
        self.p = p
        self.r = r
        self.modulus = modulus
        self.order = p**r
        self.one_index = 1
        self._default_modulus = modulus == _smallest_irreducible(p, r)
        # x^i reduced mod the modulus, for i in [r, 2r-2]; used by mul
        self._xpow: list[list[int]] = []
        xp = [0] * r + [1]
        for _ in range(r, 2 * r - 1):
            red = _pmod(xp, list(modulus), p)
            self._xpow.append(red + [0] * (r - len(red)))
            xp = [0] + xp

    def _digits(self, index: int) -> list[int]:
        out = []
        for _ in range(self.r):
            out.append(index % self.p)
            index //= self.p
        return out

    def _index(self, digits: Sequence[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d
        return out

    def add(self, a, b):
        p = self.p
        out = 0
        place = 1
        for _ in range(self.r):
            out += ((a + b) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a):
        p = self.p
        out = 0
        place = 1
        for _ in range(self.r):
            out += ((-a) % p) * place
            a //= p
            place *= p
        return out

    def mul(self, a, b):
        p, r = self.p, self.r
        da, db = self._digits(a), self._digits(b)
        conv = [0] * (2 * r - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:r]
        for i in range(r, 2 * r - 1):
            c = conv[i]
            if c:
                red = self._xpow[i - r]
                for k in range(r):
                    out[k] = (out[k] + c * red[k]) % p
        return self._index(out)

    def vec_add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        t = getattr(self, "_add_table", None)
        if t is None:
            t = self._table(self.add)
            self._add_table = t
        return t[a, b]

    def vec_mul(self, a, b):
        if self.r == 1:
            return (a * b) % self.p
        t = getattr(self, "_mul_table", None)
        if t is None:
            t = self._table(self.mul)
            self._mul_table = t
        return t[a, b]

    def is_field(self):
        return True

    def repr_of(self, index):
        return tuple(self._digits(index))

    def index_of(self, rep):
        if isinstance(rep, int):
            rep = (rep,) + (0,) * (self.r - 1)
        rep = tuple(rep)
        if len(rep) != self.r:
            raise ZerolabError(
                f"GF({self.order}) elements are coefficient vectors of length {self.r}"
            )
        return self._index([c % self.p for c in rep])

    def format_element(self, index):
        if self.r == 1:
            return str(index)
        return "[" + ",".join(str(d) for d in self._digits(index)) + "]"

    def parse_element(self, text, pos=0):
        if self.r == 1:
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise ParseError(text, start, f"a residue in [0,{self.p})")
            value = int(text[start:pos])
            if value >= self.p:
                raise ParseError(text, start, f"a residue in [0,{self.p}), got {value}")
            return value, pos
        if pos >= len(text) or text[pos] != "[":
            raise ParseError(text, pos, f"'[' opening a GF({self.order}) coefficient vector")
        pos += 1
        digits = []
        for i in range(self.r):
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise ParseError(text, start, f"a coefficient in [0,{self.p})")
            digits.append(int(text[start:pos]) % self.p)
            if i < self.r - 1:
                if pos >= len(text) or text[pos] != ",":
                    raise ParseError(text, pos, "','")
                pos += 1
        if pos >= len(text) or text[pos] != "]":
            raise ParseError(text, pos, "']'")
        return self._index(digits), pos + 1

    def spec_string(self):
        if self._default_modulus:
            return f"GF({self.order})"
        return f"GF({self.order};mod={_format_modulus(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and other.p == self.p
            and other.r == self.r
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GaloisField", self.p, self.r, self.modulus))


class ProductRing(Ring):
    """Direct product of two rings; elements are pairs, unity is (1, 1)."""

    def __init__(self, left: Ring, right: Ring):
        self.left = left
        self.right = right
        self.order = left.order * right.order
        self.one_index = left.one_index + left.order * right.one_index

    def _split(self, a: int) -> tuple[int, int]:
        return a % self.left.order, a // self.left.order

    def _join(self, al: int, ar: int) -> int:
        return al + self.left.order * ar

    def add(self, a, b):
        al, ar = self._split(a)
        bl, br = self._split(b)
        return self._join(self.left.add(al, bl), self.right.add(ar, br))

    def mul(self, a, b):
        al, ar = self._split(a)
        bl, br = self._split(b)
        return self._join(self.left.mul(al, bl), self.right.mul(ar, br))

    def neg(self, a):
        al, ar = self._split(a)
        return self._join(self.left.neg(al), self.right.neg(ar))

    def vec_add(self, a, b):
        al, ar = a % self.left.order, a // self.left.order
        bl, br = b % self.left.order, b // self.left.order
        return self.left.vec_add(al, bl) + self.left.order * self.right.vec_add(ar, br)

    def vec_mul(self, a, b):
        al, ar = a % self.left.order, a // self.left.order
        bl, br = b % self.left.order, b // self.left.order
        return self.left.vec_mul(al, bl) + self.left.order * self.right.vec_mul(ar, br)

    def is_field(self):
        return False  # (1,0)*(0,1) = 0: proper products always have zero divisors

    def repr_of(self, index):
        al, ar = self._split(index)
        return (self.left.repr_of(al), self.right.repr_of(ar))

    def index_of(self, rep):
        l, r = rep
        return self._join(self.left.index_of(l), self.right.index_of(r))

    def format_element(self, index):
        al, ar = self._split(index)
        return f"({self.left.format_element(al)},{self.right.format_element(ar)})"

    def parse_element(self, text, pos=0):
        if pos >= len(text) or text[pos] != "(":
            raise ParseError(text, pos, "'(' opening a product-ring pair")
        al, pos = self.left.parse_element(text, pos + 1)
        if pos >= len(text) or text[pos] != ",":
            raise ParseError(text, pos, "','")
        ar, pos = self.right.parse_element(text, pos + 1)
        if pos >= len(text) or text[pos] != ")":
            raise ParseError(text, pos, "')'")
        return self._join(al, ar), pos + 1

    def spec_string(self):
        return f"{self.left.spec_string()}x{self.right.spec_string()}"

    def __eq__(self, other):
        return (
            isinstance(other, ProductRing)
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self):
        return hash(("ProductRing", self.left, self.right))


@dataclass(frozen=True)
class RingElement:
    """An element of a specific ring, addressed by canonical index."""

    ring: Ring
    index: int

    @property
    def rep(self):
        return self.ring.repr_of(self.index)

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise RingMismatchError(f"cannot combine a ring element with {other!r}")
        if other.ring != self.ring:
            raise RingMismatchError(
                f"mixed rings: {self.ring.spec_string()} vs {other.ring.spec_string()}"
            )

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.add(self.index, other.index))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.add(self.index, self.ring.neg(other.index)))

    def __mul__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.mul(self.index, other.index))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.index))

    def __pow__(self, e: int):
        if e < 0:
            raise ZerolabError("negative powers are not defined in a general ring")
        return RingElement(self.ring, self.ring.pow(self.index, e))

    def __bool__(self):
        return self.index != 0

    def __str__(self):
        return self.ring.format_element(self.index)

    def __repr__(self):
        return f"<{self} in {self.ring.spec_string()}>"


def enumerate_elements(ring: Ring) -> list[RingElement]:
    """All ring elements in canonical order (zero first, stable across runs)."""
    return ring.elements()


def is_field(ring: Ring) -> bool:
    return ring.is_field()


# ---------------------------------------------------------------------------
# ring spec grammar: Z4 | GF(9) | GF(8;mod=x^3+x+1) | Z2xZ2 (left associative)


def _format_modulus(modulus: Sequence[int]) -> str:
    terms = []
    for e in range(len(modulus) - 1, -1, -1):
        c = modulus[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "x" if e == 1 else f"x^{e}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "+".join(terms) if terms else "0"


def _parse_modulus(text: str, pos: int, end: int, p: int) -> list[int]:
    """Parse a univariate polynomial in x over Z/pZ from text[pos:end]."""
    coeffs: dict[int, int] = {}
    while pos < end:
        coeff = 1
        exp = 0
        saw_coeff = False
        start = pos
        while pos < end and text[pos].isdigit():
            pos += 1
        if pos > start:
            coeff = int(text[start:pos])
            saw_coeff = True
            if pos < end and text[pos] == "*":
                pos += 1
        if pos < end and text[pos] == "x":
            pos += 1
            exp = 1
            if pos < end and text[pos] == "^":
                pos += 1
                start = pos
                while pos < end and text[pos].isdigit():
                    pos += 1
                if pos == start:
                    raise ParseError(text, pos, "an exponent")
                exp = int(text[start:pos])
        elif not saw_coeff:
            raise ParseError(text, pos, "a coefficient or 'x'")
        coeffs[exp] = (coeffs.get(exp, 0) + coeff) % p
        if pos < end:
            if text[pos] != "+":
                raise ParseError(text, pos, "'+' between modulus terms")
            pos += 1
            if pos == end:
                raise ParseError(text, pos, "a term after '+'")
    if not coeffs:
        raise ParseError(text, pos, "a nonempty modulus polynomial")
    deg = max(coeffs)
    return [coeffs.get(e, 0) for e in range(deg + 1)]


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if _is_prime(p) and q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m == 1:
                return p, r
            break
    raise ZerolabError(f"{q} is not a prime power")


def _parse_ring_atom(text: str, pos: int) -> tuple[Ring, int]:
    if text.startswith("GF(", pos):
        open_pos = pos + 2
        depth = 1
        end = open_pos + 1
        while end < len(text) and depth:
            if text[end] == "(":
                depth += 1
            elif text[end] == ")":
                depth -= 1
            end += 1
        if depth:
            raise ParseError(text, len(text), "')' closing GF(...)")
        inner = text[open_pos + 1 : end - 1]
        base = open_pos + 1
        semi = inner.find(";")
        q_text = inner if semi < 0 else inner[:semi]
        if not q_text.isdigit():
            raise ParseError(text, base, "a prime-power field order")
        try:
            p, r = _factor_prime_power(int(q_text))
        except ZerolabError:
            raise ParseError(text, base, f"a prime-power field order, got {q_text}") from None
        modulus = None
        if semi >= 0:
            rest = inner[semi + 1 :]
            if not rest.startswith("mod="):
                raise ParseError(text, base + semi + 1, "'mod='")
            mod_start = base + semi + 5
            modulus = _parse_modulus(text, mod_start, end - 1, p)
        try:
            return GaloisField(p, r, modulus), end
        except ZerolabError as exc:
            raise ParseError(text, pos, f"a valid field spec ({exc})") from None
    if text.startswith("Z", pos):
        start = pos + 1
        end = start
        while end < len(text) and text[end].isdigit():
            end += 1
        if end == start:
            raise ParseError(text, start, "a modulus after 'Z'")
        n = int(text[start:end])
        if n < 2:
            raise ParseError(text, start, f"a modulus >= 2, got {n}")
        return Zmod(n), end
    raise ParseError(text, pos, "a ring atom ('Z<n>' or 'GF(...)')")


def ring_from_string(spec: str) -> Ring:
    """Parse a ring spec like ``Z4``, ``GF(9)``, ``GF(8;mod=x^3+x+1)``, ``Z2xZ2``."""
    spec = spec.strip()
    ring, pos = _parse_ring_atom(spec, 0)
    while pos < len(spec):
        if spec[pos] != "x":
            raise ParseError(spec, pos, "'x' between product factors or end of input")
        right, pos = _parse_ring_atom(spec, pos + 1)
        ring = ProductRing(ring, right)
    return ring
