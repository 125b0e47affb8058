"""Ranking and unranking of combinatorial families.

Every family is a bijection between its objects and ``range(M)``.  Objects
are plain Python values:

* combinations / subsets: ascending tuple of ints in ``range(n)``
* permutations: tuple holding each of ``0..n-1`` once
* Dyck paths: string over ``"E"`` / ``"N"`` of length ``2n``
* words: tuple of letters in ``range(A)``

All counts are exact Python integers.  The module-level functions are the
reference routines; the ``*Codec`` classes bind a family to its parameters,
cache a Pascal table and add enumeration/formatting helpers.
"""

from __future__ import annotations

from bisect import bisect_right
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError, RangeError, ValidationError

FAMILIES = (
    "combinations",
    "bounded-combinations",
    "subsets",
    "permutations-lehmer",
    "permutations-mr",
    "dyck",
    "words",
)


def binomial_table(n: int, kmax: int | None = None) -> list[list[int]]:
    """Pascal triangle ``T[a][b] = C(a, b)`` for ``0 <= a <= n``, ``0 <= b <= kmax``."""
    if kmax is None:
        kmax = n
    table = [[0] * (kmax + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        table[a][0] = 1
        for b in range(1, min(a, kmax) + 1):
            table[a][b] = table[a - 1][b - 1] + (table[a - 1][b] if b <= a - 1 else 0)
    return table


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def num_dyck(i: int, j: int) -> int:
    """Number of E/N lattice paths from (0, 0) to (i, j) never rising above y = x.

    Ballot number ``C(i+j, j) - C(i+j, j-1)``; zero when ``j > i``.
    """
    if i < 0 or j < 0 or j > i:
        return 0
    if j == 0:
        return 1
    return comb(i + j, j) - comb(i + j, j - 1)


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0 or k > n:
        raise ParameterError(f"need 0 <= k <= n, got n={n}, k={k}")


def _normalize_orders(n: int, orders: Iterable[int]) -> tuple[int, ...]:
    orders = tuple(sorted(set(int(k) for k in orders)))
    if not orders:
        raise ParameterError("at least one subset size is required")
    if orders[0] < 0 or orders[-1] > n:
        raise ParameterError(f"subset sizes must lie in [0, {n}], got {orders}")
    return orders


def domain_size(family: str, **params) -> int:
    """Exact number of objects ``M`` of a family.

    >>> domain_size("combinations", n=4, k=2)
    6
    >>> domain_size("bounded-combinations", n=4, K=2)
    11
    """
    if family == "combinations":
        _check_nk(params["n"], params["k"])
        return comb(params["n"], params["k"])
    if family == "bounded-combinations":
        n, K = params["n"], params["K"]
        kmin = params.get("Kmin", 0)
        _check_nk(n, K)
        if not 0 <= kmin <= K:
            raise ParameterError(f"need 0 <= Kmin <= K, got Kmin={kmin}, K={K}")
        return sum(comb(n, k) for k in range(kmin, K + 1))
    if family == "subsets":
        n = params["n"]
        if n < 0:
            raise ParameterError("n must be nonnegative")
        return sum(comb(n, k) for k in _normalize_orders(n, params["orders"]))
    if family in ("permutations-lehmer", "permutations-mr", "permutations"):
        n = params["n"]
        if n < 1:
            raise ParameterError("permutations need n >= 1")
        return factorial(n)
    if family == "dyck":
        if params["n"] < 0:
            raise ParameterError("n must be nonnegative")
        return catalan(params["n"])
    if family == "words":
        A, L = params["A"], params["L"]
        if A < 1 or L < 0:
            raise ParameterError(f"need A >= 1 and L >= 0, got A={A}, L={L}")
        return A**L
    raise ParameterError(f"unknown family {family!r}")


# -- combinations -----------------------------------------------------------


def validate_combination(c: Sequence[int], n: int, k: int | None = None) -> tuple[int, ...]:
    c = tuple(int(x) for x in c)
    if k is not None and len(c) != k:
        raise ValidationError(f"expected {k} elements, got {len(c)}")
    for a, b in zip(c, c[1:]):
        if a >= b:
            raise ValidationError(f"combination {c} is not strictly ascending")
    if c and (c[0] < 0 or c[-1] >= n):
        raise ValidationError(f"combination {c} has elements outside [0, {n})")
    return c


def rank_combination(c: Sequence[int], n: int) -> int:
    """Colexicographic rank ``sum_j C(c_j, j)`` over ascending elements, j from 1."""
    c = validate_combination(c, n)
    return sum(comb(x, j) for j, x in enumerate(c, start=1))


def unrank_combination(r: int, n: int, k: int) -> tuple[int, ...]:
    _check_nk(n, k)
    if not 0 <= r < comb(n, k):
        raise RangeError(f"rank {r} outside [0, C({n},{k}))")
    out = []
    x = n - 1
    for j in range(k, 0, -1):
        # largest x with C(x, j) <= r
        while comb(x, j) > r:
            x -= 1
        out.append(x)
        r -= comb(x, j)
        x -= 1
    return tuple(reversed(out))


def bits_to_combination(bits: str | Sequence[int], k: int | None = None) -> tuple[int, ...]:
    """Positions of set bits, ``bits[j]`` being ``x_j``."""
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise ValidationError(f"not a bitstring: {bits!r}")
        bits = [int(ch) for ch in bits]
    c = tuple(j for j, b in enumerate(bits) if b)
    if k is not None and len(c) != k:
        raise ValidationError(f"bitstring has {len(c)} set bits, expected {k}")
    return c


def combination_to_bits(c: Sequence[int], n: int) -> str:
    c = validate_combination(c, n)
    bits = ["0"] * n
    for j in c:
        bits[j] = "1"
    return "".join(bits)


def rank_subset(c: Sequence[int], n: int, orders: Iterable[int]) -> int:
    """Rank among all subsets whose size is in ``orders``: by size, then colex."""
    orders = _normalize_orders(n, orders)
    c = validate_combination(c, n)
    if len(c) not in orders:
        raise ValidationError(f"subset size {len(c)} not among allowed sizes {orders}")
    offset = sum(comb(n, k) for k in orders if k < len(c))
    return offset + rank_combination(c, n)


def unrank_subset(r: int, n: int, orders: Iterable[int]) -> tuple[int, ...]:
    orders = _normalize_orders(n, orders)
    if r < 0:
        raise RangeError(f"rank {r} is negative")
    for k in orders:
        block = comb(n, k)
        if r < block:
            return unrank_combination(r, n, k)
        r -= block
    raise RangeError("rank exceeds the number of subsets")


def rank_bounded_combination(c: Sequence[int], n: int, K: int) -> int:
    """Rank among combinations of at most ``K`` elements."""
    _check_nk(n, K)
    if len(c) > K:
        raise ValidationError(f"combination has {len(c)} > K={K} elements")
    return rank_subset(c, n, range(K + 1))


def unrank_bounded_combination(r: int, n: int, K: int) -> tuple[int, ...]:
    _check_nk(n, K)
    return unrank_subset(r, n, range(K + 1))


# -- permutations -----------------------------------------------------------


def validate_permutation(pi: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    pi = tuple(int(x) for x in pi)
    if n is not None and len(pi) != n:
        raise ValidationError(f"expected a permutation of length {n}, got {len(pi)}")
    if not pi or sorted(pi) != list(range(len(pi))):
        raise ValidationError(f"{pi} is not a permutation of 0..{len(pi) - 1}")
    return pi


def inverse_permutation(pi: Sequence[int]) -> list[int]:
    inv = [0] * len(pi)
    for i, x in enumerate(pi):
        inv[x] = i
    return inv


def rank_permutation_mr(pi: Sequence[int]) -> int:
    """Myrvold-Ruskey linear-time rank (iterative form of the recursive swap rule)."""
    pi = list(validate_permutation(pi))
    inv = inverse_permutation(pi)
    r = 0
    weight = 1
    for m in range(len(pi), 1, -1):
        s = pi[m - 1]
        j = inv[m - 1]
        pi[m - 1], pi[j] = pi[j], pi[m - 1]
        inv[s], inv[m - 1] = inv[m - 1], inv[s]
        r += s * weight
        weight *= m
    return r


def unrank_permutation_mr(r: int, n: int) -> tuple[int, ...]:
    if n < 1:
        raise ParameterError("permutations need n >= 1")
    if not 0 <= r < factorial(n):
        raise RangeError(f"rank {r} outside [0, {n}!)")
    pi = list(range(n))
    for m in range(n, 0, -1):
        r, s = divmod(r, m)
        pi[m - 1], pi[s] = pi[s], pi[m - 1]
    return tuple(pi)


def lehmer_code(pi: Sequence[int]) -> list[int]:
    """``d_i = #{j > i : pi_j < pi_i}``."""
    pi = validate_permutation(pi)
    n = len(pi)
    return [sum(1 for j in range(i + 1, n) if pi[j] < pi[i]) for i in range(n)]


def rank_permutation_lehmer(pi: Sequence[int]) -> int:
    """Lexicographic rank by Horner evaluation of the Lehmer digits."""
    d = lehmer_code(pi)
    n = len(d)
    r = 0
    for i in range(n - 1):
        r = (r + d[i]) * (n - 1 - i)
    return r


def unrank_permutation_lehmer(r: int, n: int) -> tuple[int, ...]:
    if n < 1:
        raise ParameterError("permutations need n >= 1")
    if not 0 <= r < factorial(n):
        raise RangeError(f"rank {r} outside [0, {n}!)")
    digits = []
    for base in range(1, n + 1):
        r, d = divmod(r, base)
        digits.append(d)
    digits.reverse()
    pool = list(range(n))
    return tuple(pool.pop(d) for d in digits)


# -- Dyck paths -------------------------------------------------------------


def validate_dyck(path: str, n: int | None = None) -> str:
    if not isinstance(path, str) or set(path) - {"E", "N"}:
        raise ValidationError(f"Dyck path must be a string over 'E'/'N', got {path!r}")
    if n is not None and len(path) != 2 * n:
        raise ValidationError(f"expected {2 * n} steps, got {len(path)}")
    if len(path) % 2:
        raise ValidationError("Dyck path has odd length")
    east = north = 0
    for step in path:
        if step == "E":
            east += 1
        else:
            north += 1
            if north > east:
                raise ValidationError(f"{path} rises above the diagonal")
    if east != north:
        raise ValidationError(f"{path} does not end on the diagonal")
    return path


def _completions(n: int, east: int, north: int) -> int:
    # sub-diagonal paths from (east, north) to (n, n); reflect onto num_dyck
    return num_dyck(n - north, n - east)


def rank_dyck(path: str) -> int:
    """Lexicographic rank (E before N) via cumulative ballot numbers."""
    path = validate_dyck(path)
    n = len(path) // 2
    r = 0
    east = north = 0
    for step in path:
        if step == "N":
            if east < n:
                r += _completions(n, east + 1, north)
            north += 1
        else:
            east += 1
    return r


def unrank_dyck(r: int, n: int) -> str:
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if not 0 <= r < catalan(n):
        raise RangeError(f"rank {r} outside [0, Catalan({n}))")
    steps = []
    east = north = 0
    for _ in range(2 * n):
        below = _completions(n, east + 1, north) if east < n else 0
        if r < below:
            steps.append("E")
            east += 1
        else:
            r -= below
            steps.append("N")
            north += 1
    return "".join(steps)


# -- words ------------------------------------------------------------------


def validate_word(w: Sequence[int], A: int, L: int | None = None) -> tuple[int, ...]:
    w = tuple(int(x) for x in w)
    if L is not None and len(w) != L:
        raise ValidationError(f"expected a word of length {L}, got {len(w)}")
    if any(not 0 <= x < A for x in w):
        raise ValidationError(f"word {w} has letters outside [0, {A})")
    return w


def rank_word(w: Sequence[int], A: int) -> int:
    """Base-``A`` value, first letter most significant."""
    r = 0
    for x in validate_word(w, A):
        r = r * A + x
    return r


def unrank_word(r: int, A: int, L: int) -> tuple[int, ...]:
    if A < 1 or L < 0:
        raise ParameterError(f"need A >= 1 and L >= 0, got A={A}, L={L}")
    if not 0 <= r < A**L:
        raise RangeError(f"rank {r} outside [0, {A}^{L})")
    out = [0] * L
    for i in range(L - 1, -1, -1):
        r, out[i] = divmod(r, A)
    return tuple(out)


# -- codecs -----------------------------------------------------------------


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("{}[]()").strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise ValidationError(f"cannot parse integer list from {text!r}") from None


class DomainCodec:
    """A combinatorial family bound to fixed parameters.

    Subclasses provide ``rank``, ``unrank`` and ``validate``; ``size`` is the
    exact object count ``M``.
    """

    family: str
    size: int

    def rank(self, obj) -> int:
        raise NotImplementedError

    def unrank(self, r: int):
        raise NotImplementedError

    def validate(self, obj):
        raise NotImplementedError

    def __iter__(self) -> Iterator:
        for r in range(self.size):
            yield self.unrank(r)

    def format(self, obj) -> str:
        return ",".join(str(x) for x in obj)

    def parse(self, text: str):
        return self.validate(_parse_ints(text))

    # object -> computational basis state, for embedding checks
    def basis_index(self, obj) -> int:
        raise NotImplementedError(f"{self.family} has no default bit encoding")

    @property
    def num_bits(self) -> int:
        raise NotImplementedError(f"{self.family} has no default bit encoding")

    def params(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({args})"


class SubsetCodec(DomainCodec):
    """Subsets of ``range(n)`` whose size lies in ``orders``, ranked by size then colex."""

    family = "subsets"

    def __init__(self, n: int, orders: Iterable[int]):
        if n < 0:
            raise ParameterError("n must be nonnegative")
        self.n = n
        self.orders = _normalize_orders(n, orders)
        self._binom = binomial_table(n, self.orders[-1])
        starts = [0]
        for k in self.orders:
            starts.append(starts[-1] + self._binom[n][k])
        self._starts = tuple(starts)
        self.size = starts[-1]

    def params(self) -> dict:
        return {"n": self.n, "orders": list(self.orders)}

    def validate(self, obj) -> tuple[int, ...]:
        c = validate_combination(obj, self.n)
        if len(c) not in self.orders:
            raise ValidationError(f"subset size {len(c)} not among allowed sizes {self.orders}")
        return c

    def rank(self, obj) -> int:
        c = self.validate(obj)
        block = self.orders.index(len(c))
        B = self._binom
        return self._starts[block] + sum(B[x][j] for j, x in enumerate(c, start=1))

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < self.size:
            raise RangeError(f"rank {r} outside [0, {self.size})")
        block = bisect_right(self._starts, r) - 1
        r -= self._starts[block]
        B = self._binom
        out = []
        x = self.n - 1
        for j in range(self.orders[block], 0, -1):
            while B[x][j] > r:
                x -= 1
            out.append(x)
            r -= B[x][j]
            x -= 1
        return tuple(reversed(out))

    def format(self, obj) -> str:
        return "{" + ",".join(str(x) for x in obj) + "}"

    def to_bits(self, obj) -> str:
        return combination_to_bits(self.validate(obj), self.n)

    def from_bits(self, bits: str) -> tuple[int, ...]:
        if len(bits) != self.n:
            raise ValidationError(f"expected {self.n} bits, got {len(bits)}")
        return self.validate(bits_to_combination(bits))

    def basis_index(self, obj) -> int:
        return int(self.to_bits(obj), 2) if self.n else 0

    @property
    def num_bits(self) -> int:
        return self.n


class CombinationCodec(SubsetCodec):
    family = "combinations"

    def __init__(self, n: int, k: int):
        _check_nk(n, k)
        super().__init__(n, (k,))
        self.k = k

    def params(self) -> dict:
        return {"n": self.n, "k": self.k}


class BoundedCombinationCodec(SubsetCodec):
    """Combinations with between ``Kmin`` and ``K`` elements."""

    family = "bounded-combinations"

    def __init__(self, n: int, K: int, Kmin: int = 0):
        _check_nk(n, K)
        if not 0 <= Kmin <= K:
            raise ParameterError(f"need 0 <= Kmin <= K, got Kmin={Kmin}, K={K}")
        super().__init__(n, range(Kmin, K + 1))
        self.K = K
        self.Kmin = Kmin

    def params(self) -> dict:
        out = {"n": self.n, "K": self.K}
        if self.Kmin:
            out["Kmin"] = self.Kmin
        return out


class PermutationCodec(DomainCodec):
    def __init__(self, n: int, method: str = "lehmer"):
        if n < 1:
            raise ParameterError("permutations need n >= 1")
        if method not in ("lehmer", "mr"):
            raise ParameterError(f"unknown permutation ranking {method!r}")
        self.n = n
        self.method = method
        self.family = f"permutations-{method}"
        self.size = factorial(n)

    def params(self) -> dict:
        return {"n": self.n}

    def validate(self, obj) -> tuple[int, ...]:
        return validate_permutation(obj, self.n)

    def rank(self, obj) -> int:
        if self.method == "lehmer":
            return rank_permutation_lehmer(self.validate(obj))
        return rank_permutation_mr(self.validate(obj))

    def unrank(self, r: int) -> tuple[int, ...]:
        if self.method == "lehmer":
            return unrank_permutation_lehmer(r, self.n)
        return unrank_permutation_mr(r, self.n)


class DyckCodec(DomainCodec):
    family = "dyck"

    def __init__(self, n: int):
        if n < 0:
            raise ParameterError("n must be nonnegative")
        self.n = n
        self.size = catalan(n)

    def params(self) -> dict:
        return {"n": self.n}

    def validate(self, obj) -> str:
        return validate_dyck(obj, self.n)

    def rank(self, obj) -> int:
        return rank_dyck(self.validate(obj))

    def unrank(self, r: int) -> str:
        return unrank_dyck(r, self.n)

    def format(self, obj) -> str:
        return obj

    def parse(self, text: str) -> str:
        return self.validate(text.strip().upper())

    def basis_index(self, obj) -> int:
        # E -> 0, N -> 1 over 2n bits
        return int(self.validate(obj).replace("E", "0").replace("N", "1") or "0", 2)

    @property
    def num_bits(self) -> int:
        return 2 * self.n


class WordCodec(DomainCodec):
    family = "words"

    def __init__(self, A: int, L: int):
        if A < 1 or L < 0:
            raise ParameterError(f"need A >= 1 and L >= 0, got A={A}, L={L}")
        self.A = A
        self.L = L
        self.size = A**L

    def params(self) -> dict:
        return {"A": self.A, "L": self.L}

    def validate(self, obj) -> tuple[int, ...]:
        return validate_word(obj, self.A, self.L)

    def rank(self, obj) -> int:
        return rank_word(self.validate(obj), self.A)

    def unrank(self, r: int) -> tuple[int, ...]:
        return unrank_word(r, self.A, self.L)

    def basis_index(self, obj) -> int:
        if self.A != 2:
            raise NotImplementedError("only binary words have a default bit encoding")
        return self.rank(obj)

    @property
    def num_bits(self) -> int:
        if self.A != 2:
            raise NotImplementedError("only binary words have a default bit encoding")
        return self.L


def make_codec(family: str, **params) -> DomainCodec:
    """Build a codec from a family tag and its parameters."""
    try:
        if family == "combinations":
            return CombinationCodec(params["n"], params["k"])
        if family == "bounded-combinations":
            return BoundedCombinationCodec(params["n"], params["K"], params.get("Kmin", 0))
        if family == "subsets":
            return SubsetCodec(params["n"], params["orders"])
        if family == "permutations":
            return PermutationCodec(params["n"], params.get("method", "lehmer"))
        if family == "permutations-lehmer":
            return PermutationCodec(params["n"], "lehmer")
        if family == "permutations-mr":
            return PermutationCodec(params["n"], "mr")
        if family == "dyck":
            return DyckCodec(params["n"])
        if family == "words":
            return WordCodec(params["A"], params["L"])
    except KeyError as exc:
        raise ParameterError(f"family {family!r} requires parameter {exc.args[0]!r}") from None
    raise ParameterError(f"unknown family {family!r}")
