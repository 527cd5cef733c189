"""Linear rank-metric codes: the standard MRD family, rank distributions,
given-rank lower bounds, rank-restricted subsets, and lifting to subspaces.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (BadArguments, BadShape, TooLargeToEnumerate,
                     VerificationFailed)
from .gf import expand_rows, ext_new, field_new, frobenius
from .linalg import MatGF, gaussian_binomial, rank

ENUM_CAP = 2 ** 20          # hard cap for full code enumeration
EXHAUSTIVE_RANK_CAP = 2 ** 16   # full min-rank verification below this size
SAMPLE_SEED = 20240601
SAMPLE_COUNT = 1000


@dataclass(frozen=True)
class LinearMatrixCode:
    """GF(q)-linear space of m x n matrices given by a basis."""

    q: int
    m: int
    n: int
    basis: tuple
    delta: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q ** self.dim

    def is_enumerable(self, cap=ENUM_CAP) -> bool:
        return self.size <= cap

    def zero(self) -> MatGF:
        return MatGF.zeros(self.q, self.m, self.n)

    def codewords(self):
        """All codewords, in lexicographic order of coefficient vectors."""
        if not self.is_enumerable():
            raise TooLargeToEnumerate(f"{self.size} codewords exceed cap {ENUM_CAP}")
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            yield self.combine(coeffs)

    def combine(self, coeffs) -> MatGF:
        f = field_new(self.q)
        rows = [[0] * self.n for _ in range(self.m)]
        for c, B in zip(coeffs, self.basis):
            if c:
                for i in range(self.m):
                    br = B.data[i]
                    rr = rows[i]
                    for j in range(self.n):
                        if br[j]:
                            rr[j] = f.add(rr[j], f.mul(c, br[j]))
        return MatGF(self.q, rows)

    def transpose(self) -> "LinearMatrixCode":
        return LinearMatrixCode(self.q, self.n, self.m,
                                tuple(B.transpose() for B in self.basis), self.delta)


@dataclass(frozen=True)
class MatrixSet:
    """Explicit set of m x n matrices with a claimed minimum rank distance."""

    q: int
    m: int
    n: int
    members: tuple
    delta: int

    @property
    def size(self) -> int:
        return len(self.members)


def _basis_independent(q, basis) -> bool:
    if not basis:
        return True
    flat = MatGF(q, [B.flatten() for B in basis])
    return rank(flat) == len(basis)


def _min_nonzero_rank_exhaustive(code: LinearMatrixCode) -> int:
    best = min(code.m, code.n) + 1
    for W in code.codewords():
        if not W.is_zero():
            best = min(best, rank(W))
    return best


def _min_nonzero_rank_sampled(code: LinearMatrixCode) -> int:
    rng = random.Random(SAMPLE_SEED)
    best = min(code.m, code.n)
    for _ in range(SAMPLE_COUNT):
        coeffs = [rng.randrange(code.q) for _ in range(code.dim)]
        if not any(coeffs):
            coeffs[rng.randrange(code.dim)] = 1 + rng.randrange(code.q - 1)
        best = min(best, rank(code.combine(coeffs)))
    return best


def verify_min_rank(code: LinearMatrixCode):
    """Check the claimed minimum rank distance, exhaustively when small."""
    if code.dim == 0:
        return
    if code.size <= EXHAUSTIVE_RANK_CAP:
        got = _min_nonzero_rank_exhaustive(code)
        if got < code.delta:
            raise VerificationFailed(
                f"min nonzero rank {got} below claimed {code.delta}")
    else:
        got = _min_nonzero_rank_sampled(code)
        if got < code.delta:
            raise VerificationFailed(
                f"sampled nonzero rank {got} below claimed {code.delta}")


def gabidulin(q: int, m: int, n: int, delta: int, verify: bool = True) -> LinearMatrixCode:
    """Linear MRD code of m x n matrices with min rank distance delta.

    Codewords expand evaluations of the degree-restricted q-power polynomials
    at the fixed polynomial basis points, so the code is deterministic and the
    families for different delta at the same (q, m, n) are nested.
    """
    if delta < 1 or delta > min(m, n):
        raise BadShape(f"need 1 <= delta <= min(m, n), got delta={delta}, m={m}, n={n}")
    if m < n:
        return gabidulin(q, n, m, delta, verify=verify).transpose()
    ext = ext_new(q, m)
    points = ext.basis()[:n]
    basis = []
    for i in range(n - delta + 1):
        frob_pts = [frobenius(ext, p, i) for p in points]
        for b in ext.basis():
            word = [ext.mul(b, fp) for fp in frob_pts]
            basis.append(expand_rows(ext, word))
    code = LinearMatrixCode(q, m, n, tuple(basis), delta)
    if not _basis_independent(q, code.basis):
        raise VerificationFailed("basis not linearly independent")
    if verify:
        verify_min_rank(code)
    return code


def _binom2(i: int) -> int:
    return i * (i - 1) // 2


def rank_distribution(q: int, m: int, n: int, delta: int, r: int) -> int:
    """Number of rank-r codewords in the (q, m, n, delta) MRD family.

    By convention r = 0 counts the zero matrix (1) and 0 < r < delta counts
    nothing, which makes the size identity a testable invariant.
    """
    mn, mx = min(m, n), max(m, n)
    if r < 0 or r > mn:
        raise BadArguments(f"rank r={r} outside 0..min(m,n)={mn}")
    if r == 0:
        return 1
    if r < delta:
        return 0
    total = 0
    for i in range(r - delta + 1):
        term = q ** _binom2(i) * gaussian_binomial(r, i, q) \
            * (q ** (mx * (r - i - delta + 1)) - 1)
        total += -term if i % 2 else term
    result = gaussian_binomial(mn, r, q) * total
    if result < 0:
        raise VerificationFailed("negative rank distribution value")
    return result


def grmc_lower_bound(q: int, m: int, n: int, delta: int, t1: int, t2: int) -> int:
    """Guaranteed size of a rank-metric code whose codeword ranks lie in
    [t1, t2]: the full rank census when t2 >= delta, otherwise the best
    coset-packing quotient (exact ceiling division)."""
    mn, mx = min(m, n), max(m, n)
    if delta < 1 or delta > mn:
        raise BadArguments("delta outside 1..min(m,n)")
    if not 0 <= t1 <= t2 or t2 > mn:
        raise BadArguments(f"need 0 <= t1 <= t2 <= min(m,n), got {t1}, {t2}")
    if t2 == 0:
        return 1
    if t2 >= delta:
        return sum(rank_distribution(q, m, n, delta, i) for i in range(t1, t2 + 1))
    best = 0
    for a in range(max(1, t1), delta):
        num = sum(rank_distribution(q, m, n, a, i) for i in range(max(1, t1), t2 + 1))
        den = q ** (mx * (delta - a)) - 1
        best = max(best, -(-num // den))
    return best


def restrict_ranks(code: LinearMatrixCode, t2: int) -> MatrixSet:
    """Subset of codewords with rank at most t2 (includes the zero matrix)."""
    if not code.is_enumerable():
        raise TooLargeToEnumerate(f"code size {code.size} exceeds cap {ENUM_CAP}")
    members = tuple(W for W in code.codewords() if rank(W) <= t2)
    return MatrixSet(code.q, code.m, code.n, members, code.delta)


def lift(code, side: str = "left"):
    """Attach an identity block to every codeword and take row spaces.

    A code of m x n matrices becomes a set of m-dimensional subspaces of
    GF(q)^(m+n) at subspace distance 2*delta.
    """
    from .cdc import Cdc
    from .linalg import Subspace

    if isinstance(code, LinearMatrixCode):
        if not code.is_enumerable():
            raise TooLargeToEnumerate("cannot lift a non-enumerable code")
        members = list(code.codewords())
        q, m, n, delta = code.q, code.m, code.n, code.delta
    else:
        members = list(code.members)
        q, m, n, delta = code.q, code.m, code.n, code.delta
    if side not in ("left", "right"):
        raise BadArguments("side must be 'left' or 'right'")
    ident = MatGF.identity(q, m)
    subs = []
    for W in members:
        gen = ident.hstack(W) if side == "left" else W.hstack(ident)
        subs.append(Subspace.from_matrix(gen))
    if len(set(subs)) != len(members):
        raise VerificationFailed("lifting produced duplicate subspaces")
    return Cdc(q=q, n=m + n, k=m, d=2 * delta, members=tuple(subs),
               provenance=f"lifted[{side}]")
