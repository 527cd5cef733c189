"""Independent verification oracles: exhaustive and sampled distance
certification, exact maximum-size search on tiny Grassmannians, and
diagram-code audits.

Exhaustive pairwise checks go through membership bitmasks: the size of an
intersection of two subspaces is the popcount of the AND of their member
masks, which vectorizes well for q = 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import TooLarge
from .ferrers import FdrmCode, singleton_bound
from .linalg import (enumerate_subspaces, gaussian_binomial, rank,
                     subspace_distance)

EXHAUSTIVE_PAIR_CAP = 10 ** 6
SAMPLED_PAIRS = 10 ** 5
MASK_UNIVERSE_CAP = 2 ** 20


@dataclass
class VerifyReport:
    target: str
    mode: str
    min_distance_found: int | None
    declared: int
    violations: list = dc_field(default_factory=list)
    pairs_checked: int = 0
    details: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and (
            self.min_distance_found is None
            or self.min_distance_found >= self.declared)

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"{state} {self.target} mode={self.mode} "
                f"min_distance={self.min_distance_found} "
                f"declared={self.declared} pairs={self.pairs_checked} "
                f"violations={len(self.violations)}")

    def kv_lines(self):
        """Machine-readable key=value lines."""
        out = [f"target={self.target}", f"mode={self.mode}",
               f"passed={str(self.passed).lower()}",
               f"min_distance={self.min_distance_found}",
               f"declared={self.declared}",
               f"pairs_checked={self.pairs_checked}",
               f"violations={len(self.violations)}"]
        out.extend(f"detail.{k}={v}" for k, v in self.details.items())
        return out


def _log_q(value, q):
    d = 0
    while value > 1:
        value //= q
        d += 1
    return d


def _mask_check_numpy(masks, q, k, declared, nbits):
    """All-pairs popcount of mask ANDs, blockwise; q = 2 only."""
    words = (nbits + 63) // 64
    arr = np.zeros((len(masks), words), dtype=np.uint64)
    for i, m in enumerate(masks):
        arr[i] = np.frombuffer(m.to_bytes(words * 8, "little"), dtype=np.uint64)
    thresh = q ** (k - (declared + 1) // 2)
    max_pc = 1
    violations = []
    block = max(1, (1 << 22) // max(1, len(masks) * words))
    for lo in range(0, len(masks), block):
        hi = min(lo + block, len(masks))
        pc = np.bitwise_count(arr[lo:hi, None, :] & arr[None, :, :]).sum(axis=2)
        pc = pc.astype(np.int64)
        for r in range(hi - lo):
            pc[r, : lo + r + 1] = 0  # keep strictly upper pairs
        max_pc = max(max_pc, int(pc.max(initial=0)))
        bad = np.argwhere(pc > thresh)
        for r, c in bad:
            i, j = lo + int(r), int(c)
            violations.append((i, j, 2 * (k - _log_q(int(pc[r, c]), q))))
    return max_pc, violations


def _mask_check_ints(masks, q, k, declared):
    thresh = q ** (k - (declared + 1) // 2)
    max_pc = 1
    violations = []
    n = len(masks)
    for i in range(n):
        mi = masks[i]
        for j in range(i + 1, n):
            pc = (mi & masks[j]).bit_count()
            if pc > max_pc:
                max_pc = pc
            if pc > thresh:
                violations.append((i, j, 2 * (k - _log_q(pc, q))))
    return max_pc, violations


def check_cdc(code, mode: str = "exhaustive", seed: int = 2024,
              pairs: int = SAMPLED_PAIRS, max_pairs: int = EXHAUSTIVE_PAIR_CAP
              ) -> VerifyReport:
    """Certify the minimum pairwise subspace distance of a code.

    Exhaustive mode checks every unordered pair (capped at max_pairs);
    sampled mode draws a fixed, seed-deterministic set of pairs.
    """
    members = code.members
    M = len(members)
    declared = code.d
    target = f"({code.n},{M},{code.d},{code.k})_{code.q}-CDC"
    if M < 2:
        return VerifyReport(target=target, mode=mode, min_distance_found=None,
                            declared=declared)
    total_pairs = M * (M - 1) // 2
    if mode == "exhaustive":
        if total_pairs > max_pairs:
            raise TooLarge(f"{total_pairs} pairs exceed cap {max_pairs}")
        if code.q ** code.n <= MASK_UNIVERSE_CAP:
            masks = [U.member_mask() for U in members]
            if code.q == 2 and M > 256:
                max_pc, violations = _mask_check_numpy(
                    masks, code.q, code.k, declared, code.q ** code.n)
            else:
                max_pc, violations = _mask_check_ints(
                    masks, code.q, code.k, declared)
            min_dist = 2 * (code.k - _log_q(max_pc, code.q))
        else:
            min_dist = 2 * code.k
            violations = []
            for i in range(M):
                for j in range(i + 1, M):
                    d = subspace_distance(members[i], members[j])
                    min_dist = min(min_dist, d)
                    if d < declared:
                        violations.append((i, j, d))
        return VerifyReport(target=target, mode="exhaustive",
                            min_distance_found=min_dist, declared=declared,
                            violations=violations, pairs_checked=total_pairs)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    min_dist = 2 * code.k
    violations = []
    checked = min(pairs, total_pairs)
    for _ in range(checked):
        i = rng.randrange(M)
        j = rng.randrange(M - 1)
        if j >= i:
            j += 1
        d = subspace_distance(members[i], members[j])
        min_dist = min(min_dist, d)
        if d < declared:
            violations.append((min(i, j), max(i, j), d))
    return VerifyReport(target=target, mode=f"sampled(seed={seed})",
                        min_distance_found=min_dist, declared=declared,
                        violations=violations, pairs_checked=checked)


def _max_clique(adj) -> int:
    """Exact maximum clique via branch and bound with greedy coloring."""
    n = len(adj)
    best = 0

    def color_order(P):
        order, bounds = [], []
        remaining = P
        color = 0
        while remaining:
            color += 1
            avail = remaining
            while avail:
                v = (avail & -avail).bit_length() - 1
                bit = 1 << v
                avail &= ~adj[v] & ~bit
                remaining &= ~bit
                order.append(v)
                bounds.append(color)
        return order, bounds

    def expand(size, P):
        nonlocal best
        order, bounds = color_order(P)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best:
                return
            v = order[idx]
            newP = P & adj[v]
            if newP:
                expand(size + 1, newP)
            elif size + 1 > best:
                best = size + 1
            P &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


def brute_force_optimum(q: int, n: int, k: int, d: int,
                        cap: int = 2000) -> int:
    """Exact maximum size of a set of k-dim subspaces of GF(q)^n at pairwise
    distance >= d, by exhaustive clique search over the full Grassmannian."""
    G = gaussian_binomial(n, k, q)
    if G > cap:
        raise TooLarge(f"Grassmannian size {G} exceeds cap {cap}")
    if d <= 2:
        return G  # distinct subspaces of equal dimension are >= 2 apart
    subs = list(enumerate_subspaces(q, n, k))
    masks = [U.member_mask() for U in subs]
    thresh = q ** (k - (d + 1) // 2)
    adj = [0] * len(subs)
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            if (masks[i] & masks[j]).bit_count() <= thresh:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return _max_clique(adj)


def audit_fdrmc(code: FdrmCode) -> VerifyReport:
    """Audit support containment, the realized minimum rank distance, and
    dimension against the diagram's bound."""
    dia = code.diagram
    violations = []
    for t, B in enumerate(code.code.basis):
        for i in range(B.rows):
            for j in range(B.cols):
                if B.data[i][j] and not dia.cell_is_dot(i, j):
                    violations.append(("support", t, i, j))
    min_rank = None
    pairs = 0
    if code.dim > 0:
        if not code.code.is_enumerable():
            raise TooLarge("code too large to audit exhaustively")
        min_rank = min(m for m in (rank(W) for W in code.code.codewords()
                                   if not W.is_zero()))
        pairs = code.size - 1
        if min_rank < code.delta:
            violations.append(("distance", min_rank))
    bound = singleton_bound(dia, code.delta) if not dia.is_empty() else 0
    if code.optimal and code.dim != bound:
        violations.append(("optimality", code.dim, bound))
    return VerifyReport(
        target=f"[{dia}, {code.dim}, {code.delta}]_{code.q} code",
        mode="exhaustive", min_distance_found=min_rank, declared=code.delta,
        violations=violations, pairs_checked=pairs,
        details={"dim": code.dim, "bound": bound, "optimal": code.optimal})
