"""Subspace-code containers and the assembly constructions: identifying
vectors, echelon layouts, multilevel unions, block/coset assembly, parallel
linkage, and run-length bookkeeping for lists of codes.

Every constructor works in two modes: exact big-integer counting (sizes
only), and materialization for desk-scale instances, which re-verifies the
claimed distances downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (BadArguments, BadShape, DiagramMismatch,
                     DuplicateCodeword, LengthMismatch, NotACwc, NotRref,
                     ParameterMismatch, VerificationFailed)
from .ferrers import (FdrmCode, FerrersDiagram, coset_list, nested_pair,
                      singleton_bound)
from .linalg import MatGF, Subspace
from .rankmetric import LinearMatrixCode, MatrixSet


# ---------------------------------------------------------------------------
# identifying vectors and echelon layouts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdVec:
    """Binary vector marking pivot columns; forward = RREF, inverse = RRIEF."""

    bits: tuple
    kind: str = "forward"

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise BadArguments("identifying vectors are binary")
        if self.kind not in ("forward", "inverse"):
            raise BadArguments("kind must be 'forward' or 'inverse'")

    @classmethod
    def from_string(cls, s, kind="forward"):
        return cls(tuple(int(c) for c in s.strip()), kind)

    @property
    def n(self):
        return len(self.bits)

    @property
    def weight(self):
        return sum(self.bits)

    def __str__(self):
        return "".join(str(b) for b in self.bits)


def identifying_vector(U: Subspace) -> IdVec:
    bits = [0] * U.n
    for p in U.pivots:
        bits[p] = 1
    return IdVec(tuple(bits), "forward")


def inverse_identifying_vector(U: Subspace) -> IdVec:
    bits = [0] * U.n
    for p in U.rrief_pivots():
        bits[p] = 1
    return IdVec(tuple(bits), "inverse")


def hamming_guard(u: IdVec, v: IdVec) -> int:
    """Hamming distance; a certified floor for the subspace distance across
    different identifying vectors."""
    if u.n != v.n:
        raise LengthMismatch(f"lengths {u.n} != {v.n}")
    return sum(a != b for a, b in zip(u.bits, v.bits))


def insertion_guard(x: int, k1: int, d: int) -> bool:
    """Distance guard for mixing block constructions with other codes: a
    subspace whose identifying vector has x ones on the first block keeps
    distance d from the block construction when d <= 2|x - k1|."""
    return d <= 2 * abs(x - k1)


@dataclass(frozen=True)
class EchelonLayout:
    """Where a diagram-supported matrix lands inside the echelon skeleton."""

    vec: IdVec
    pivots: tuple
    diagram: FerrersDiagram
    col_map: tuple  # display column -> ambient column

    @property
    def k(self):
        return len(self.pivots)

    @property
    def n(self):
        return self.vec.n

    def build_generator(self, M: MatGF) -> MatGF:
        """Fill the skeleton's dot cells from a display-oriented matrix."""
        dia = self.diagram
        if (M.rows, M.cols) != (dia.m, dia.n):
            raise DiagramMismatch(
                f"matrix shape {M.rows}x{M.cols} vs diagram {dia.m}x{dia.n}")
        k, n = self.k, self.n
        rows = [[0] * n for _ in range(k)]
        inv = self.vec.kind == "inverse"
        for i in range(k):
            p = self.pivots[k - 1 - i] if inv else self.pivots[i]
            rows[i][p] = 1
        for i in range(M.rows):
            for j in range(M.cols):
                v = M.data[i][j]
                if not v:
                    continue
                if not dia.cell_is_dot(i, j):
                    raise DiagramMismatch("matrix entry outside the diagram")
                rows[i][self.col_map[j]] = v
        return MatGF(M.q, rows)


def ferrers_of(v: IdVec) -> EchelonLayout:
    """Diagram and cell mapping of the echelon form with pivots at v's ones."""
    if v.weight < 1:
        raise BadArguments("identifying vector must have positive weight")
    pivots = tuple(i for i, b in enumerate(v.bits) if b)
    nonpivots = [i for i, b in enumerate(v.bits) if not b]
    if v.kind == "forward":
        heights = [sum(1 for p in pivots if p < c) for c in nonpivots]
        keep = [(c, h) for c, h in zip(nonpivots, heights) if h]
        cols = tuple(h for _, h in keep)
        dia = FerrersDiagram(cols)
    else:
        heights = [sum(1 for p in pivots if p > c) for c in nonpivots]
        keep = [(c, h) for c, h in zip(nonpivots, heights) if h]
        cols = tuple(sorted(h for _, h in keep))
        dia = FerrersDiagram(cols, inverted=True)
    return EchelonLayout(vec=v, pivots=pivots, diagram=dia,
                         col_map=tuple(c for c, _ in keep))


# ---------------------------------------------------------------------------
# subspace-code containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cdc:
    """A set of k-dimensional subspaces of GF(q)^n at pairwise distance >= d."""

    q: int
    n: int
    k: int
    d: int
    members: tuple
    provenance: str = ""

    def __post_init__(self):
        for U in self.members:
            if U.n != self.n or U.k != self.k or U.q != self.q:
                raise ParameterMismatch("member with wrong ambient or dimension")

    @property
    def size(self):
        return len(self.members)


def union_cdcs(parts, d, provenance=""):
    """Disjoint union of labelled member sets; a collision is a bug."""
    seen = {}
    members = []
    q = n = k = None
    for label, code in parts:
        if code.size == 0:
            continue
        if q is None:
            q, n, k = code.q, code.n, code.k
        elif (q, n, k) != (code.q, code.n, code.k):
            raise ParameterMismatch("union of incompatible codes")
        for U in code.members:
            if U in seen:
                raise DuplicateCodeword(
                    f"subspace produced by both {seen[U]} and {label}")
            seen[U] = label
            members.append(U)
    if q is None:
        raise BadArguments("union of empty parts")
    return Cdc(q=q, n=n, k=k, d=d, members=tuple(members), provenance=provenance)


@dataclass(frozen=True)
class CwcSet:
    """Constant-weight binary vectors at a guaranteed pairwise distance."""

    vectors: tuple
    min_hd: int

    def __post_init__(self):
        vs = self.vectors
        if not vs:
            raise NotACwc("empty vector set")
        n, w, kind = vs[0].n, vs[0].weight, vs[0].kind
        for v in vs:
            if v.n != n or v.weight != w or v.kind != kind:
                raise NotACwc("mixed lengths, weights, or kinds")
        for a, b in itertools.combinations(vs, 2):
            hd = hamming_guard(a, b)
            if hd < self.min_hd:
                raise NotACwc(f"d_H({a}, {b}) = {hd} < {self.min_hd}")

    @property
    def n(self):
        return self.vectors[0].n

    @property
    def weight(self):
        return self.vectors[0].weight


# ---------------------------------------------------------------------------
# lifting and the multilevel union
# ---------------------------------------------------------------------------

def _code_members(code):
    if isinstance(code, FdrmCode):
        return code.q, code.diagram, list(code.code.codewords()), code.delta
    if isinstance(code, MatrixSet):
        return code.q, None, list(code.members), code.delta
    raise BadArguments(f"cannot lift a {type(code).__name__}")


def lift_on_vector(v: IdVec, code, layout: EchelonLayout | None = None) -> Cdc:
    """Fill the echelon skeleton of v with each codeword; one subspace per
    matrix, all sharing the identifying vector v."""
    layout = layout or ferrers_of(v)
    q, dia, members, delta = _code_members(code)
    if dia is not None and dia != layout.diagram:
        raise DiagramMismatch(f"code diagram {dia} vs vector diagram {layout.diagram}")
    subs = []
    for M in members:
        subs.append(Subspace.from_matrix(layout.build_generator(M)))
    if len(set(subs)) != len(subs):
        raise VerificationFailed("lift produced duplicate subspaces")
    return Cdc(q=q, n=v.n, k=v.weight, d=2 * delta, members=tuple(subs),
               provenance=f"lift[{v}]")


def multilevel(entries, delta: int) -> Cdc:
    """Union of per-vector lifts over a constant-weight vector set.

    Same-vector pairs inherit twice the rank distance; cross-vector pairs
    are separated by the Hamming distance of the vectors.
    """
    vectors = tuple(v for v, _ in entries)
    CwcSet(vectors=vectors, min_hd=2 * delta)
    parts = []
    for v, code in entries:
        if code.delta < delta:
            raise BadArguments(f"code on {v} has distance {code.delta} < {delta}")
        parts.append((f"lift[{v}]", lift_on_vector(v, code)))
    out = union_cdcs(parts, d=2 * delta, provenance="multilevel")
    return out


# ---------------------------------------------------------------------------
# block embedding and block constructions
# ---------------------------------------------------------------------------

def _echelon_pivots(B: MatGF):
    pivots = []
    for row in B.data:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            raise NotRref("zero row in echelon matrix")
        pivots.append(lead)
    if any(pivots[i] >= pivots[i + 1] for i in range(len(pivots) - 1)):
        raise NotRref("leading entries are not strictly increasing")
    return pivots


def phi_embed(B: MatGF, F: MatGF) -> MatGF:
    """Spread F's columns over the non-pivot columns of B, zeros at pivots.

    Deleting the pivot columns recovers F exactly.
    """
    pivots = set(_echelon_pivots(B))
    k, n = B.rows, B.cols
    if F.cols != n - k:
        raise BadShape(f"filler has {F.cols} columns, expected {n - k}")
    out = [[0] * n for _ in range(F.rows)]
    nonpivots = [j for j in range(n) if j not in pivots]
    for j_src, j_dst in enumerate(nonpivots):
        for i in range(F.rows):
            out[i][j_dst] = F.data[i][j_src]
    return MatGF(B.q, out)


# ---------------------------------------------------------------------------
# lists of codes with fixed distance (run-length counted)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CdcList:
    """Ordered list of codes sharing (q, n, k): within-code distance
    intra_d, across-code distance inter_d.  Sizes are run-length encoded
    (size, count) in list order; codes are materialized only at desk scale."""

    q: int
    n: int
    k: int
    intra_d: int
    inter_d: int
    sizes: tuple
    codes: tuple | None = None
    restricted_rank: int | None = None

    @property
    def length(self):
        return sum(c for _, c in self.sizes)

    @property
    def total_size(self):
        return sum(s * c for s, c in self.sizes)

    def validate_codes(self):
        if self.codes is None:
            return
        expanded = [s for s, c in self.sizes for _ in range(c)]
        if [c.size for c in self.codes] != expanded:
            raise VerificationFailed("materialized sizes disagree with runs")


def zip_runs(a_runs, b_runs):
    """Pair i-th with i-th across two run-length lists, truncating at the
    shorter; returns (product runs, total)."""
    total = 0
    out = []
    a = [[s, c] for s, c in a_runs if c]
    b = [[s, c] for s, c in b_runs if c]
    ai = bi = 0
    while ai < len(a) and bi < len(b):
        take = min(a[ai][1], b[bi][1])
        prod = a[ai][0] * b[bi][0]
        out.append((prod, take))
        total += prod * take
        a[ai][1] -= take
        b[bi][1] -= take
        if a[ai][1] == 0:
            ai += 1
        if b[bi][1] == 0:
            bi += 1
    return tuple(out), total


def sort_runs_desc(runs):
    merged = {}
    for s, c in runs:
        if c:
            merged[s] = merged.get(s, 0) + c
    return tuple(sorted(merged.items(), key=lambda t: t[0], reverse=True))


def pair_runs(a_runs, b_runs):
    """Greatest pairing total: sort both descending, pair index by index."""
    return zip_runs(sort_runs_desc(a_runs), sort_runs_desc(b_runs))


def reorder_pairing(sizes_a, sizes_b):
    """Pair i-th largest with i-th largest; returns (index pairs, total).

    Index pairs refer to positions in the inputs; inputs need not be sorted.
    """
    order_a = sorted(range(len(sizes_a)), key=lambda i: sizes_a[i], reverse=True)
    order_b = sorted(range(len(sizes_b)), key=lambda i: sizes_b[i], reverse=True)
    pairing = tuple(zip(order_a, order_b))
    total = sum(sizes_a[i] * sizes_b[j] for i, j in pairing)
    return pairing, total


def coset_cdc_sizes(v: IdVec, delta1: int, delta2: int, q: int):
    """Per-vector coset-list parameters (D, s): coset size q^vmin(F, delta1)
    and list length q^(vmin(F, delta2) - vmin(F, delta1))."""
    layout = ferrers_of(v)
    dia = layout.diagram
    a = singleton_bound(dia, delta1) if not dia.is_empty() else 0
    b = singleton_bound(dia, delta2) if not dia.is_empty() else 0
    return q ** a, q ** (b - a)


def build_coset_cdc_lists(cwc: CwcSet, delta1: int, delta2: int, q: int,
                          r: int | None = None, build: bool = False) -> CdcList:
    """List of codes from nested-code cosets, one coset column at a time.

    Count mode returns exact sizes only.  Build mode materializes every
    coset, lifts it on its vector, and unions the j-th cosets across
    vectors; cross-vector distance is covered by the vector set's Hamming
    distance, within-coset distance by the inner code.
    """
    if not delta1 > delta2 > 0:
        raise BadArguments("need delta1 > delta2 > 0")
    if cwc.min_hd < 2 * delta1:
        raise NotACwc(f"vector set distance {cwc.min_hd} below {2 * delta1}")
    inverse_kind = cwc.vectors[0].kind == "inverse"
    n, k = cwc.n, cwc.weight

    per = []
    for v in cwc.vectors:
        D, s = coset_cdc_sizes(v, delta1, delta2, q)
        per.append((s, D, v))
    per.sort(key=lambda t: t[0], reverse=True)

    if r is not None and not build:
        if r != 0:
            raise BadArguments("count mode supports only r=0 restriction")
        if len(per) != 1:
            raise BadArguments("r=0 count mode expects a single vector")
        s = per[0][0]
        sizes = ((1, 1),) + (((0, s - 1),) if s > 1 else ())
        return CdcList(q=q, n=n, k=k, intra_d=2 * delta1, inter_d=2 * delta2,
                       sizes=sizes, restricted_rank=r)

    if not build:
        runs = []
        acc = 0
        for i, (s, D, _) in enumerate(per):
            acc += D
            nxt = per[i + 1][0] if i + 1 < len(per) else 0
            if s - nxt:
                runs.append((acc, s - nxt))
        runs.sort(key=lambda t: t[0], reverse=True)
        return CdcList(q=q, n=n, k=k, intra_d=2 * delta1, inter_d=2 * delta2,
                       sizes=tuple(runs))

    # build mode
    columns = []
    for s, D, v in per:
        layout = ferrers_of(v)
        pair = nested_pair(layout.diagram, delta1, delta2, q)
        cosets = coset_list(pair, r=r)
        lifted = [lift_on_vector(v, cs, layout) if cs.members else None
                  for cs in cosets]
        columns.append(lifted)
    total = per[0][0] if per else 0
    codes = []
    for j in range(total):
        parts = [(f"coset[{v}][{j}]", col[j])
                 for (s, D, v), col in zip(per, columns)
                 if j < s and col[j] is not None]
        if not parts:
            codes.append(Cdc(q=q, n=n, k=k, d=2 * delta1, members=(),
                             provenance=f"coset-column[{j}]"))
        else:
            codes.append(union_cdcs(parts, d=2 * delta1,
                                    provenance=f"coset-column[{j}]"))
    codes.sort(key=lambda c: c.size, reverse=True)
    runs = []
    for c in codes:
        if runs and runs[-1][0] == c.size:
            runs[-1][1] += 1
        else:
            runs.append([c.size, 1])
    out = CdcList(q=q, n=n, k=k, intra_d=2 * delta1, inter_d=2 * delta2,
                  sizes=tuple((s, c) for s, c in runs), codes=tuple(codes),
                  restricted_rank=r)
    out.validate_codes()
    return out


def concat_cdc_lists(lists) -> CdcList:
    """Concatenate lists sharing parameters, reordered largest first."""
    first = lists[0]
    for L in lists:
        if (L.q, L.n, L.k, L.intra_d, L.inter_d) != \
           (first.q, first.n, first.k, first.intra_d, first.inter_d):
            raise ParameterMismatch("cannot concatenate mismatched lists")
    if any(L.codes is not None for L in lists):
        codes = [c for L in lists for c in (L.codes or ())]
        codes.sort(key=lambda c: c.size, reverse=True)
        runs = []
        for c in codes:
            if runs and runs[-1][0] == c.size:
                runs[-1][1] += 1
            else:
                runs.append([c.size, 1])
        return CdcList(q=first.q, n=first.n, k=first.k, intra_d=first.intra_d,
                       inter_d=first.inter_d,
                       sizes=tuple((s, c) for s, c in runs), codes=tuple(codes))
    runs = sort_runs_desc([run for L in lists for run in L.sizes])
    return CdcList(q=first.q, n=first.n, k=first.k, intra_d=first.intra_d,
                   inter_d=first.inter_d, sizes=runs)


# ---------------------------------------------------------------------------
# block constructions
# ---------------------------------------------------------------------------

def _check_block_params(A: CdcList, B: CdcList, d: int):
    if A.intra_d != d or B.intra_d != d:
        raise ParameterMismatch("lists must have within-code distance d")
    if A.inter_d + B.inter_d != d:
        raise ParameterMismatch("across-list distances must sum to d")


def coset_construction(A: CdcList, B: CdcList, H: LinearMatrixCode) -> Cdc:
    """Block assembly [A phi_B(H); 0 B] over index-paired list entries."""
    if A.codes is None or B.codes is None:
        raise BadArguments("build mode needs materialized lists")
    d = A.intra_d
    _check_block_params(A, B, d)
    n, k = A.n + B.n, A.k + B.k
    if n < 2 * k:
        raise ParameterMismatch(f"need n >= 2k, got n={n}, k={k}")
    if (H.m, H.n) != (A.k, B.n - B.k) or 2 * H.delta != d:
        raise ParameterMismatch(
            f"filler must be {A.k}x{B.n - B.k} at distance {d // 2}")
    s = min(len(A.codes), len(B.codes))
    h_words = list(H.codewords())
    parts = []
    zero_block = MatGF.zeros(A.q, B.k, A.n)
    for i in range(s):
        subs = []
        for Ua in A.codes[i].members:
            for Ub in B.codes[i].members:
                for Hw in h_words:
                    top = Ua.gen.hstack(phi_embed(Ub.gen, Hw))
                    bottom = zero_block.hstack(Ub.gen)
                    subs.append(Subspace.from_matrix(top.vstack(bottom)))
        parts.append((f"block[{i}]",
                      Cdc(q=A.q, n=n, k=k, d=d, members=tuple(subs))))
    return union_cdcs(parts, d=d, provenance="coset-construction")


def parallel_linkage(U1: Cdc, U2: Cdc, M1: LinearMatrixCode, M2: MatrixSet) -> Cdc:
    """Union of left-lifted and right-lifted blocks: {rs(U1|M1)} and
    {rs(M2|U2)} with a rank-capped right filler."""
    k, d = U1.k, U1.d
    if U2.k != k or U2.d < d or U1.q != U2.q:
        raise ParameterMismatch("component codes disagree on (q, k, d)")
    if (M1.m, M1.n) != (k, U2.n) or 2 * M1.delta < d:
        raise ParameterMismatch(f"left filler must be {k}x{U2.n} at distance {d // 2}")
    if (M2.m, M2.n) != (k, U1.n) or 2 * M2.delta < d:
        raise ParameterMismatch(f"right filler must be {k}x{U1.n} at distance {d // 2}")
    from .linalg import rank as _rank
    cap = k - d // 2
    for W in M2.members:
        if _rank(W) > cap:
            raise ParameterMismatch(f"right filler rank exceeds {cap}")
    subs1 = [Subspace.from_matrix(Ua.gen.hstack(W))
             for Ua in U1.members for W in M1.codewords()]
    subs2 = [Subspace.from_matrix(W.hstack(Ub.gen))
             for Ub in U2.members for W in M2.members]
    n = U1.n + U2.n
    parts = [("left-lifted", Cdc(q=U1.q, n=n, k=k, d=d, members=tuple(subs1))),
             ("right-lifted", Cdc(q=U1.q, n=n, k=k, d=d, members=tuple(subs2)))]
    return union_cdcs(parts, d=d, provenance="parallel-linkage")
