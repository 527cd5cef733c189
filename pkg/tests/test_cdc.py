import itertools
import random

import pytest

from cdckit.cdc import (CdcList, CwcSet, IdVec, build_coset_cdc_lists,
                        concat_cdc_lists, coset_construction, ferrers_of,
                        hamming_guard, identifying_vector, insertion_guard,
                        inverse_identifying_vector, lift_on_vector, multilevel,
                        pair_runs, parallel_linkage, phi_embed,
                        reorder_pairing, zip_runs)
from cdckit.errors import (DiagramMismatch, LengthMismatch, NotACwc, NotRref,
                           ParameterMismatch)
from cdckit.ferrers import FerrersDiagram, optimal_fdrmc
from cdckit.linalg import MatGF, Subspace, enumerate_subspaces
from cdckit.rankmetric import MatrixSet, gabidulin, lift, restrict_ranks
from cdckit.verify import check_cdc

E_U = [[1, 0, 0, 0, 1], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0]]


def fw(s):
    return IdVec.from_string(s)


def iv(s):
    return IdVec.from_string(s, kind="inverse")


def test_identifying_vectors_worked_example():
    U = Subspace.from_matrix(MatGF(2, E_U))
    assert str(identifying_vector(U)) == "10110"
    assert str(inverse_identifying_vector(U)) == "00111"


def test_identifying_vector_lifted_shape():
    U = Subspace(2, 5, [[1, 0, 0, 1, 1], [0, 1, 0, 0, 1], [0, 0, 1, 1, 0]])
    assert str(identifying_vector(U)) == "11100"


def test_ferrers_of_worked_example():
    lay = ferrers_of(fw("10110"))
    assert lay.diagram.cols == (1, 3) and not lay.diagram.inverted
    lay2 = ferrers_of(iv("00111"))
    assert lay2.diagram.cols == (3, 3) and lay2.diagram.inverted


def test_ferrers_of_trailing_ones_empty():
    lay = ferrers_of(fw("0011"))
    assert lay.diagram.is_empty()
    code = optimal_fdrmc(lay.diagram, 2, 2)
    out = lift_on_vector(fw("0011"), code)
    assert out.size == 1
    assert out.members[0].gen.data == ((0, 0, 1, 0), (0, 0, 0, 1))


def test_lift_on_vector_full_square():
    v = fw("1100")
    code = optimal_fdrmc(ferrers_of(v).diagram, 2, 2)
    out = lift_on_vector(v, code)
    assert out.size == 4
    rep = check_cdc(out)
    assert rep.passed and rep.min_distance_found == 4
    assert all(identifying_vector(U) == v for U in out.members)


def test_lift_on_vector_equality_branch():
    # same identifying vector: subspace distance is exactly twice rank distance
    from cdckit.linalg import rank, subspace_distance
    v = fw("1100")
    code = optimal_fdrmc(ferrers_of(v).diagram, 1, 2)
    out = lift_on_vector(v, code)
    words = list(code.code.codewords())
    for (i, A), (j, B) in itertools.combinations(enumerate(words), 2):
        assert subspace_distance(out.members[i], out.members[j]) \
            == 2 * rank(A - B)


def test_lift_on_vector_zero_code():
    v = fw("10110")
    lay = ferrers_of(v)
    zero = MatrixSet(2, lay.diagram.m, lay.diagram.n,
                     (MatGF.zeros(2, lay.diagram.m, lay.diagram.n),), 1)
    out = lift_on_vector(v, zero)
    gen = out.members[0].gen
    assert gen.data == ((1, 0, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0))


def test_lift_on_vector_diagram_mismatch():
    v = fw("1100")
    wrong = optimal_fdrmc(FerrersDiagram((1, 2)), 2, 2)
    with pytest.raises(DiagramMismatch):
        lift_on_vector(v, wrong)


def test_multilevel_tiny_optimum():
    entries = []
    for s in ("1100", "0011"):
        v = fw(s)
        entries.append((v, optimal_fdrmc(ferrers_of(v).diagram, 2, 2)))
    code = multilevel(entries, 2)
    assert code.size == 5 and (code.n, code.k) == (4, 2)
    rep = check_cdc(code)
    assert rep.passed and rep.min_distance_found == 4


def test_multilevel_single_vector_is_lifted_mrd():
    v = fw("11100000")
    mrd = gabidulin(2, 3, 5, 2)
    dia = ferrers_of(v).diagram
    assert dia.cols == (3, 3, 3, 3, 3)
    from cdckit.ferrers import FdrmCode
    code = FdrmCode(diagram=dia, code=mrd, delta=2, optimal=True)
    out = multilevel([(v, code)], 2)
    assert set(out.members) == set(lift(mrd).members)


def test_multilevel_rejects_bad_vectors():
    v1, v2 = fw("1100"), fw("0110")
    code1 = optimal_fdrmc(ferrers_of(v1).diagram, 2, 2)
    code2 = optimal_fdrmc(ferrers_of(v2).diagram, 2, 2)
    with pytest.raises(NotACwc):
        multilevel([(v1, code1), (v2, code2)], 2)


def test_hamming_guard():
    assert hamming_guard(fw("10110"), fw("10110")) == 0
    assert hamming_guard(fw("1100"), fw("0011")) == 4
    with pytest.raises(LengthMismatch):
        hamming_guard(fw("110"), fw("1100"))
    assert insertion_guard(4, 2, 4) and not insertion_guard(3, 2, 4)


def test_subspace_distance_dominates_hamming():
    rng = random.Random(23)
    subs = list(enumerate_subspaces(2, 5, 3))
    for _ in range(1000):
        U, V = rng.sample(subs, 2)
        from cdckit.linalg import subspace_distance
        assert subspace_distance(U, V) >= \
            hamming_guard(identifying_vector(U), identifying_vector(V))
        assert subspace_distance(U, V) >= \
            hamming_guard(inverse_identifying_vector(U),
                          inverse_identifying_vector(V))


def test_phi_embed_worked_example():
    B = MatGF(2, [[1, 1, 0, 0, 1, 0], [0, 1, 0, 1, 1, 1], [0, 0, 0, 0, 1, 1]])
    F = MatGF(2, [[1, 1, 0], [0, 0, 0], [1, 0, 1], [0, 0, 1]])
    out = phi_embed(B, F)
    assert out == MatGF(2, [[0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 0, 0],
                            [0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 1]])


def test_phi_embed_identity_prefix_and_zero():
    B = MatGF(2, [[1, 0, 1, 1], [0, 1, 0, 1]])
    F = MatGF(2, [[1, 0], [0, 1], [1, 1]])
    out = phi_embed(B, F)
    assert out == MatGF(2, [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1]])
    zero = MatGF.zeros(2, 3, 2)
    assert phi_embed(B, zero).is_zero()


def test_phi_embed_round_trip():
    rng = random.Random(31)
    B = MatGF(3, [[1, 0, 2, 0, 1], [0, 1, 1, 0, 2], [0, 0, 0, 1, 1]])
    for _ in range(20):
        F = MatGF(3, [[rng.randrange(3) for _ in range(2)] for _ in range(2)])
        out = phi_embed(B, F)
        back = [[out.data[i][j] for j in (2, 4)] for i in range(2)]
        assert MatGF(3, back) == F


def test_phi_embed_rejects_non_echelon():
    bad = MatGF(2, [[0, 1, 0], [1, 0, 0]])
    with pytest.raises(NotRref):
        phi_embed(bad, MatGF(2, [[1]]))


def lifted_single_list(q=2):
    mrd = gabidulin(q, 2, 2, 2)
    code = lift(mrd)
    return CdcList(q=q, n=4, k=2, intra_d=4, inter_d=2,
                   sizes=((4, 1),), codes=(code,))


def test_coset_construction_tiny():
    A = lifted_single_list()
    B = lifted_single_list()
    H = gabidulin(2, 2, 2, 2)
    out = coset_construction(A, B, H)
    assert out.size == H.size * 4 * 4
    rep = check_cdc(out)
    assert rep.passed and rep.min_distance_found >= 4


def test_coset_construction_degenerate_filler():
    from cdckit.rankmetric import LinearMatrixCode
    A = lifted_single_list()
    B = lifted_single_list()
    H0 = LinearMatrixCode(2, 2, 2, (), 2)
    out = coset_construction(A, B, H0)
    assert out.size == 16
    assert check_cdc(out).passed


def test_coset_construction_parameter_checks():
    A = lifted_single_list()
    B = lifted_single_list()
    bad_H = gabidulin(2, 2, 2, 1)
    with pytest.raises(ParameterMismatch):
        coset_construction(A, B, bad_H)


def test_parallel_linkage_tiny():
    U = lift(gabidulin(2, 2, 2, 2))
    M1 = gabidulin(2, 2, 4, 2)
    M2 = restrict_ranks(gabidulin(2, 2, 4, 2), 0)
    out = parallel_linkage(U, U, M1, M2)
    assert out.size == U.size * M1.size + U.size
    rep = check_cdc(out)
    assert rep.passed and rep.min_distance_found >= 4
    # the zero right-filler embeds the second code right-aligned
    right = [W for W in out.members
             if W.gen.data[0][:4] == (0, 0, 0, 0)]
    assert len(right) == U.size


def test_reorder_pairing_dominates_permutations():
    rng = random.Random(41)
    for _ in range(100):
        a = sorted((rng.randrange(1, 100) for _ in range(6)), reverse=True)
        b = sorted((rng.randrange(1, 100) for _ in range(6)), reverse=True)
        _, best = reorder_pairing(a, b)
        perm = list(range(6))
        rng.shuffle(perm)
        assert sum(a[i] * b[perm[i]] for i in range(6)) <= best


def test_reorder_pairing_all_equal():
    _, total = reorder_pairing([3, 3, 3], [5, 5, 5])
    assert total == 45


def test_zip_runs_truncation():
    runs, total = zip_runs([(10, 2)], [(7, 1), (5, 5)])
    assert runs == ((70, 1), (50, 1)) and total == 120


def test_pair_runs_table_data():
    # the worked reordered pairing at q=3, frozen from exact arithmetic
    q = 3
    a = [(q ** 6 + q ** 3 + 1, 1), (q ** 6 + q ** 3, q ** 6 - 1),
         (q ** 6, q ** 12 - q ** 6)]
    b = [(q ** 5 + 1, q ** 3), (q ** 5, q ** 5 - q ** 3), (q + 1, 2 * q ** 2),
         (q, q ** 3 - q ** 2), (1, q ** 3 - q ** 2 + q)]
    _, total = pair_runs(a, b)
    assert total == 44772832
    # the published polynomial for this pairing overcounts by q^3 - 1
    published = (q ** 16 + q ** 13 + q ** 10 + 3 * q ** 9 + q ** 8
                 + 2 * q ** 7 + 3 * q ** 6 + 2 * q ** 5 + q ** 4 + q ** 3)
    assert published - total == q ** 3 - 1


def check_list_runs(vectors, d1, d2, q, expected):
    cwc = CwcSet(vectors=vectors, min_hd=2 * d1)
    out = build_coset_cdc_lists(cwc, d1, d2, q)
    assert out.sizes == tuple(expected)
    return out


def test_coset_list_sizes_two_block_split():
    # the 9-bit two-vector family: one large column plus a degenerate one
    for q in (2, 3):
        check_list_runs((fw("111110000"), fw("000011111")), 4, 2, q,
                        [(q ** 5 + 1, 1), (q ** 5, q ** 10 - 1)])


def test_coset_list_sizes_three_vector_family():
    for q in (2, 3):
        check_list_runs((fw("111000000"), fw("000111000"), fw("000000111")),
                        3, 1, q,
                        [(q ** 6 + q ** 3 + 1, 1), (q ** 6 + q ** 3, q ** 6 - 1),
                         (q ** 6, q ** 12 - q ** 6)])


def test_coset_list_sizes_inverse_family():
    for q in (2, 3):
        check_list_runs((iv("000011111"), iv("111110000")), 4, 2, q,
                        [(q ** 5 + 1, 1), (q ** 5, q ** 10 - 1)])


def test_coset_list_sizes_single_vector():
    out = check_list_runs((fw("11111000"),), 3, 2, 2, [(2 ** 5, 2 ** 5)])
    assert out.length == 2 ** 5


def test_coset_list_ten_bit_family():
    # the 10-bit tables behind the largest worked insertion
    for q in (2, 3):
        check_list_runs((fw("1111000010"), fw("1000111010")), 3, 2, q,
                        [(q ** 11 + q ** 3, q ** 4), (q ** 11, q ** 5 - q ** 4)])
        check_list_runs((fw("0110110010"),), 3, 2, q, [(q ** 6, q ** 4)])
        check_list_runs((fw("0101101010"),), 3, 2, q, [(q ** 4, q ** 4)])
        check_list_runs((fw("0011011010"),), 3, 2, q, [(q ** 2, q ** 4)])


def test_build_mode_matches_count_mode():
    q = 2
    cwc = CwcSet(vectors=(fw("1100"),), min_hd=4)
    counted = build_coset_cdc_lists(cwc, 2, 1, q)
    built = build_coset_cdc_lists(cwc, 2, 1, q, build=True)
    assert counted.sizes == built.sizes == ((4, 4),)
    built.validate_codes()
    # intra distance 4, inter distance 2, exhaustively
    from cdckit.linalg import subspace_distance
    for code in built.codes:
        rep = check_cdc(code)
        assert rep.passed and rep.min_distance_found >= 4
    for c1, c2 in itertools.combinations(built.codes, 2):
        for U in c1.members:
            for V in c2.members:
                assert subspace_distance(U, V) >= 2


def test_build_mode_restricted():
    q = 2
    cwc = CwcSet(vectors=(iv("0011"),), min_hd=4)
    out = build_coset_cdc_lists(cwc, 2, 1, q, r=0, build=True)
    assert out.sizes[0] == (1, 1)
    assert out.codes[0].members[0].gen.data == ((0, 0, 1, 0), (0, 0, 0, 1))
    counted = build_coset_cdc_lists(cwc, 2, 1, q, r=0)
    assert counted.sizes == out.sizes


def test_concat_lists_sorts_descending():
    q = 2
    l1 = check_list_runs((fw("11111000"),), 3, 2, q, [(q ** 5, q ** 5)])
    l2 = build_coset_cdc_lists(CwcSet(vectors=(fw("11000111"),), min_hd=6),
                               3, 2, q)
    merged = concat_cdc_lists([l1, l2])
    assert merged.sizes == ((q ** 5, q ** 5), (1, q ** 3))


def test_multilevel_members_partition_by_vector():
    entries = []
    for s in ("1100", "0011"):
        v = fw(s)
        entries.append((v, optimal_fdrmc(ferrers_of(v).diagram, 2, 2)))
    code = multilevel(entries, 2)
    by_vec = {}
    for U in code.members:
        by_vec.setdefault(str(identifying_vector(U)), []).append(U)
    assert {k: len(v) for k, v in by_vec.items()} == {"1100": 4, "0011": 1}
