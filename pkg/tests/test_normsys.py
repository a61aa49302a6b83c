import random

import pytest

from singerk46.diffsets import group_of, mixed_rep_planar, planar_of
from singerk46.errors import (
    BoundExceeded,
    DuplicateShifts,
    EvenCharacteristic,
    IdentityElement,
    NotAMember,
    NotChar3,
    NotNormOne,
    PreconditionFailed,
    VerificationFailed,
)
from singerk46.field import is_square, make_extension, sqrt
from singerk46.normsys import (
    D_of_C,
    NormSystemGen,
    cross_rep_of_member,
    dC_identities,
    eta_character_sum,
    find_six,
    find_six_any,
    find_six_char2mod3,
    find_six_char3,
    h_rep_discriminant,
    h_rep_enumerate,
    sigma_checks,
    six_solution_census,
    solve_3eq,
    solve_general,
    solve_general_stats,
    solve_norm1,
    squaring_lift,
    three_eq_system,
    triple_norm_scan,
    verify_six_cert,
)
from singerk46.tower import TowerCtx, norm, trace

F16_MODULUS = (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1)
F16_SOLUTIONS = {1725, 2775, 3435, 1065, 2130, 2370}


@pytest.fixture(scope="module")
def f16():
    F = make_extension(2, 12, F16_MODULUS)
    return TowerCtx(F, 16, 3)


def logs(xs):
    return {x.log() for x in xs}


def test_solve_norm1_counts():
    assert len(solve_norm1(TowerCtx.build(2, 3))) == 6
    assert len(solve_norm1(TowerCtx.build(5, 3))) == 12
    assert len(solve_norm1(TowerCtx.build(4, 3))) == 8


def test_solve_3eq_f16(f16):
    A = f16.ambient.gen_power(405)
    assert logs(solve_3eq(f16, A)) == F16_SOLUTIONS
    assert logs(solve_general(f16, three_eq_system(f16, A))) == F16_SOLUTIONS


def test_solve_3eq_errors(f16):
    F = f16.ambient
    with pytest.raises(IdentityElement):
        solve_3eq(f16, F.one)
    with pytest.raises(NotNormOne):
        solve_3eq(f16, F.primitive)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_solve_3eq_vs_full_scan(q):
    tc = TowerCtx.build(q, 3)
    pair = planar_of(tc)
    norm1 = {y.code for y in solve_norm1(tc)}
    for A in group_of(tc).elements[1:]:
        sols = solve_3eq(tc, A, pair)
        codes = {y.code for y in sols}
        assert codes == {y.code for y in triple_norm_scan(tc, A)}
        assert codes <= norm1
        assert {(A / y).code for y in sols} == codes
        A1, A2 = mixed_rep_planar(tc, A)
        assert {A1.code, A2.code} <= codes


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_solution_bound(q):
    tc = TowerCtx.build(q, 3)
    census = six_solution_census(tc)
    assert max(census) <= 6
    assert sum(census.values()) == len(group_of(tc)) - 1


def test_solve_general_examples():
    tc = TowerCtx.build(3, 3)
    F = tc.ambient
    assert len(solve_general(tc, NormSystemGen(tc, [], []))) == F.order
    with pytest.raises(DuplicateShifts):
        solve_general(tc, NormSystemGen(tc, [F.one, F.one], [F.one, F.one]))
    with pytest.raises(ValueError):
        NormSystemGen(tc, [F.one], [F.primitive])


def test_random_systems_bounded():
    tc = TowerCtx.build(5, 3)
    F = tc.ambient
    base = tc.base_elements()[1:]
    rng = random.Random(11)
    before = solve_general_stats["max_bounded"]
    for _ in range(60):
        shifts = [F.elt(c) for c in rng.sample(range(F.order), 3)]
        targets = [rng.choice(base) for _ in range(3)]
        assert len(solve_general(tc, NormSystemGen(tc, shifts, targets))) <= 6
    assert solve_general_stats["max_bounded"] <= 6 and solve_general_stats["bounded_calls"] > 0
    assert before <= solve_general_stats["max_bounded"]


def test_h_rep_enumerate_f16(f16):
    A = f16.ambient.gen_power(405)
    assert logs(h_rep_enumerate(f16, 1, A)) == {1725, 2775}
    assert logs(h_rep_enumerate(f16, 2, A)) == {2130, 2370}


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_discriminant_agrees_with_enumeration(q):
    tc = TowerCtx.build(q, 3)
    pair = planar_of(tc)
    for A in group_of(tc):
        for i in (1, 2):
            e = h_rep_enumerate(tc, i, A, pair)
            d = h_rep_discriminant(tc, i, A)
            if e is not None and e[0] == e[1]:
                assert d is None  # repeated factor
            elif e is None:
                assert d is None
            else:
                assert d is not None and {d[0].code, d[1].code} == {e[0].code, e[1].code}


def test_square_has_repeated_rep():
    tc = TowerCtx.build(5, 3)
    for B in planar_of(tc).H1:
        assert h_rep_enumerate(tc, 1, B * B) == (B, B)
        assert h_rep_discriminant(tc, 1, B * B) is None


def test_discriminant_char2_rejected(f16):
    with pytest.raises(EvenCharacteristic):
        h_rep_discriminant(f16, 1, f16.ambient.one)


def test_cross_rep():
    tc3 = TowerCtx.build(3, 3)
    assert cross_rep_of_member(tc3, 1, tc3.ambient.one) == (tc3.ambient.one, tc3.ambient.one)
    tc = TowerCtx.build(5, 3)
    pair = planar_of(tc)
    for A in pair.H1:
        B, C = cross_rep_of_member(tc, 1, A, pair)
        assert pair.member(2, B) and pair.member(2, C)
    with pytest.raises(NotAMember):
        cross_rep_of_member(tc, 1, pair.H2[0], pair)
    tc9 = TowerCtx.build(9, 3)
    for A in planar_of(tc9).H2:
        B, C = cross_rep_of_member(tc9, 2, A)
        assert B * C == A


@pytest.mark.parametrize("q", [5, 8, 11])
def test_find_six_char2mod3(q):
    tc = TowerCtx.build(q, 3)
    cert = find_six_char2mod3(tc)
    assert {y.code for y in cert.solutions} == {y.code for y in solve_3eq(tc, cert.A)}
    assert verify_six_cert(cert, full_scan=True)
    assert sorted(cert.tags) == ["H1"] * 3 + ["H2"] * 3


def test_find_six_preconditions():
    with pytest.raises(PreconditionFailed):
        find_six_char2mod3(TowerCtx.build(7, 3))
    with pytest.raises(PreconditionFailed):
        find_six_char2mod3(TowerCtx.build(2, 3))
    with pytest.raises(NotChar3):
        find_six_char3(TowerCtx.build(5, 3))
    with pytest.raises(PreconditionFailed):
        find_six_char3(TowerCtx.build(3, 3))


def test_sigma_checks():
    r5 = sigma_checks(TowerCtx.build(5, 3))
    assert r5["ok"] and r5["sigma_N_minus_1_is_minus_one"]
    r8 = sigma_checks(TowerCtx.build(8, 3))
    assert r8["sigma_H1_star_is_zero"] and r8["sigma_H2_star_is_zero"]
    r2 = sigma_checks(TowerCtx.build(2, 3))
    assert r2["sigma_H1_star_is_zero"] is None


def test_find_six_char3_q9():
    tc = TowerCtx.build(9, 3)
    F = tc.ambient
    pair = planar_of(tc)
    # tau = -1 is admissible: tau^2 + 1 = 2 is a square in F_9
    m1 = F(-1)
    assert is_square(F, m1 * m1 + 1)
    assert any(trace(tc, C) == m1 for C in pair.union if C != 1)
    cert = find_six_char3(tc)
    assert {y.code for y in cert.solutions} == {y.code for y in solve_3eq(tc, cert.A)}
    verify_six_cert(cert, full_scan=True)
    C, B, E = cert.info["C"], cert.info["B"], cert.info["E"]
    assert B * E == C * C and B != E


def test_find_six_char3_q27():
    tc = TowerCtx.build(27, 3)
    cert = find_six_char3(tc)
    assert cert.info["admissible_traces"] >= (27 - 9) // 6
    assert {y.code for y in cert.solutions} == {y.code for y in solve_3eq(tc, cert.A)}
    verify_six_cert(cert, full_scan=False)


@pytest.mark.parametrize("q", [3, 9, 27])
def test_dC_identities(q):
    tc = TowerCtx.build(q, 3)
    pair = planar_of(tc)
    Cs = [C for C in pair.union if C != 1]
    if len(Cs) > 100:
        Cs = random.Random(5).sample(Cs, 100)
    for C in Cs:
        r = dC_identities(tc, C, pair)
        assert all(v is not False for v in r.values())


def test_D_of_C_sqrt_q9():
    tc = TowerCtx.build(9, 3)
    F = tc.ambient
    for C in planar_of(tc).H1:
        D = D_of_C(C)
        if is_square(F, D):
            G = sqrt(F, D)
            assert G * G == D


@pytest.mark.parametrize("q", [7, 13, 16])
def test_find_six_any(q):
    tc = TowerCtx.build(q, 3)
    cert = find_six_any(tc)
    verify_six_cert(cert, full_scan=True)


def test_f16_witness_present(f16):
    A = f16.ambient.gen_power(405)
    assert len(solve_3eq(f16, A)) == 6
    cert = find_six_any(f16)
    assert len(solve_3eq(f16, cert.A)) == 6


def test_small_q_informational():
    # six solutions are only claimed from q = 5 on; smaller q just have fewer
    for q in (3, 4):
        census = six_solution_census(TowerCtx.build(q, 3))
        assert max(census) < 6


@pytest.mark.parametrize("q", [2, 3, 5, 9])
def test_eta(q):
    if q == 2:
        with pytest.raises(EvenCharacteristic):
            eta_character_sum(q)
    else:
        assert eta_character_sum(q) == -1


def test_eta_q27():
    assert eta_character_sum(27) == -1


def test_squaring_lift():
    tc = TowerCtx.build(5, 3)
    cert = find_six(tc)
    lifted = squaring_lift(cert)
    assert lifted.q == 25 and lifted.tower.ambient.order == 5 ** 6
    verify_six_cert(lifted, full_scan=True)
    m = lifted.tower.ambient.order - 1
    e = lifted.info["embedding_exponent"]
    for x, y in zip(cert.solutions, lifted.solutions):
        assert y.log() == x.log() * e % m
    with pytest.raises(BoundExceeded):
        squaring_lift(find_six(TowerCtx.build(8, 3)), bound=1 << 16)


def test_verifier_rejects_tampering():
    tc = TowerCtx.build(5, 3)
    cert = find_six(tc)
    cert.solutions[0] = cert.solutions[0] * tc.ambient.primitive
    with pytest.raises(VerificationFailed):
        verify_six_cert(cert)
    cert = find_six(tc)
    cert.tags[0] = "H2" if cert.tags[0] == "H1" else "H1"
    with pytest.raises(VerificationFailed):
        verify_six_cert(cert)
