"""
Tests for multimatrix algebras, bimodule systems and D-potentials.
"""

import math

import numpy as np
import pytest

from thermoshift.bimodule.algebra import (
    Endomorphism,
    MultiMatrixAlgebra,
    validate_endomorphism,
)
from thermoshift.bimodule.dpotential import (
    DPotential,
    birkhoff_D,
    compress,
    compressed_norm,
    from_classical,
    promote,
    theta_apply,
)
from thermoshift.bimodule.pressure import (
    check_commutation,
    feasible_n_max,
    log_theorem62_partition,
    theorem62_partition,
    theorem62_pressure,
)
from thermoshift.bimodule.system import (
    BimoduleSystem,
    cuntz_krieger_system,
    h_top,
    is_admissible,
    q_word,
    subshift_graph,
    word_count,
)
from thermoshift.errors import (
    InvalidAlgebraData,
    NotInvertibleCornerSum,
    WordBudgetExceeded,
    WordTooShort,
)
from thermoshift.potential.birkhoff import birkhoff
from thermoshift.potential.potential import LocallyConstantPotential
from thermoshift.pressure.partition import partition_function
from thermoshift.shift.words import word_count as classical_word_count


def test_algebra_validation():
    """Test block sizes and element shapes."""
    with pytest.raises(InvalidAlgebraData):
        MultiMatrixAlgebra(())
    with pytest.raises(InvalidAlgebraData):
        MultiMatrixAlgebra((2, 0))
    algebra = MultiMatrixAlgebra((2, 1))
    assert algebra.total_dim == 5
    with pytest.raises(InvalidAlgebraData):
        algebra.element([np.eye(2)])


def test_element_norm_and_spectrum(m2c_algebra):
    """Test the C*-norm as the largest block norm."""
    a = m2c_algebra.element([[[2, 1], [1, 2]], [[-4]]])
    assert a.is_self_adjoint()
    assert a.norm() == pytest.approx(4.0)
    assert sorted(a.spectrum().tolist()) == pytest.approx([-4.0, 1.0, 3.0])
    q = m2c_algebra.element([[[1, 0], [0, 0]], [[0]]])
    assert q.is_projection()
    assert a.corner_spectrum(q).tolist() == pytest.approx([2.0])


def test_endomorphism_placement(m2c_algebra):
    """Test the canonical block-diagonal copies."""
    rho = Endomorphism(m2c_algebra, np.array([[0, 1], [0, 1]]))
    a = m2c_algebra.element([[[5, 6], [7, 8]], [[3]]])
    image = rho(a)
    np.testing.assert_allclose(image.blocks[0], [[3, 0], [0, 0]])
    np.testing.assert_allclose(image.blocks[1], [[3]])
    assert rho.corner.allclose(m2c_algebra.element([[[1, 0], [0, 0]], [[1]]]))


def test_endomorphism_too_many_copies(m2c_algebra):
    """Test that copies must fit inside the target block."""
    with pytest.raises(InvalidAlgebraData):
        Endomorphism(m2c_algebra, np.array([[1, 1], [0, 1]]))
    with pytest.raises(InvalidAlgebraData):
        Endomorphism(m2c_algebra, np.array([[0, -1], [0, 1]]))


def test_validate_endomorphism(m2c_system, rng):
    """Test multiplicativity, star preservation and the corner projection."""
    for endo in m2c_system.endos:
        check = validate_endomorphism(endo, rng)
        assert check.ok()


def test_m2c_projections(m2c_system, m2c_algebra):
    """Test the projections q_alpha and the full 2-shift they define."""
    identity = m2c_algebra.identity()
    e11 = m2c_algebra.element([[[1, 0], [0, 0]], [[1]]])
    assert q_word(m2c_system, ()).allclose(identity)
    assert q_word(m2c_system, (0,)).allclose(identity)
    assert q_word(m2c_system, (1,)).allclose(e11)
    assert q_word(m2c_system, (1, 0, 1)).allclose(e11)
    assert is_admissible(m2c_system, (1, 1, 1))
    nodes, adjacency = subshift_graph(m2c_system)
    assert len(nodes) == 2
    assert adjacency.tolist() == [[1, 1], [1, 1]]
    assert h_top(m2c_system) == pytest.approx(math.log(2))
    assert [word_count(m2c_system, n) for n in range(1, 6)] == [2, 4, 8, 16, 32]


def test_zero_projection_words(m2c_algebra):
    """Test a system whose subshift allows at most one letter 2."""
    rho1 = Endomorphism(m2c_algebra, np.array([[1, 0], [0, 1]]))
    rho2 = Endomorphism(m2c_algebra, np.array([[0, 1], [0, 0]]))
    sys = BimoduleSystem(m2c_algebra, (rho1, rho2))
    assert is_admissible(sys, (1,))
    assert not is_admissible(sys, (1, 1))
    assert sys.words(2) == [(0, 0), (0, 1), (1, 0)]
    assert h_top(sys) == pytest.approx(0.0, abs=1e-12)
    assert [word_count(sys, n) for n in range(1, 5)] == [2, 3, 4, 5]


def test_cuntz_krieger_projections(golden):
    """Test that q_alpha is the indicator of the last letter's followers."""
    sys = cuntz_krieger_system(golden)
    assert [word_count(sys, n) for n in range(1, 8)] == [
        classical_word_count(golden, n) for n in range(1, 8)
    ]
    assert h_top(sys) == pytest.approx(0.4812118250596, abs=1e-12)
    assert not is_admissible(sys, (1, 1))


def test_dpotential_validation(m2c_system, m2c_algebra):
    """Test the word set, self-adjointness and support of components."""
    a = m2c_algebra.element([[[1, 0], [0, 2]], [[3]]])
    with pytest.raises(InvalidAlgebraData, match="Missing"):
        DPotential(m2c_system, 1, {(0,): a})
    with pytest.raises(InvalidAlgebraData, match="supported"):
        DPotential(m2c_system, 1, {(0,): a, (1,): a})
    with pytest.raises(InvalidAlgebraData, match="self-adjoint"):
        DPotential.from_element(m2c_system, m2c_algebra.element([[[0, 1], [0, 0]], [[0]]]))
    corner = m2c_algebra.element([[[1, 0], [0, 0]], [[3]]])
    ok = DPotential(m2c_system, 1, {(0,): a, (1,): corner})
    assert ok.norm() == pytest.approx(3.0)
    assert ok.min_spectrum() == pytest.approx(1.0)


def test_promote_theta_and_compress(m2c_system, m2c_algebra, rng):
    """Test the range-raising identities of D-potentials."""
    a = DPotential.from_element(m2c_system, m2c_algebra.random_positive(rng))
    lifted = promote(m2c_system, a)
    assert lifted.m == 1
    for alpha in m2c_system.words(3):
        assert compress(m2c_system, a, alpha).allclose(compress(m2c_system, lifted, alpha), 1e-10)
    shifted = theta_apply(m2c_system, a)
    assert shifted.m == 1
    assert shifted.components[(1,)].allclose(
        q_word(m2c_system, (1,)) @ a.components[()] @ q_word(m2c_system, (1,))
    )
    with pytest.raises(WordTooShort):
        compress(m2c_system, lifted, ())


def test_birkhoff_d_of_constant(m2c_system):
    """Test that the Birkhoff sum of a scalar compresses to n times the scalar."""
    total = birkhoff_D(m2c_system, DPotential.constant(m2c_system, 0.5), 4)
    assert total.m == 3
    for alpha in m2c_system.words(3):
        assert compressed_norm(m2c_system, total, alpha) == pytest.approx(2.0)


@pytest.mark.parametrize("k", [1, 2])
def test_cuntz_krieger_consistency(golden, rng, k):
    """Test the bimodule partition function against the classical one."""
    sys = cuntz_krieger_system(golden)
    f = LocallyConstantPotential.random(golden, k, rng, 0.0, 1.0)
    a = from_classical(sys, f)
    for n in range(1, 11):
        classical = partition_function(golden, f, n, cylinder_length=n - 1)
        assert theorem62_partition(sys, a, n) == pytest.approx(classical, rel=1e-10)


def test_cuntz_krieger_consistency_signed(full2, rng):
    """Test that the top of the spectrum handles negative potentials."""
    sys = cuntz_krieger_system(full2)
    f = LocallyConstantPotential.random(full2, 2, rng, -1.0, 1.0)
    a = from_classical(sys, f)
    for n in range(1, 8):
        classical = partition_function(full2, f, n, cylinder_length=n - 1)
        assert theorem62_partition(sys, a, n, mode="max_spec") == pytest.approx(
            classical, rel=1e-10
        )


def test_m2c_submultiplicative(m2c_system, m2c_algebra, rng):
    """Test s_{n+m} <= s_n s_m for s_n = Z_{n+1} on a positive potential."""
    a = DPotential.from_element(m2c_system, m2c_algebra.random_positive(rng) * 0.3)
    estimate = theorem62_pressure(m2c_system, a, 13)
    log_z = {row.n: row.n * row.estimate for row in estimate.per_n}
    log_s = {n: log_z[n + 1] for n in range(1, 13)}
    assert log_s[3] == pytest.approx(log_theorem62_partition(m2c_system, a, 4), rel=1e-12)
    for n in range(1, 7):
        for m in range(1, 7):
            assert log_s[n + m] <= log_s[n] + log_s[m] + 1e-10


def test_m2c_entropy_bracket(m2c_system, m2c_algebra, rng):
    """Test that the pressure bracket lies inside [h_top, ||a|| + h_top]."""
    a = DPotential.from_element(m2c_system, m2c_algebra.random_positive(rng) * 0.3)
    estimate = theorem62_pressure(m2c_system, a, 6)
    lo, hi = estimate.bracket
    entropy = math.log(2)
    assert entropy - 1e-12 <= lo <= hi + 1e-12
    assert hi <= a.norm() + entropy + 1e-12
    assert estimate.a_priori_bracket == pytest.approx((entropy, a.norm() + entropy))
    for row in estimate.per_n:
        assert row.upper >= lo - 1e-10


def test_corner_sum_must_be_invertible(m2c_algebra):
    """Test that a degenerate corner sum is rejected."""
    rho = Endomorphism(m2c_algebra, np.array([[0, 1], [0, 1]]))
    sys = BimoduleSystem(m2c_algebra, (rho,))
    with pytest.raises(NotInvertibleCornerSum):
        theorem62_partition(sys, DPotential.constant(sys, 1.0), 2)


def test_commutation_check(m2c_system, m2c_algebra, rng):
    """Test that scalars commute and generic elements do not."""
    scalar = DPotential.constant(m2c_system, 2.0)
    report = check_commutation(m2c_system, scalar, 3)
    assert report.stable_from == 1
    generic = DPotential.from_element(m2c_system, m2c_algebra.random_hermitian(rng))
    assert check_commutation(m2c_system, generic, 3).stable_from is None


def test_from_classical_requires_matching_matrix(golden, full2):
    """Test that the embedding needs the Cuntz-Krieger system of the same matrix."""
    sys = cuntz_krieger_system(full2)
    with pytest.raises(InvalidAlgebraData):
        from_classical(sys, LocallyConstantPotential.zero(golden))


def random_system(rng: np.random.Generator, blocks: tuple[int, ...], d: int) -> BimoduleSystem:
    """Endomorphisms with random multiplicities that fit their target blocks."""
    algebra = MultiMatrixAlgebra(blocks)
    endos = []
    for _ in range(d):
        M = np.zeros((len(blocks), len(blocks)), dtype=np.int64)
        for t, size in enumerate(blocks):
            room = size
            for s in rng.permutation(len(blocks)):
                copies = int(rng.integers(0, room // blocks[s] + 1))
                M[t, s] = copies
                room -= copies * blocks[s]
        endos.append(Endomorphism(algebra, M))
    return BimoduleSystem(algebra, tuple(endos))


def test_compress_functoriality(m2c_system, rng):
    """Test compress(a, alpha beta) = rho_beta(compress(a, alpha)) on random systems."""
    systems = [m2c_system] + [random_system(rng, (2, 1), 2) for _ in range(3)]
    for sys in systems:
        a = promote(sys, DPotential.from_element(sys, sys.algebra.random_positive(rng)))
        for alpha in sys.words(2):
            inner = compress(sys, a, alpha)
            for beta in [(0,), (1,), (0, 1), (1, 1)]:
                expected = inner
                for j in beta:
                    expected = sys.rho(j, expected)
                assert compress(sys, a, alpha + beta).allclose(expected, 1e-10)


def test_theta_is_composition_with_shift(golden, rng):
    """Test theta(f) = f o T on the Cuntz-Krieger system."""
    sys = cuntz_krieger_system(golden)
    f = LocallyConstantPotential.random(golden, 2, rng, 0.0, 1.0)
    f_shifted = LocallyConstantPotential.from_function(golden, 3, lambda w: f.table()[w[1:]])
    shifted = theta_apply(sys, from_classical(sys, f))
    expected = from_classical(sys, f_shifted)
    assert shifted.m == expected.m == 2
    for word, value in expected.components.items():
        assert shifted.components[word].allclose(value, 1e-12)


def test_birkhoff_d_matches_classical(golden, rng):
    """Test that the D-Birkhoff sum of an embedded potential carries S_n f."""
    sys = cuntz_krieger_system(golden)
    f = LocallyConstantPotential.random(golden, 2, rng)
    a = from_classical(sys, f)
    for n in range(1, 6):
        total = birkhoff_D(sys, a, n)
        assert total.m == n
        for word, value in birkhoff(f, n).as_dict().items():
            gamma, t = word[:-1], word[-1]
            assert total.components[gamma].blocks[t][0, 0].real == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("name", ["m2c", "golden"])
def test_identity_partition_counts_words(name, m2c_system, golden):
    """Test Z_n(I) = theta_{n-1} e^n."""
    sys = m2c_system if name == "m2c" else cuntz_krieger_system(golden)
    identity = DPotential.constant(sys, 1.0)
    for n in range(1, 7):
        expected = word_count(sys, n - 1) * math.exp(n)
        assert theorem62_partition(sys, identity, n) == pytest.approx(expected, rel=1e-12)


def test_dead_end_words_carry_no_term():
    """Test partition functions when a letter has no admissible successor."""
    algebra = MultiMatrixAlgebra((1, 1))
    rho1 = Endomorphism(algebra, np.array([[1, 0], [1, 0]]))
    rho2 = Endomorphism(algebra, np.array([[0, 0], [1, 0]]))
    sys = BimoduleSystem(algebra, (rho1, rho2))
    assert sys.words(1) == [(0,), (1,)]
    assert sys.words(2) == [(0, 0), (0, 1)]
    identity = promote(sys, DPotential.constant(sys, 1.0))
    assert identity.m == 1
    assert theorem62_partition(sys, identity, 1) == pytest.approx(math.e)
    for n in range(2, 5):
        assert log_theorem62_partition(sys, identity, n) == pytest.approx(float(n), abs=1e-12)


def test_pressure_word_budget(m2c_system):
    """Test that Birkhoff sums beyond the word budget are refused."""
    a = DPotential.constant(m2c_system, 0.5)
    with pytest.raises(WordBudgetExceeded) as excinfo:
        theorem62_pressure(m2c_system, a, 10, max_words=100)
    assert excinfo.value.count > 100
    assert feasible_n_max(m2c_system, a, 20, 100) == 6
    estimate = theorem62_pressure(m2c_system, a, 6, max_words=100)
    assert len(estimate.per_n) == 6
    with pytest.raises(WordBudgetExceeded):
        feasible_n_max(m2c_system, a, 20, 1)


def test_commutation_scan_starts_at_one(golden, rng):
    """Test that a commutative range-2 potential commutes from word length 1."""
    sys = cuntz_krieger_system(golden)
    a = from_classical(sys, LocallyConstantPotential.random(golden, 3, rng, 0.0, 1.0))
    assert a.m == 2
    report = check_commutation(sys, a, 4)
    assert [row.length for row in report.rows] == [1, 2, 3, 4]
    assert report.stable_from == 1
