import json

import numpy as np
import pytest

from opclass.decomposition import BlockLabel, nilpotent2_canonical, root_decompose, rr_check
from opclass.errors import InvalidIndex, InvalidSpec
from opclass.generators import (
    GenSpec,
    build,
    jordan_nilpotent,
    k_quasi_member,
    normaloid_counterexample,
    random_ginibre,
    random_normal,
    random_unitary,
    root_of_scalar_instance,
    rr_instance,
)
from opclass.linalg import matrix_power, operator_norm
from opclass.membership import (
    Status,
    is_k_quasi_paranormal,
    is_normal,
    is_normaloid,
)


def test_unitary_properties():
    u = random_unitary(5, 3)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(5), atol=1e-12)
    assert abs(abs(np.linalg.det(u)) - 1.0) <= 1e-10
    u1 = random_unitary(1, 9)
    assert abs(abs(u1[0, 0]) - 1.0) <= 1e-12


def test_determinism_is_bitwise():
    for fn, args in (
        (random_unitary, (4, 11)),
        (random_normal, (4, 11)),
        (random_ginibre, (4, 11)),
        (jordan_nilpotent, (5, 3, 11)),
        (normaloid_counterexample, (2, 2, 11)),
        (root_of_scalar_instance, (3, 3, 2.0 + 1j, 11)),
        (k_quasi_member, (3, 2, 1, 11)),
        (rr_instance, (2, 2, 11)),
    ):
        a, b = fn(*args), fn(*args)
        assert (a == b).all(), fn.__name__


def test_seeds_give_different_matrices():
    assert not np.allclose(random_unitary(4, 1), random_unitary(4, 2))


def test_random_normal_variants():
    n = random_normal(5, 7)
    assert is_normal(n).status is Status.MEMBER
    assert np.max(np.abs(np.linalg.eigvals(n))) <= 1.0 + 1e-9

    c = random_normal(3, 7, eigenvalues=[2.0, 2.0, 2.0])
    np.testing.assert_allclose(c, 2.0 * np.eye(3), atol=1e-12)

    h = random_normal(4, 7, eigenvalues=[1.0, -1.0, 0.5, 2.0])
    assert np.linalg.norm(h - h.conj().T) <= 1e-12

    with pytest.raises(InvalidSpec):
        random_normal(3, 7, eigenvalues=[1.0, 2.0])


def test_jordan_nilpotent_index_exact():
    for dim, index in ((2, 2), (5, 3), (6, 6)):
        n = jordan_nilpotent(dim, index, 3)
        assert np.linalg.norm(matrix_power(n, index)) <= 1e-10
        assert np.linalg.norm(matrix_power(n, index - 1)) > 1e-8
    with pytest.raises(InvalidIndex):
        jordan_nilpotent(3, 1, 0)
    with pytest.raises(InvalidIndex):
        jordan_nilpotent(3, 4, 0)


def test_jordan_nilpotent_is_quasi_member():
    for k in (1, 2, 3):
        n = jordan_nilpotent(k + 1, k + 1, seed=k)
        assert is_k_quasi_paranormal(n, k, seed=k).status is Status.MEMBER


def test_counterexample_guarantees():
    for seed in range(5):
        t = normaloid_counterexample(2, 2, seed)
        dim_m = 2
        m_blk = t[:dim_m, :dim_m]
        n_blk = t[dim_m:, dim_m:]
        # scaling contract: ||N|| = ||M|| / 2 exactly after rescaling
        assert operator_norm(n_blk) == pytest.approx(operator_norm(m_blk) / 2.0, rel=1e-12)
        assert is_normaloid(t).status is Status.MEMBER
        assert is_normal(t).status is Status.NON_MEMBER
        assert is_normal(t @ t).status is Status.MEMBER
        assert is_k_quasi_paranormal(t, 1, seed=seed).status is Status.MEMBER
    with pytest.raises(InvalidSpec):
        normaloid_counterexample(2, 1, 0)


def test_scalar_root_instances():
    t = root_of_scalar_instance(3, 1, 5.0 - 1j, 2)
    np.testing.assert_allclose(t, (5.0 - 1j) * np.eye(3), atol=1e-12)

    t = root_of_scalar_instance(3, 3, 8.0, 2)
    np.testing.assert_allclose(matrix_power(t, 3), 8.0 * np.eye(3), atol=1e-10)
    np.testing.assert_allclose(np.abs(np.linalg.eigvals(t)), 2.0, atol=1e-10)
    assert is_normal(t).status is Status.MEMBER

    t = root_of_scalar_instance(2, 4, 0.0, 2)
    np.testing.assert_allclose(t, np.zeros((2, 2)))


def test_k_quasi_member_guarantees():
    for seed in range(4):
        t = k_quasi_member(3, 2, 1, seed)
        assert is_k_quasi_paranormal(t, 1, seed=seed).status is Status.MEMBER
        assert is_normal(matrix_power(t, 2)).status is Status.MEMBER

    pure_nil = k_quasi_member(0, 3, 2, 1)
    assert is_k_quasi_paranormal(pure_nil, 2, seed=1).status is Status.MEMBER
    assert np.linalg.norm(matrix_power(pure_nil, 3)) <= 1e-10

    pure_normal = k_quasi_member(4, 0, 1, 1)
    assert is_normal(pure_normal).status is Status.MEMBER


def test_rr_instance_guarantees():
    for seed in range(4):
        t = rr_instance(2, 2, seed)
        assert rr_check(t).status is Status.MEMBER

    t = rr_instance(0, 3, 5, b_zero=True)
    assert np.linalg.norm(t @ t) <= 1e-12
    canon = nilpotent2_canonical(t)
    assert canon.residuals["c_min_singular"] > 0
    assert canon.residuals["basis"] < 1e-10

    # B = 0 instances with a normal block split under root_decompose with
    # the nilpotent part in [[0, C], [0, 0]] shape.
    t = rr_instance(2, 2, 6, b_zero=True)
    d = root_decompose(t, 2, 1, seed=6)
    nil = d.block(BlockLabel.NILPOTENT)
    assert nil is not None and nil.shape == (4, 4)
    assert np.linalg.norm(nil @ nil) <= 1e-10


def test_genspec_round_trip_and_build():
    spec = GenSpec("jordan", 5, {"dim": 4, "index": 3})
    text = json.dumps(spec.to_json_dict())
    back = GenSpec.from_json(text)
    assert back == spec
    np.testing.assert_array_equal(build(back), jordan_nilpotent(4, 3, 5))

    with pytest.raises(InvalidSpec):
        GenSpec("nope", 0, {})
    with pytest.raises(InvalidSpec):
        GenSpec.from_json("{bad json")
    with pytest.raises(InvalidSpec):
        build(GenSpec("jordan", 0, {"dim": 4}))


def test_build_covers_all_kinds():
    specs = [
        GenSpec("unitary", 1, {"dim": 3}),
        GenSpec("normal", 1, {"dim": 3}),
        GenSpec("normal", 1, {"dim": 2, "eigenvalues": [[1.0, 0.0], [0.0, 1.0]]}),
        GenSpec("ginibre", 1, {"dim": 3}),
        GenSpec("jordan", 1, {"dim": 3, "index": 2}),
        GenSpec("counterexample", 1, {"dim_m": 2, "dim_n": 2}),
        GenSpec("scalar-root", 1, {"dim": 3, "n": 2, "lambda": [4.0, 0.0]}),
        GenSpec("k-quasi", 1, {"dim_normal": 2, "dim_nil": 2, "k": 1}),
        GenSpec("rr", 1, {"dim_a": 1, "dim_bc": 2, "b_zero": True}),
    ]
    for spec in specs:
        m = build(spec)
        assert m.shape[0] == m.shape[1] >= 1
