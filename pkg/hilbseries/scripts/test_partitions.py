from backend.combinatorics.partitions import (
    Partition,
    count_partitions,
    d_monomials,
    enumerate_partitions,
    partitions_up_to,
    stat_d,
    stat_n,
)
from backend.core.coefficients import QT, Q_GEN, T_GEN


def test_partition_counts():
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    for n, count in enumerate(expected):
        assert count_partitions(n) == count
        assert len(enumerate_partitions(n)) == count
    assert len(partitions_up_to(4)) == sum(expected[:5])


def test_enumeration_order():
    assert [p.parts for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_box_statistics():
    cases = [
        # partition, conjugué, n(λ), z_λ, longueurs d'équerre
        ((3, 1), (2, 1, 1), 1, 3, [4, 2, 1, 1]),
        ((2, 1, 1), (3, 1), 3, 4, [4, 1, 2, 1]),
        ((2, 2), (2, 2), 2, 8, [3, 2, 2, 1]),
    ]
    for parts, conjugate, n_stat, z_lambda, hooks in cases:
        partition = Partition(parts)
        assert partition.conjugate().parts == conjugate
        assert partition.n_stat() == n_stat
        assert partition.z_lambda() == z_lambda
        assert partition.hook_lengths() == hooks


def test_partition_normalisation():
    assert Partition.of([1, 0, 3, 1]).parts == (3, 1, 1)
    assert Partition((2, 1)).union(Partition((3,))).parts == (3, 2, 1)
    assert Partition.from_json([2, 2]).to_json() == [2, 2]
    assert Partition((3, 1)).dominates(Partition((2, 2)))
    assert not Partition((2, 2)).dominates(Partition((3, 1)))


def test_qt_statistics():
    single = Partition((1,))
    assert stat_n(single) == (Q_GEN - QT.one) * (QT.one - T_GEN)
    assert stat_d(single) == -Q_GEN - T_GEN + Q_GEN * T_GEN
    assert d_monomials(single) == [(-1, 0, 1), (-1, 1, 0), (1, 1, 1)]


def test_invalid_partitions():
    for parts in [(1, 2), (2, 0), (-1,)]:
        try:
            Partition(parts)
        except ValueError:
            continue
        raise AssertionError(f"{parts} aurait dû être refusé")
