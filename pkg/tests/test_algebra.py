import math

import numpy as np
import pytest

from nhkit import algebra
from nhkit.algebra import (
    AlgebraName,
    StructureTable,
    antisymmetry_exact,
    build_table,
    contract,
    jacobi_residual,
    kirillov_matrix,
    max_table_deviation,
    nh_limit_of,
    rank,
)
from nhkit.coadjoint import DualPoint, OrbitClass, classify, random_point_in_class
from nhkit.group import Vec2

ALL_TABLES = [
    build_table("NH_minus", tau=1.0),
    build_table("NH_plus", tau=1.0),
    build_table("NH_minus", extended=True, tau=1.0),
    build_table("NH_minus", extended=True, tau=2.0),
    build_table("NH_plus", extended=True, tau=1.0),
    build_table("Galilei"),
    build_table("Galilei", extended=True),
    build_table("Poincare"),
    build_table("dS_minus", c=1.0, R=1.0),
    build_table("dS_plus", c=2.0, R=3.0),
]


def test_bracket_goldens():
    nh = build_table("NH_minus", tau=1.0)
    assert nh.bracket("P1", "H") == {"K1": -1.0}
    gal = build_table("Galilei")
    assert gal.bracket("P1", "H") == {}
    ext2 = build_table("NH_minus", extended=True, tau=2.0)
    assert ext2.bracket("P1", "P2") == {"F": 0.25}
    assert ext2.bracket("K1", "P1") == {"M": 1.0}
    assert ext2.bracket("K1", "K2") == {"F": 1.0}
    poi = build_table("Poincare")
    assert poi.bracket("K1", "K2") == {"J": -1.0}
    assert poi.bracket("K1", "P1") == {"H": 1.0}


def test_common_rotation_brackets():
    for table in ALL_TABLES:
        assert table.bracket("J", "P1") == {"P2": 1.0}
        assert table.bracket("J", "P2") == {"P1": -1.0}
        assert table.bracket("K1", "H") == {"P1": 1.0}


def test_antisymmetry_exact():
    for table in ALL_TABLES:
        assert antisymmetry_exact(table)


def test_jacobi_all_shipped_tables():
    for table in ALL_TABLES:
        assert jacobi_residual(table) <= 1e-13


def test_jacobi_detects_corruption():
    table = build_table("NH_minus", extended=True, tau=1.0)
    c = table.constants.copy()
    i, j, k = table.index("K1"), table.index("H"), table.index("P1")
    c[i, j, k] *= -1.0
    c[j, i, k] *= -1.0
    corrupted = StructureTable(table.name, table.extended, table.params, c)
    assert jacobi_residual(corrupted) > 0.5


def test_extension_trivial_for_ds_and_poincare():
    for name in ("dS_minus", "dS_plus"):
        t = build_table(name, extended=True, c=1.0, R=1.0)
        assert not t.extended
        assert t.metadata.get("extension_trivial") is True
    t = build_table("Poincare", extended=True)
    assert not t.extended and t.metadata.get("extension_trivial") is True


def test_param_validation():
    with pytest.raises(ValueError):
        build_table("NH_minus")
    with pytest.raises(ValueError):
        build_table("NH_minus", tau=-1.0)
    with pytest.raises(ValueError):
        build_table("dS_minus", c=1.0)
    with pytest.raises(ValueError):
        build_table("no_such_algebra")


@pytest.mark.parametrize("ds_name", [AlgebraName.DS_MINUS, AlgebraName.DS_PLUS])
def test_contraction_limit(ds_name):
    tau = 1.0
    nh = build_table(nh_limit_of(ds_name), tau=tau)
    base = build_table(ds_name, c=1.0, R=tau)
    dev6 = max_table_deviation(contract(base, 1e6, 1e6 * tau), nh)
    assert dev6 <= 1e-11
    devs = [max_table_deviation(contract(base, c, c * tau), nh) for c in (1e2, 1e3, 1e4)]
    assert devs[1] < devs[0] and devs[2] < devs[1]
    slope = (math.log(devs[2]) - math.log(devs[0])) / (math.log(1e4) - math.log(1e2))
    assert abs(slope + 2.0) <= 0.1


def test_contraction_bracket_coefficient():
    t = contract(build_table("dS_minus", c=1.0, R=1.0), 1e3, 1e3)
    assert t.bracket("K1", "K2") == {"J": -1e-6}
    assert t.metadata["tau"] == pytest.approx(1.0)


def test_contract_rejects_non_ds():
    with pytest.raises(ValueError):
        contract(build_table("Galilei"), 10.0, 10.0)


def test_kirillov_zero_point():
    ext = build_table("NH_minus", extended=True, tau=1.0)
    km = kirillov_matrix(ext, np.zeros(8))
    assert np.all(km.matrix == 0.0)
    assert rank(km) == 0


def test_kirillov_rank_examples():
    ext = build_table("NH_minus", extended=True, tau=1.0)
    # momentum-only point: both extensions null, generic stratum, 4D orbit
    xi_h = DualPoint(0.0, 0.0, 0.0, Vec2(1.0, 0.0), Vec2.zero(), 0.0, 1.0)
    assert rank(kirillov_matrix(ext, xi_h)) == 4
    # degenerate f = m tau point with vanishing C3: 2D orbit
    xi_d = DualPoint(1.0, 1.0, 0.0, Vec2(1.0, 0.0), Vec2(0.0, 1.0), 0.0, 1.0)
    assert classify(xi_d)[0] is OrbitClass.D
    assert rank(kirillov_matrix(ext, xi_d)) == 2
    # circular momentum lock with both extensions null: 2D orbit
    xi_i = DualPoint(0.0, 0.0, 0.3, Vec2(1.0, 0.0), Vec2(1.0, 0.0).perp(), -0.2, 1.0)
    assert classify(xi_i)[0] is OrbitClass.I
    assert rank(kirillov_matrix(ext, xi_i)) == 2


def test_kirillov_matrix_is_antisymmetric_and_even_rank(rng):
    ext = build_table("NH_minus", extended=True, tau=1.0)
    for _ in range(200):
        coords = rng.uniform(-2, 2, size=8)
        km = kirillov_matrix(ext, coords)
        assert np.array_equal(km.matrix, -km.matrix.T)
        assert rank(km) % 2 == 0


def test_rank_matches_orbit_dimension_sample(rng):
    ext = build_table("NH_minus", extended=True, tau=1.0)
    for cls in OrbitClass:
        for _ in range(60):
            xi = random_point_in_class(cls, rng, 1.0)
            assert rank(kirillov_matrix(ext, xi)) == cls.dimension


def test_table_json_round_trip():
    for table in ALL_TABLES:
        back = StructureTable.from_json(table.to_json())
        assert back.name == table.name
        assert back.extended == table.extended
        assert np.array_equal(back.constants, table.constants)
