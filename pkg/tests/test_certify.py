import json
import os

import pytest

from fermatlines.certify import (CertificationConfig, GENERATED, certify_duality, mixed_index_map,
                                 primitivity_toolkit, reproduce_table_row)
from fermatlines.errors import RowNotFound
from fermatlines.table import degrees


def test_index_map_is_bijective():
    for m in (5, 7, 11):
        nu = mixed_index_map(m)
        b2 = m ** 3 - 4 * m ** 2 + 6 * m - 2
        assert sorted(nu) == list(range(1, (125 if m == 5 else b2) + 1))


def test_certificate_json_order_and_strings():
    cert = reproduce_table_row(5)
    d = json.loads(cert.to_json())
    assert list(d)[:12] == ["schema_version", "m", "mode", "cover", "f", "pairs", "per_ell", "discs",
                            "verdict", "seed", "elapsed_ms", "f_source"]
    assert d["verdict"] == GENERATED and d["per_ell"][0]["trace"][-1] == "0"
    assert all(isinstance(x, str) for x in d["per_ell"][0]["trace"])


def test_replay_is_deterministic():
    a = reproduce_table_row(7, seed=3)
    b = reproduce_table_row(7, seed=3)
    assert [t.trace for t in a.per_ell] == [t.trace for t in b.per_ell]


def test_search_mode_without_table():
    cert = certify_duality(CertificationConfig(m=7, seed=1))
    assert cert.verdict == GENERATED and cert.f_source == "search"


def test_degenerate_pair_is_inconclusive():
    cfg = CertificationConfig(m=7, f=[1, 5, 1], pairs=[([1], [0, 0])], seed=0)
    # replace the placeholder beta by a square root of 2
    from fermatlines.field_tower import build_field_ctx, sqrt_in_ext
    ctx = build_field_ctx(13, [1, 5, 1], 7)
    cfg.pairs = [([1], list(sqrt_in_ext(ctx(2)).coeffs))]
    cert = certify_duality(cfg)
    assert cert.verdict == "INCONCLUSIVE"
    assert cert.per_ell[0].final > 0


def test_config_validation():
    with pytest.raises(ValueError):
        CertificationConfig(m=17, mode="discriminant")
    with pytest.raises(ValueError):
        CertificationConfig(m=7, ells=[5])
    with pytest.raises(RowNotFound):
        reproduce_table_row(6)


def test_primitivity_toolkit():
    rep = primitivity_toolkit()
    assert rep.ok, rep.failures


LARGE = [m for m in degrees() if m > 35]


@pytest.mark.skipif(not os.environ.get("FERMATLINES_LARGE_TABLE"),
                    reason="machine-scale; set FERMATLINES_LARGE_TABLE=1")
@pytest.mark.parametrize("m", LARGE)
def test_large_table_rows(m):
    cert = reproduce_table_row(m, seed=0)
    for t in cert.per_ell:
        assert all(a >= b for a, b in zip(t.trace, t.trace[1:]))
    assert cert.verdict == GENERATED
