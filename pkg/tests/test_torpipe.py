import pytest

from cohh.cochain import BidegreeWindow, WindowTooSmall
from cohh.cohomology import EXTERIOR_POLYNOMIAL
from cohh.exactfield import CompositeCharacteristic
from cohh.torpipe import FreeResolution, fp_resolution, hz_e2_pipeline, tor_fp


def test_tor_dims():
    assert tor_fp(3, 5) == [1, 1, 0, 0, 0, 0]
    assert tor_fp(2, 3) == [1, 1, 0, 0]
    assert tor_fp(7, 0) == [1]


def test_tor_rejects_bad_characteristic():
    with pytest.raises(CompositeCharacteristic):
        tor_fp(4, 3)
    with pytest.raises(ValueError):
        tor_fp(0, 3)


def test_resolution_validation():
    res = fp_resolution(5)
    assert res.ranks == [1, 1]
    with pytest.raises(ValueError):
        FreeResolution(ranks=[1, 1], differentials=[[[5], [5]]])
    with pytest.raises(ValueError):
        # x2 then x3 does not compose to zero over the integers
        FreeResolution(ranks=[1, 1, 1], differentials=[[[2]], [[3]]])
    FreeResolution(ranks=[1, 1, 1], differentials=[[[2]], [[0]]])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pipeline_table(p):
    window = BidegreeWindow(3, 6)
    result = hz_e2_pipeline(p, window)
    nonzero = {k for k, v in result.table.entries.items() if v}
    assert nonzero == {
        (0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4)
    }
    assert all(v == 1 for v in result.table.entries.values() if v)
    assert result.identification.shape == EXTERIOR_POLYNOMIAL
    assert result.identification.degrees == [1]
    assert "||τ||=(0,1)" in result.description
    assert "||ω||=(1,1)" in result.description
    assert f"F_{p}[" in result.description
    assert result.tor_dims[:3] == [1, 1, 0]


def test_pipeline_window_precondition():
    with pytest.raises(WindowTooSmall):
        hz_e2_pipeline(3, BidegreeWindow(2, 6))
    with pytest.raises(WindowTooSmall):
        hz_e2_pipeline(3, BidegreeWindow(3, 5))


def test_pipeline_rejects_composite():
    with pytest.raises(CompositeCharacteristic):
        hz_e2_pipeline(4, BidegreeWindow(3, 6))
