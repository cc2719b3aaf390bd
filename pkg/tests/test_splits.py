import pytest

from squarish.splits import APPLICATIONS, SYMMETRIC_INSTANCES, check_symmetric_instance


@pytest.mark.parametrize("name", sorted(APPLICATIONS))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_named_split_application(name, n):
    chk = APPLICATIONS[name](n).check()
    assert chk.identity_ok, chk.line()
    assert chk.halves_ok, chk.line()
    assert chk.iso_ok, chk.line()


@pytest.mark.parametrize("fam,n,kind", SYMMETRIC_INSTANCES)
def test_symmetric_instance(fam, n, kind):
    chk = check_symmetric_instance(fam, n, kind)
    assert chk.ok, chk.line()
