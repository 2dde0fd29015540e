import pytest

from preproj.errors import FieldDegenerate, ValidationError
from preproj.fields import QQ, FpElement, PrimeField, field_from_spec


def test_rationals():
    assert QQ.from_int(3) / QQ.from_int(2) + QQ.one == QQ.from_int(5) / QQ.from_int(2)
    assert not QQ.zero
    assert QQ.one


def test_fp_arithmetic():
    F = PrimeField(7)
    a = F.from_int(3)
    b = F.from_int(5)
    assert a + b == F.from_int(1)
    assert a * b == F.from_int(1)
    assert -a == F.from_int(4)
    assert a / b == a * F.from_int(3)  # 5^{-1} = 3 mod 7
    assert (a - a) == F.zero
    assert hash(a) == hash(F.from_int(10))


def test_fp_division_by_zero():
    F = PrimeField(101)
    with pytest.raises(FieldDegenerate):
        F.one / F.zero


def test_prime_validation():
    with pytest.raises(ValidationError):
        PrimeField(6)
    with pytest.raises(ValidationError):
        PrimeField(1)


def test_field_from_spec():
    assert field_from_spec(None) is not None
    assert field_from_spec("rational").kind == "rational"
    assert field_from_spec("fp:101").p == 101
    assert field_from_spec({"type": "prime", "p": 13}).p == 13
    for bad in ("fp:abc", "float", {"type": "prime"}, {"type": "real"}, 5):
        with pytest.raises(ValidationError):
            field_from_spec(bad)


def test_fp_element_int_compare():
    F = PrimeField(5)
    assert F.from_int(7) == 2
    assert FpElement(4, 5) != FpElement(4, 7)
