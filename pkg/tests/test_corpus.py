import pytest

from homlie.corpus import FILES, GOLDENS, example_text, load_example


def test_every_file_loads():
    for name in FILES:
        ex = load_example(name)
        assert ex.filename == FILES[name] and ex.text == example_text(name)
        assert ex.document.algebras


def test_unknown_name():
    with pytest.raises(KeyError, match="unknown example"):
        load_example("nope")


def test_golden_inputs_are_known():
    for name, (_, inputs) in GOLDENS.items():
        assert name in FILES and all(i in FILES for i in inputs)


def test_reconciled_entry_present():
    nu = load_example("nu6").document.algebra()
    assert list(nu.product.c[1, 2]) == [0, 0, 0, 0, 0, 1]
