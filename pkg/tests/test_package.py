import gcomplexity


def test_all_exports_resolve():
    for name in gcomplexity.__all__:
        assert getattr(gcomplexity, name) is not None


def test_all_has_no_duplicates():
    names = list(gcomplexity.__all__)
    assert len(names) == len(set(names))
