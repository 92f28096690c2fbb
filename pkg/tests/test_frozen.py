"""The frozen golden values must still be what the oracles produce."""

import frozen
from freeze_oracles import compute


def test_frozen_values_match_oracles():
    fresh = compute()
    assert set(fresh) == {k for k in vars(frozen) if k.isupper()}
    for key, value in fresh.items():
        assert getattr(frozen, key) == value, key
