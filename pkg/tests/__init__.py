"""Test package marker to enable intra-test imports."""
