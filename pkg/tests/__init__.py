"""Test suite for hornsat."""
