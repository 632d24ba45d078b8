"""
Tests for thermoshift.
"""
