"""
Unit tests for achronal components.
"""
