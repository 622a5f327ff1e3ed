"""Unit tests for achronal"""
