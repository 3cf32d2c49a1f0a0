"""Tests for sample literals."""

import pytest

from src.core.literals import format_sample, parse_sample
from src.utils.exceptions import DomainException


class TestParseSample:
    def test_parse(self):
        sample = parse_sample("(1,-);(5,+);(8,+)")
        assert sample.points == (1, 5, 8)
        assert sample.labels == (-1, 1, 1)
        assert sample.n == 8

    def test_explicit_domain(self):
        assert parse_sample("(1,-)", 64).n == 64

    def test_whitespace_and_trailing_separator(self):
        sample = parse_sample(" ( 2 , + ) ; (3,-); ")
        assert sample.points == (2, 3)

    @pytest.mark.parametrize("text", ["", "   ", "(1,*)", "(1,+)(2,-)", "1,+", "(0.5,+)"])
    def test_malformed(self, text):
        with pytest.raises(DomainException):
            parse_sample(text)

    def test_point_beyond_domain(self):
        with pytest.raises(DomainException):
            parse_sample("(9,+)", 8)

    def test_format_matches_literal(self):
        text = "(2,-);(9,+)"
        assert format_sample(parse_sample(text, 12)) == text
