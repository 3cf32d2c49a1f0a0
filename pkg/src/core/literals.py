"""Text literals for samples: ``(x,y);(x,y);...`` with y in {+, -}."""

import re

from src.core.models import NEGATIVE, POSITIVE, LabeledExample, Sample
from src.utils.exceptions import DomainException

_EXAMPLE_PATTERN = re.compile(r"^\(\s*(\d+)\s*,\s*([+-])\s*\)$")
_LABELS = {"+": POSITIVE, "-": NEGATIVE}


def parse_sample(text: str, n: int | None = None) -> Sample:
    """Parse a sample literal; ``n`` defaults to the largest point."""
    if not isinstance(text, str) or not text.strip():
        raise DomainException("Sample literal is empty", argument="sample", value=text)

    examples = []
    for chunk in text.strip().rstrip(";").split(";"):
        match = _EXAMPLE_PATTERN.match(chunk.strip())
        if not match:
            raise DomainException(
                f"Malformed example '{chunk.strip()}' in sample literal; expected '(x,+)' or '(x,-)'",
                argument="sample",
                value=text,
            )
        examples.append(LabeledExample(int(match.group(1)), _LABELS[match.group(2)]))

    size = n if n is not None else max(ex.x for ex in examples)
    return Sample(tuple(examples), size)


def format_sample(sample: Sample) -> str:
    return str(sample)
