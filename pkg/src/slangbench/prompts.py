"""Bundled prompt templates and placeholder substitution.

Templates contain literal JSON braces, so rendering is plain token
replacement of the known ``{placeholder}`` names rather than
``str.format``. Substitution is byte-exact: nothing else in the template
is touched.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import UsageError

GENERATION_TEMPLATES = {
    "U-F": "u_f.txt",
    "U-R": "u_r.txt",
    "U-C": "u_c.txt",
    "C-F": "c_f.txt",
    "C-R": "c_r.txt",
    "C-C": "c_c.txt",
}

TASK_TEMPLATES = {
    "task1": "task1.txt",
    "task2": "task2.txt",
    "task3": "task3.txt",
}

_PLACEHOLDERS = (
    "number_of_slang", "existing_words", "definition",
    "masked_usage", "word", "usage", "A", "B", "C", "D",
)


@lru_cache(maxsize=None)
def load_template(template_id: str) -> str:
    filename = GENERATION_TEMPLATES.get(template_id) or TASK_TEMPLATES.get(template_id)
    if filename is None:
        raise UsageError(f"unknown template {template_id!r}")
    return resources.files("slangbench.data.prompts").joinpath(filename).read_text("utf-8")


def render_template(template_id: str, bindings: dict[str, object]) -> str:
    """Substitute bindings into a bundled template; unresolved placeholders error."""
    text = load_template(template_id)
    for key, value in bindings.items():
        if isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value)
        text = text.replace("{" + key + "}", str(value))
    for name in _PLACEHOLDERS:
        if "{" + name + "}" in text:
            raise UsageError(f"template {template_id} is missing a binding for {name!r}")
    return text
