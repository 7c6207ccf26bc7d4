"""Flat connections over coverings of finite 2-complexes."""

import json

from ._flatcover import (
    CapExceeded,
    Group,
    InputError,
    Instance,
    PreconditionError,
    catalog_group,
    catalog_names,
    random_instances,
    run_command,
)

__all__ = [
    "CapExceeded",
    "Group",
    "InputError",
    "Instance",
    "PreconditionError",
    "catalog_group",
    "catalog_names",
    "load",
    "random_instances",
    "run_command",
    "verify",
]


def load(source, cap=1_000_000):
    """Build an Instance from a dict, JSON text, or a file path."""
    if isinstance(source, dict):
        return Instance.from_json(json.dumps(source), cap)
    text = str(source)
    if text.lstrip().startswith("{"):
        return Instance.from_json(text, cap)
    return Instance.from_file(text, cap)


def verify(instance, seed, samples=100, relaxed_gates=False):
    """Run every check and return the reports as dicts."""
    return json.loads(instance.verify(samples=samples, seed=seed, relaxed_gates=relaxed_gates))
