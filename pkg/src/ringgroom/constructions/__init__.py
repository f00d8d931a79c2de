"""Builders for optimal two-period groomings and the stored small cases."""

from __future__ import annotations

from ..designkit.errors import ConstructionFailure
from ..model import ContractViolation, Decomposition, ProblemInstance
from .c1 import build_c1
from .c2 import build_c2
from .c3 import HeadAssignment, build_c3, case_name, general_prescription
from .common import BuildRequest
from .fixtures import FixtureInfo, fixture, fixture_info, fixture_names

_BUILDERS = {1: build_c1, 2: build_c2, 3: build_c3}


def build(req: BuildRequest) -> Decomposition:
    """Dispatch ``req`` to the builder for its C'."""
    inst = req.instance
    if inst.n == 4 and inst.v == 0:
        from ..designkit.mon4 import build_mon_n4

        return build_mon_n4(4).with_instance(inst)
    builder = _BUILDERS.get(inst.groom_cprime)
    if builder is None:
        raise ContractViolation(f"no builder for C'={inst.groom_cprime}")
    return builder(req)


def build_instance(n: int, v: int, cprime: int, mon: bool = False, seed: int = 0) -> Decomposition:
    return build(BuildRequest(ProblemInstance(n, v, cprime), mon, seed))


__all__ = [
    "BuildRequest",
    "ConstructionFailure",
    "FixtureInfo",
    "HeadAssignment",
    "build",
    "build_c1",
    "build_c2",
    "build_c3",
    "build_instance",
    "case_name",
    "fixture",
    "fixture_info",
    "fixture_names",
    "general_prescription",
]
