"""Periodic matching schedulers for pairwise-meeting problems.

Instances are graphs of people and relationships; one matching of
meetings happens per day.  The optimisation flavour minimises the worst
growth-rate-times-recurrence product (heat), the decision flavour asks
for a schedule meeting per-edge deadline frequencies.
"""

__version__ = "0.1.0"

from .core import (
    DpsInstance,
    Edge,
    HeatReport,
    InstanceError,
    OpsInstance,
    Person,
    PolyschedError,
    PreconditionError,
    RefusalError,
    Schedule,
    ValidationError,
    dps_instance,
    gstar,
    heat,
    local_density,
    normalize,
    ops_instance,
    recurrence_time,
    schedule,
    validate_dps,
)

__all__ = [
    "DpsInstance",
    "Edge",
    "HeatReport",
    "InstanceError",
    "OpsInstance",
    "Person",
    "PolyschedError",
    "PreconditionError",
    "RefusalError",
    "Schedule",
    "ValidationError",
    "dps_instance",
    "gstar",
    "heat",
    "local_density",
    "normalize",
    "ops_instance",
    "recurrence_time",
    "schedule",
    "validate_dps",
    "__version__",
]
