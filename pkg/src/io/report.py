"""
Deterministic YAML emission of reports, traces and complex documents.

Floats carry 17 significant digits so every double reads back exactly;
mapping order is insertion order, so equal inputs give equal bytes.
"""

import math
from enum import Enum
from typing import Any

import numpy as np
import yaml


class ReportDumper(yaml.SafeDumper):
    """SafeDumper with exact floats, numpy scalars, tuples and enums."""


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    if math.isnan(value):
        text = '.nan'
    elif math.isinf(value):
        text = '.inf' if value > 0 else '-.inf'
    else:
        text = format(value, '.17g')
        if '.' not in text:
            text = text.replace('e', '.0e', 1) if 'e' in text else text + '.0'
    return dumper.represent_scalar('tag:yaml.org,2002:float', text)


def _represent_numpy(dumper: yaml.SafeDumper, value: np.generic) -> yaml.Node:
    return dumper.represent_data(value.item())


def _represent_array(dumper: yaml.SafeDumper, value: np.ndarray) -> yaml.Node:
    return dumper.represent_list(value.tolist())


def _represent_tuple(dumper: yaml.SafeDumper, value: tuple) -> yaml.Node:
    return dumper.represent_list(list(value))


def _represent_enum(dumper: yaml.SafeDumper, value: Enum) -> yaml.Node:
    return dumper.represent_data(value.value)


ReportDumper.add_representer(float, _represent_float)
ReportDumper.add_multi_representer(np.generic, _represent_numpy)
ReportDumper.add_representer(np.ndarray, _represent_array)
ReportDumper.add_representer(tuple, _represent_tuple)
ReportDumper.add_multi_representer(Enum, _represent_enum)


def dump_yaml(data: Any) -> str:
    return yaml.dump(data, Dumper=ReportDumper, sort_keys=False, default_flow_style=False,
                     allow_unicode=True, width=100)


def emit_report(report: Any) -> str:
    """
    Serialize a CheckReport, a VerifiedTrace, a list of them or a plain mapping.

    A report without a witness has no witness field at all.
    """
    if isinstance(report, (list, tuple)):
        data = [item.to_dict() if hasattr(item, 'to_dict') else item for item in report]
    elif hasattr(report, 'to_dict'):
        data = report.to_dict()
    else:
        data = report
    return dump_yaml(data)
