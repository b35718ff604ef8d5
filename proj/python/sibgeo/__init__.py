"""Numerical verification of sibling metric identities."""

import json

from ._core import Error, check_names, expr_jet, gallery_names

__all__ = ["Error", "check_names", "curvature", "expr_jet", "gallery_config", "gallery_names", "verify"]


def verify(source):
    """Run the verification suite.

    `source` is a gallery name, a path to a config file, or a config dict.
    Returns the report as a dict.
    """
    from . import _core

    if isinstance(source, dict):
        return json.loads(_core.verify_config_json(json.dumps(source)))
    return json.loads(_core.verify_json(str(source)))


def gallery_config(name):
    from . import _core

    return json.loads(_core.gallery_config_json(name))


def curvature(source, point):
    from . import _core

    return json.loads(_core.curvature_json(str(source), list(point)))
