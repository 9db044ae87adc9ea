"""Random single-field corruptions of certificate JSON."""

import copy

from raagrh.commgraph import _digest


def leaves(obj, path=()):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from leaves(obj[k], path + (k,))
    elif isinstance(obj, list) and obj:
        for i, x in enumerate(obj):
            yield from leaves(x, path + (i,))
    else:
        yield path


def _get(obj, path):
    for k in path:
        obj = obj[k]
    return obj


def _set(obj, path, value):
    _get(obj, path[:-1])[path[-1]] = value


def _mutate_value(rng, v):
    if isinstance(v, bool):
        return not v
    if isinstance(v, int):
        return v + rng.choice([-2, -1, 1, 2, 7])
    if isinstance(v, str):
        choices = [v + "x", v[:-1] if v else "z", v.upper() if v != v.upper() else v.lower(), ""]
        return rng.choice([c for c in choices if c != v])
    if v is None:
        return {}
    if isinstance(v, list):
        return [0]
    return None


def corrupt(rng, cert, reseal=False, skip=()):
    """Copy of cert with one leaf changed, one list entry dropped or one key removed."""
    bad = copy.deepcopy(cert)
    paths = [p for p in leaves(bad) if p and p[0] not in skip and p[0] != "digest"]
    while True:
        path = rng.choice(paths)
        kind = rng.random()
        parent = _get(bad, path[:-1])
        if kind < 0.7:
            _set(bad, path, _mutate_value(rng, _get(bad, path)))
        elif kind < 0.85 and isinstance(path[-1], int):
            del parent[path[-1]]
        elif isinstance(parent, dict) and len(path) > 1:
            del parent[path[-1]]
        else:
            continue
        break
    if reseal:
        bad["digest"] = _digest(bad)
    return bad, path
