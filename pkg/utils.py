"""
Utility functions for the q-congruence lab: command-line value parsing,
logging setup and row ordering
"""

import logging
import sys

from errors import ConfigError

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def setup_logging(level='INFO'):
    """
    Configure root logging on stderr

    Args:
        level: level name or number

    Returns:
        None
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def parse_int_list(value):
    """
    Parse "3,5,7" or "1-13" or a mix such as "1-5,9"

    Args:
        value: comma separated integers and inclusive ranges

    Returns:
        list: sorted distinct integers
    """
    if value is None or str(value).strip() == '':
        return []
    out = set()
    for part in str(value).split(','):
        part = part.strip()
        if not part:
            continue
        try:
            if '-' in part[1:]:
                cut = part.index('-', 1)
                lo, hi = int(part[:cut]), int(part[cut + 1:])
                if lo > hi:
                    raise ConfigError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise ConfigError(f"not an integer list: {value!r}") from None
    return sorted(out)


def parse_pairs(value):
    """
    Parse m/r groups for the exponent table

    Args:
        value: groups "m:r-list" separated by ';', e.g. "2:1,3,5;3:1-8"

    Returns:
        list: (m, [r, ...]) tuples in the given order
    """
    pairs = []
    for group in str(value).split(';'):
        group = group.strip()
        if not group:
            continue
        if ':' not in group:
            raise ConfigError(f"expected m:r-list, got {group!r}")
        m, rs = group.split(':', 1)
        try:
            m = int(m)
        except ValueError:
            raise ConfigError(f"m must be an integer, got {m!r}") from None
        r_values = parse_int_list(rs)
        if not r_values:
            raise ConfigError(f"no r values for m = {m}")
        pairs.append((m, r_values))
    return pairs


def parse_id_list(value):
    if value is None:
        return []
    return [part.strip() for part in str(value).split(',') if part.strip()]


def params_key(params):
    """Sort key for a parameter dict: its items in name order"""
    return tuple(sorted(params.items()))


def row_key(result):
    return (result.id, params_key(result.params))
