from __future__ import annotations

from constants import DEFAULT_MAX_ORDER
from group import GroupData, close

# name -> (description, generator matrices)
PRESETS = {
    "segre": ("SU(2) x SU(2) / diagonal -1: W = <-I> on Z^2", [
        [[-1, 0], [0, -1]],
    ]),
    "t3c2": ("T^3 x| C_2 with C_2 = <diag(-1, -1, 1)>", [
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
    ]),
    "a1": ("U(2): the swap of the two circle factors", [
        [[0, 1], [1, 0]],
    ]),
    "b2": ("Sp(2): dihedral group of order 8", [
        [[0, 1], [1, 0]],
        [[-1, 0], [0, 1]],
    ]),
    "so3": ("SO(3): W = <-1> on Z", [
        [[-1]],
    ]),
    "a2": ("U(3): S_3 permuting the coordinates", [
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    ]),
}


def preset_group(name: str, p: int = 0, max_order: int = DEFAULT_MAX_ORDER) -> GroupData:
    """
    Build a preset group.
    Args:
        name (str): Key of PRESETS.
        p (int): Coefficient characteristic.
        max_order (int): Closure bound.
    Raises:
        KeyError: If the preset is unknown.
        PreconditionError: If p is not admissible for the group.
    """
    if name not in PRESETS:
        raise KeyError(f"Unknown preset '{name}' (choose from: {', '.join(PRESETS)})")
    _, gens = PRESETS[name]
    return close(gens, max_order = max_order, characteristic = p, name = name)
