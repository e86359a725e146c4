"""
Published six-digit reference values for the polynomial separations and the
seven lowest levels of both wells.

Golden values live only here; the library always recomputes.
"""

from typing import Dict, List

EVEN_PARAMS: Dict[int, List[str]] = {
    1: ["1"],
    2: ["1.58114"],
    3: ["0.602114", "2.03407"],
    4: ["1.07461", "2.41769"],
    5: ["0.476251", "1.47524", "2.75624"],
    6: ["0.881604", "1.82861", "3.06251"],
}

ODD_PARAMS: Dict[int, List[str]] = {
    2: ["0.707107"],
    3: ["1.22474"],
    4: ["0.524648", "1.65068"],
    5: ["0.958572", "2.02018"],
    6: ["0.436077", "1.33585", "2.3506"],
}

SEPARATED_LIMIT: List[float] = [1, 1, 3, 3, 5, 5, 7]

DOUBLE_LEVELS: Dict[str, List[str]] = {
    # d = 0 is the plain oscillator; the row printed there is the separated-well limit
    "0": ["1", "3", "5", "7", "9", "11", "13"],
    "1/10": ["0.895426", "2.78209", "4.72612", "6.66950", "8.62731", "10.5849", "12.5497"],
    "1/4": ["0.768973", "2.48392", "4.34603", "6.20358", "8.09868", "9.99237", "11.9046"],
    "1/2": ["0.635529", "2.06077", "3.79417", "5.50548", "7.29817", "9.08421", "10.9098"],
    "3/4": ["0.590301", "1.72471", "3.34471", "4.90343", "6.59770", "8.27404", "10.0146"],
    "1": ["0.618919", "1.46847", "3", "4.39493", "5.99720", "7.56038", "9.21846"],
    "3/2": ["0.801494", "1.15748", "2.64868", "3.64627", "5.10400", "6.41679", "7.92382"],
    "2": ["0.951419", "1.03576", "2.73504", "3.22301", "4.67082", "5.64089", "7.04349"],
    "3": ["0.999551", "1.00039", "2.99252", "3.00604", "4.94552", "5.03982", "6.79866"],
    "4": ["0.999999", "1.000000", "2.99998", "3.00001", "4.99977", "5.00020", "6.99802"],
}

SINGLE_LEVELS: Dict[str, List[str]] = {
    "1/10": ["1.12121", "3.23353", "5.29034", "7.34657", "9.38899", "11.4312", "13.4665"],
    "1/4": ["1.33487", "3.61368", "5.75688", "7.89681", "10.0032", "12.1086", "14.1970"],
    "1/2": ["1.77790", "4.32871", "6.61797", "8.89589", "11.1096", "13.3194", "15.4967"],
    "3/4": ["2.33218", "5.14812", "7.58472", "9.99898", "12.3203", "14.6339", "16.9002"],
    "1": ["3", "6.07439", "8.65856", "11.2076", "13.6366", "16.0533", "18.4086"],
    "3/2": ["4.68276", "8.25537", "11.1329", "13.9472", "16.5907", "19.2113", "21.7441"],
    "2": ["6.83597", "10.8843", "14.0506", "17.1244", "19.9803", "22.8017", "25.5108"],
    "5/2": ["9.46595", "13.9704", "17.4196", "20.7471", "23.8127", "26.8318", "29.7154"],
}


def printed_tolerance(text: str, floor: float = 0.0) -> float:
    """Half a unit in the last printed digit, at least floor.

    Integers such as "3" are exact and only get the floor.
    """
    if "." not in text:
        return floor
    decimals = len(text.split(".")[1])
    return max(0.5 * 10.0 ** -decimals, floor) * (1.0 + 1e-9)
