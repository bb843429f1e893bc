"""Built-in sample inputs.

Four four-variable Laurent polynomials with unit coefficients ("24", "38",
"39", "41"), the Dwork polynomial X+Y+Z+T+1/(XYZT), a known annihilating
operator for each of the first four, and one large reference coefficient
used by the regression suite: the constant term of sample 39 raised to the
150th power, a 200 digit integer.
"""

from .laurent import LaurentPolynomial, make_polynomial
from .recurrence import DifferentialOperator

_VARS = ("X", "Y", "Z", "T")

# exponent vectors over (X, Y, Z, T); every coefficient is 1

_EXPONENTS_24 = (
    (0, 0, 0, -1), (0, 1, 0, 0), (-1, 0, 0, 1), (-1, 0, 1, 1),
    (-1, -1, 1, 1), (0, 0, -1, 0), (1, 0, -1, 0), (0, 1, -1, -1),
    (1, 0, -1, -1), (1, 1, -1, -1), (0, 1, 0, -1), (0, -1, 0, 1),
    (-1, -1, 0, 1), (-1, 1, 0, 0), (-1, 0, 0, 0), (0, -1, 1, 1),
    (0, 0, 0, 1), (0, -1, 0, 0), (1, 0, 0, 0), (1, 0, 0, -1),
    (0, 0, -1, -1), (0, 0, 1, 0), (0, -1, 1, 0),
)

_EXPONENTS_38 = (
    (1, -1, 0, 0), (0, -1, 1, 1), (0, 0, 1, 0), (1, 0, 0, 0),
    (0, 0, 0, 1), (1, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 1, 0),
    (-1, 1, 1, 0), (-1, 0, -1, -1), (-1, 1, -1, -1), (-1, 1, 0, -1),
    (0, 0, -1, -1), (0, 0, -1, 0), (0, -1, -1, 0), (0, -1, 0, 1),
    (1, -1, -1, 0), (0, 1, -1, -1), (-1, 0, 0, -1), (-1, 0, 0, 0),
    (0, -1, 0, 0), (-1, 1, 0, 0), (0, 0, 0, -1),
)

_EXPONENTS_39 = (
    (1, -1, -1, 0), (-1, -1, 1, 1), (0, 0, 1, 1), (0, 0, 0, 1),
    (-1, 1, 0, 0), (-1, 0, 1, 0), (-1, 1, 0, -1), (0, 1, 0, 0),
    (1, 1, -1, -1), (1, 0, -1, 0), (0, 1, 0, -1), (0, 0, 1, 0),
    (0, 0, 0, -1), (1, 0, 0, 0), (1, -1, 0, 0), (0, -1, 1, 1),
    (1, 0, -1, -1), (0, 1, -1, -1), (-1, 0, 0, 0), (0, -1, 0, 0),
    (-1, 0, 1, 1), (0, -1, 0, 1), (0, 0, -1, 0),
)

_EXPONENTS_41 = (
    (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, -1, -1),
    (0, 0, 0, 1), (-1, 0, -1, 0), (0, -1, -1, 0), (-1, -1, 0, 0),
    (-1, 0, 0, -1), (1, 0, 1, 1), (0, -1, 0, -1), (0, 1, 1, 1),
    (-1, -1, -1, 0), (-1, -1, 0, -1), (-1, 0, -1, -1), (0, -1, -1, -1),
    (1, 1, 1, 1), (-1, -1, -1, -1), (0, 1, 0, 0), (1, 0, 0, 0),
    (0, 0, 1, 0), (0, 0, 0, -1), (0, 0, -1, 0), (-1, 0, 0, 0),
    (0, -1, 0, 0),
)

_EXPONENTS_DWORK = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (-1, -1, -1, -1),
)

_SAMPLES = {
    "24": _EXPONENTS_24,
    "38": _EXPONENTS_38,
    "39": _EXPONENTS_39,
    "41": _EXPONENTS_41,
    "dwork4": _EXPONENTS_DWORK,
}

SAMPLE_NAMES = tuple(sorted(_SAMPLES))


def sample_polynomial(name: str) -> LaurentPolynomial:
    name = str(name)
    if name not in _SAMPLES:
        raise KeyError(f"unknown sample {name!r}; have {', '.join(SAMPLE_NAMES)}")
    return make_polynomial(_VARS, [(1, e) for e in _SAMPLES[name]])


# --- known annihilating operators -------------------------------------------
#
# theta-polynomials are tuples of coefficients in ascending powers of theta.
# The factored pieces are multiplied out at import time.

_THETA = (0, 1)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _pscale(a, c):
    return tuple(c * x for x in a)


def _shifted(*offsets):
    """Product of (theta + offset) over the given offsets."""
    out = (1,)
    for k in offsets:
        out = _pmul(out, (k, 1))
    return out


def _pad(polys, width=5):
    return tuple(tuple(p) + (0,) * (width - len(p)) for p in polys)


_OPERATOR_24 = DifferentialOperator(_pad((
    (0, 0, 0, 0, 9409),
    _pscale(_pmul(_THETA, (-291, -1300, -2018, 1727)), 97),
    (-2709792, -10216234, -16174393, -13428812, -1652135),
    (-138000348, -443115594, -568639497, -364126194, -81753435),
    (-3049275024, -8869415520, -10006378570, -5423394464, -1175502862),
    (-38537290992, -103964102350, -106108023451, -50507429234, -9726250397),
    (-308040167808, -781527778884, -733053660150, -312374434824, -52762935894),
    (-1619360309088, -3901093356168, -3399527062044, -1313199235080,
     -195453433908),
    _pscale(_pmul(_shifted(1), (38959393614, 50808614711, 22487363787,
                                3432647479)), -144),
    _pscale(_pmul(_shifted(1, 2), (14314039440, 10262864555, 1903493629)), -432),
    _pscale(_pmul(_shifted(1, 2, 3), (5992902, 1862987)), -438048),
    _pscale(_shifted(1, 2, 3, 4), -368028363456),
)))

_OPERATOR_38 = DifferentialOperator(_pad((
    (0, 0, 0, 0, 10404),
    _pscale(_pmul(_THETA, (204, 911, 1414, 116)), -102),
    (-2663424, -9947652, -14508941, -9892670, -2596259),
    (-67967496, -206933112, -239004708, -125234088, -25685301),
    (-598491604, -1608054100, -1587508748, -687051032, -112357900),
    (-2495389956, -6085656898, -5273754198, -1927713868, -254678692),
    (-5385015134, -11995897911, -9101625228, -2758627602, -283337071),
    (-5612134720, -11209872916, -7075746650, -1555791344, -86504770),
    _pscale(_pmul(_shifted(1), (-134696600, -51849552, 27844427, 7613560)), 12),
    _pmul(_shifted(1, 2), (595115780, 495871401, 60585089)),
    _pscale(_pmul(_shifted(1, 2, 3), (-113205, 10279)), -600),
    _pscale(_shifted(1, 2, 3, 4), -6790000),
)))

_OPERATOR_39 = DifferentialOperator(_pad((
    (0, 0, 0, 0, 16),
    _pscale(_pmul(_THETA, (12, 53, 82, 2)), -4),
    (-5120, -18308, -26199, -18410, -4895),
    (-143808, -430092, -497452, -272424, -60679),
    (-1478544, -3987101, -4034628, -1870838, -344527),
    _pscale(_pmul(_shifted(1), (7492832, 11226106, 5847783, 1076509)), -1),
    _pscale(_pmul(_shifted(1, 2), (5045304, 4249317, 944887)), -2),
    _pscale(_pmul(_shifted(1, 2, 3), (1381, 518)), -3328),
    _pscale(_shifted(1, 2, 3, 4), -621920),
)))

_OPERATOR_41 = DifferentialOperator(_pad((
    (0, 0, 0, 0, 8281),
    _pscale(_pmul(_THETA, (-273, -1210, -1874, 782)), 91),
    (-2649920, -9962953, -15227939, -11622522, -2515785),
    (-110445426, -348819198, -432607868, -258678126, -59827597),
    (-1915723890, -5439732380, -5901995820, -2998881218, -612043042),
    (-18479595006, -48522700563, -47503242813, -21226829058, -3762840342),
    (-110147546634, -271941545379, -244753624741, -98210309094, -15265487382),
    (-422269162452, -991829482602, -831965057114, -304487632282, -42103272002),
    _pscale(_pmul(_shifted(1), (521254338620, 654332416678, 275108963001,
                                39253400626)), -2),
    _pscale(_pmul(_shifted(1, 2), (799002779040, 545340710193, 94987355417)), -1),
    _pscale(_pmul(_shifted(1, 2, 3), (149264765, 43765159)), -1540),
    _pscale(_shifted(1, 2, 3, 4), -21292817700),
)))

_OPERATORS = {
    "24": _OPERATOR_24,
    "38": _OPERATOR_38,
    "39": _OPERATOR_39,
    "41": _OPERATOR_41,
}

OPERATOR_NAMES = tuple(sorted(_OPERATORS))


def sample_operator(name: str) -> DifferentialOperator:
    """The known annihilator of the constant term series of sample `name`."""
    name = str(name)
    if name not in _OPERATORS:
        raise KeyError(f"no operator for sample {name!r}")
    return _OPERATORS[name]


# constant term of sample 39 to the 150th power; regression reference.
# Two independent routes confirm the exponent: the modular engine with full
# reconstruction, and extending the dense-oracle prefix with the sample's
# recurrence over exact rationals.  (The 151st power has 201 digits and
# starts 3498...)
SAMPLE39_POWER150_CONSTANT = int(
    "15412036066982883611159466717890839926274227993361685769096965357956125"
    "0836097113850549748895583119569242295079022614473032754474202469738117581"
    "03097074502829198076370950235391810731785760778732696320")

assert len(str(SAMPLE39_POWER150_CONSTANT)) == 200
