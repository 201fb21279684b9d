"""Published 2x2 worked example: public sets, private words and every
intermediate value of the exchange, used by ``aer demo`` and the tests."""

from .aag import GeneratorWord, PublicParams
from .matrix import AerMatrix

P = AerMatrix.parse

SET_A = tuple(map(P, [
    "{{234,67},{219,0}}",
    "{{162,202},{121,143}}",
    "{{67,137},{220,106}}",
    "{{199,110},{183,92}}",
    "{{237,239},{211,252}}",
]))

SET_B = tuple(map(P, [
    "{{88,183},{153,25}}",
    "{{8,73},{160,26}}",
    "{{142,10},{22,153}}",
    "{{202,231},{110,0}}",
    "{{47,118},{238,49}}",
]))

PARAMS = PublicParams(2, SET_A, SET_B)

# x = a1 . (a3)^2 . (a5)^-1,  y = (b1)^3 . (b2)^-2 . b4
WORD_A = GeneratorWord(((1, 1), (3, 2), (5, -1)))
WORD_B = GeneratorWord(((1, 3), (2, -2), (4, 1)))

EXPECTED = {
    "x1": P("{{234,67},{219,0}}"),
    "x2": P("{{157,61},{184,176}}"),
    "x3": P("{{139,111},{158,137}}"),
    "x": P("{{244,199},{161,106}}"),
    "invx": P("{{207,42},{35,163}}"),
    "APrime": tuple(map(P, [
        "{{96,46},{247,33}}",
        "{{201,184},{199,219}}",
        "{{181,239},{202,162}}",
        "{{157,134},{43,87}}",
        "{{57,198},{39,39}}",
    ])),
    "y1": P("{{105,152},{218,62}}"),
    "y2": P("{{96,185},{146,230}}"),
    "y3": P("{{202,231},{110,0}}"),
    "y": P("{{54,252},{233,201}}"),
    "iny": P("{{167,247},{222,209}}"),
    "BPrime": tuple(map(P, [
        "{{155,88},{93,113}}",
        "{{67,219},{82,110}}",
        "{{70,38},{195,111}}",
        "{{45,184},{255,182}}",
        "{{199,175},{205,214}}",
    ])),
    "xprime1": P("{{155,88},{93,113}}"),
    "xprime2": P("{{16,161},{146,61}}"),
    "xprime3": P("{{58,176},{107,56}}"),
    "xprime": P("{{138,127},{241,20}}"),
    "KEYalice": P("{{136,128},{80,156}}"),
    "yprime1": P("{{64,66},{133,23}}"),
    "yprime2": P("{{226,245},{221,100}}"),
    "yprime3": P("{{157,134},{43,87}}"),
    "yprime": P("{{70,1},{182,185}}"),
    "invKey": P("{{156,128},{80,136}}"),
    "KEYbob": P("{{136,128},{80,156}}"),
}

SHARED_KEY = EXPECTED["KEYalice"]

# Successive powers 1..18 of a singular element; power 17 is a spurious
# identity and power 18 re-enters the cycle at power 1.
SPURIOUS_BASE = P("{{165,182},{199,138}}")
SPURIOUS_POWERS = tuple(map(P, [
    "{{165,182},{199,138}}", "{{110,217},{146,87}}", "{{35,213},{242,62}}",
    "{{230,10},{80,208}}", "{{42,61},{243,153}}", "{{170,161},{127,224}}",
    "{{192,210},{202,200}}", "{{95,199},{98,60}}", "{{93,146},{252,142}}",
    "{{3,242},{209,235}}", "{{113,80},{182,218}}", "{{75,243},{217,164}}",
    "{{39,127},{213,65}}", "{{90,202},{10,26}}", "{{206,98},{61,251}}",
    "{{222,252},{161,28}}", "{{24,209},{210,25}}", "{{165,182},{199,138}}",
]))

# Table of set sizes 256^(n^2), as printed (mantissa, exponent).
CARDINALITY_TABLE = {
    2: ("4.294967296", 9),
    3: ("4.722366482869645", 21),
    4: ("3.402823669209384", 38),
    5: ("1.60693804425899", 60),
    6: ("4.973232364097866", 86),
    7: ("1.008691358627698", 118),
    8: ("1.340780792994259", 154),
}
