"""The small frameworks used throughout the docs and tests."""

from .control import CAF
from .dlpa.parser import parse_formula
from .oracle import ArgFramework
from .uncertainty import CIAF, IAF, RIAF

A0 = ArgFramework(
    "abcde", {("b", "a"), ("d", "a"), ("c", "b"), ("e", "d"), ("c", "e"), ("e", "c")}
)

# no stable extension, single semi-stable one
A1 = ArgFramework("abcd", {("b", "a"), ("c", "b"), ("d", "b"), ("d", "d")})

# separates preferred from semi-stable and ideal from eager
A2 = ArgFramework(
    "abcde", {("b", "a"), ("a", "b"), ("b", "c"), ("d", "e"), ("e", "c"), ("c", "d")}
)

IAF0 = IAF(
    fixed_args="abd",
    fixed_atts={("b", "a"), ("d", "a"), ("c", "b"), ("e", "d"), ("c", "e"), ("e", "c"), ("f", "e")},
    unc_args="cef",
    unc_atts={("f", "c")},
)

RIAF0 = RIAF(
    fixed_args="abd",
    fixed_atts={("b", "a"), ("d", "a"), ("c", "b"), ("e", "d"), ("f", "e")},
    unc_args="cef",
    unc_atts={("f", "c")},
    sym_atts={("c", "e"), ("e", "c")},
)

# exactly one of the two attacks between a and b
CIAF0 = CIAF(
    "ab",
    parse_formula(
        "aw(a) & aw(b) & (att(a,b) | att(b,a)) & ~(att(a,b) & att(b,a))"
        " & ~att(a,a) & ~att(b,b)"
    ),
)

CAF0 = CAF(
    fixed_args="a",
    fixed_atts={("f", "e")},
    unc_args="cef",
    unc_atts={("f", "c")},
    sym_atts={("c", "e"), ("e", "c")},
    ctrl_args="bd",
    ctrl_atts={("b", "a"), ("d", "a"), ("c", "b"), ("e", "d")},
)
