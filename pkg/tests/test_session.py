import pytest

from kcorr.errors import (InvalidObject, ParseError, ResolveError)
from kcorr.exactalg import PrimeField, QQ
from kcorr.session import Session, parse_session, print_session

TWOPTS_FIXTURE = """
format 1
field Q
# worked example: rank-one summand of the trivial rank-two bundle
variety pt { vars = []; ideal = [] }
variety TwoPts { vars = [y]; ideal = [y^2 - y] }
map incl1 : pt -> TwoPts { y = 1 }
corr PHI : pt -> TwoPts { n = 2; unit = [[1, 0], [0, 1]]; gen y = [[1, 0], [0, 0]] }
morphism E11 : PHI -> PHI { matrix = [[1, 0], [0, 0]] }
morphism TH : PHI -> PHI { matrix = [[2, 0], [0, 3]] }
morphism THI : PHI -> PHI { matrix = [[1/2, 0], [0, 1/3]] }
aut ROT { base = PHI; theta = [TH]; theta_inv = [THI] }
validate
compose PHI PHI
k0 PHI
"""


def test_empty_session():
    s = parse_session("")
    assert s == Session()
    assert s.field == QQ
    assert not s.decls and not s.commands


def test_twopts_fixture_loads_and_validates():
    s = parse_session(TWOPTS_FIXTURE)
    assert [k for k, _ in s.decls] == ["variety", "variety", "map", "corr",
                                       "morphism", "morphism", "morphism", "aut"]
    assert s.corrs["PHI"].n == 2
    assert s.auts["ROT"].arity == 1
    assert s.commands == ["validate", "compose PHI PHI", "k0 PHI"]


def test_round_trip_is_exact():
    s = parse_session(TWOPTS_FIXTURE)
    printed = print_session(s)
    assert parse_session(printed) == s
    assert print_session(parse_session(printed)) == printed


def test_prime_field_session():
    text = "field Fp 5\nvariety V { vars = [x]; ideal = [] }\n"
    s = parse_session(text)
    assert s.field == PrimeField(5)
    assert parse_session(print_session(s)) == s


def test_non_idempotent_unit_names_the_law():
    text = ("field Q\nvariety pt { vars = []; ideal = [] }\n"
            "corr BAD : pt -> pt { n = 1; unit = [[2]] }\n")
    with pytest.raises(InvalidObject, match="idempotent"):
        parse_session(text)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_session("field Q\nvariety V { vars = [x]; ideal = [x + ] }\n")
    assert err.value.line == 2
    with pytest.raises(ParseError, match="line 1"):
        parse_session("format 9\n")


def test_dangling_references():
    with pytest.raises(ResolveError):
        parse_session("field Q\nmap f : A -> B { }\n")
    with pytest.raises(ResolveError):
        parse_session("field Q\nvariety pt { vars = []; ideal = [] }\n"
                      "corr C : pt -> pt { n = 1; unit = [[1]] }\n"
                      "aut A { base = D; theta = []; theta_inv = [] }\n")


def test_duplicate_names_rejected():
    text = ("field Q\nvariety V { vars = []; ideal = [] }\n"
            "variety V { vars = []; ideal = [] }\n")
    with pytest.raises(ParseError, match="already declared"):
        parse_session(text)


def test_multiline_blocks_and_comments():
    text = """field Q
variety V {
  vars = [x];         # one coordinate
  ideal = []
}
corr C : V -> V {
  n = 1;
  unit = [[1]];
  gen x = [[x^2]]
}
"""
    s = parse_session(text)
    assert s.corrs["C"].gen_images[0][0, 0] == s.varieties["V"].qelem("x^2")


def test_zero_object_blocks():
    text = ("field Q\nvariety pt { vars = []; ideal = [] }\n"
            "corr Z : pt -> pt { n = 0; unit = [] }\n")
    s = parse_session(text)
    assert s.corrs["Z"].n == 0
    assert parse_session(print_session(s)) == s


def test_field_must_precede_declarations():
    with pytest.raises(ParseError, match="precede"):
        parse_session("variety V { vars = []; ideal = [] }\nfield Q\n")
