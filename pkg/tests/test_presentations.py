import pytest
from hypothesis import given, strategies as st

from amodlab.presentations import (
    Presentation,
    PresentationError,
    ShiftPermutation,
    UnassignedGeneratorError,
    brH2_presentation,
    check_relators,
    degree_map,
    evaluate_word,
    format_word,
    free_reduce,
    parse_word,
    standard_assignment,
)


@st.composite
def shift_perms(draw):
    pts = draw(st.lists(st.integers(-20, 20), unique=True, max_size=8))
    images = draw(st.permutations(pts))
    return ShiftPermutation(dict(zip(pts, images)), draw(st.integers(-5, 5)))


@given(shift_perms(), shift_perms(), shift_perms())
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(shift_perms())
def test_identity_and_inverse(a):
    e = ShiftPermutation.identity()
    assert a * e == a == e * a
    assert (a * a.inverse()).is_identity()
    assert (a.inverse() * a).is_identity()


@given(shift_perms())
def test_support_stored_minimally(a):
    assert all(k != v for k, v in a.perm.items())


def test_rejects_non_bijection():
    with pytest.raises(PresentationError):
        ShiftPermutation({0: 1, 1: 1})


def test_conjugation_shifts_support():
    a = standard_assignment()
    tau_t = evaluate_word(parse_word("t tau t^-1"), a)
    assert tau_t == ShiftPermutation.transposition(1, 2)
    assert evaluate_word((), a).is_identity()
    assert evaluate_word(parse_word("t t^-1"), a).is_identity()


def test_unassigned_generator():
    with pytest.raises(UnassignedGeneratorError):
        evaluate_word(parse_word("x"), standard_assignment())


def test_presentation_shape():
    assert len(brH2_presentation(2).relators) == 3
    assert len(brH2_presentation(5).relators) == 9
    for w in brH2_presentation(10).relators:
        assert free_reduce(w) == w
    with pytest.raises(PresentationError):
        brH2_presentation(1)


def test_relators_hold_exactly():
    rep = check_relators(brH2_presentation(200), standard_assignment())
    assert rep.passed and len(rep.results) == 399


def test_wrong_transposition_fails_braid_relator():
    a = {"t": ShiftPermutation.translation(1), "tau": ShiftPermutation.transposition(0, 2)}
    rep = check_relators(brH2_presentation(2), a)
    assert not rep.results[0][1]


def test_identity_assignment_passes():
    e = ShiftPermutation.identity()
    assert check_relators(brH2_presentation(6), {"t": e, "tau": e}).passed


def test_commutator_fails_in_wrapping_quotient():
    # [tau, tau^(t^1)] is not a relator: adjacent transpositions do not commute
    a = standard_assignment()
    w = parse_word("tau t tau t^-1 tau^-1 t tau^-1 t^-1")
    assert not evaluate_word(w, a).is_identity()


def test_degree_map():
    assert degree_map(standard_assignment()) == {"t": 1, "tau": 0}


def test_text_round_trip():
    p = brH2_presentation(4)
    assert Presentation.from_text(p.to_text()) == p
    assert format_word(parse_word("tau t^-1")) == "tau t^-1"


def test_free_reduction_on_construction():
    p = Presentation(("a",), (parse_word("a a^-1 a"),))
    assert p.relators == ((("a", 1),),)
    with pytest.raises(PresentationError):
        Presentation(("a", "a"), ())
