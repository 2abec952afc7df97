from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcat import (
    BOOL,
    BOT,
    FALSE,
    INF,
    LAWVERE,
    RBOT,
    TRUE,
    CarrierMismatch,
    QuantaleDescriptor,
    QVal,
    Tag,
    bottom,
    check_laws,
    descriptor_from_json,
    descriptor_to_json,
    finite,
    format_value,
    join,
    join_witness,
    leq,
    meet,
    parse_quantale_name,
    parse_value,
    product,
    rbot,
    residual,
    tensor,
    top,
    tuple_val,
    unit,
)

BOOL2 = product(BOOL, BOOL)
RBOT_GRID = (BOT, finite(0), finite(1), finite(Fraction(5, 2)), finite(7), INF)
LAWVERE_GRID = (finite(0), finite(1), finite(Fraction(5, 2)), finite(7), INF)
BOOL_GRID = (FALSE, TRUE)
BOOL2_GRID = tuple(tuple_val([a, b]) for a in BOOL_GRID for b in BOOL_GRID)


def B(x):
    return TRUE if x else FALSE


class TestRBotTables:
    # representatives bot, a=3, b=5, inf against the two 3x3 tables

    A, Bv = finite(3), finite(5)

    @pytest.mark.parametrize(
        "x,y,expected",
        [
            (BOT, BOT, BOT),
            (BOT, Bv, BOT),
            (BOT, INF, BOT),
            (A, BOT, BOT),
            (A, Bv, finite(8)),
            (A, INF, INF),
            (INF, BOT, BOT),
            (INF, Bv, INF),
            (INF, INF, INF),
        ],
    )
    def test_tensor_table(self, x, y, expected):
        assert tensor(RBOT, x, y) == expected

    @pytest.mark.parametrize(
        "x,y,expected",
        [
            (BOT, BOT, INF),
            (BOT, Bv, INF),
            (BOT, INF, INF),
            (A, BOT, BOT),
            (A, Bv, finite(2)),  # b - a when a <= b
            (Bv, A, BOT),  # bot when a > b
            (A, INF, INF),
            (INF, BOT, BOT),
            (INF, Bv, BOT),
            (INF, INF, INF),
        ],
    )
    def test_residual_table(self, x, y, expected):
        assert residual(RBOT, x, y) == expected

    def test_unit_absorbs_nothing(self):
        for x in (BOT, finite(7), INF):
            assert tensor(RBOT, finite(0), x) == x
            assert tensor(RBOT, x, finite(0)) == x


class TestOrder:
    def test_rbot_examples(self):
        assert leq(RBOT, BOT, finite(0))
        assert leq(RBOT, finite(5), finite(5))
        assert not leq(RBOT, finite(5), finite(3))
        assert leq(RBOT, finite(5), INF)
        assert not leq(RBOT, INF, finite(5))
        assert not leq(RBOT, finite(0), BOT)

    def test_lawvere_arrow_order(self):
        # arrow a -> b iff b <= a numerically
        assert leq(LAWVERE, finite(3), finite(1))
        assert not leq(LAWVERE, finite(1), finite(3))
        assert leq(LAWVERE, INF, finite(7))
        assert not leq(LAWVERE, finite(7), INF)
        assert leq(LAWVERE, INF, INF)

    @pytest.mark.parametrize("q,grid", [(RBOT, RBOT_GRID), (LAWVERE, LAWVERE_GRID)])
    def test_total_order(self, q, grid):
        for a in grid:
            for b in grid:
                assert leq(q, a, b) or leq(q, b, a)

    def test_product_componentwise(self):
        assert leq(BOOL2, tuple_val([FALSE, TRUE]), tuple_val([TRUE, TRUE]))
        assert not leq(BOOL2, tuple_val([TRUE, FALSE]), tuple_val([FALSE, TRUE]))

    def test_tolerance_is_oriented(self):
        qa = rbot(1e-6)
        just_above = finite(Fraction(2000001, 2000000))  # 1 + 0.5e-6
        well_above = finite(Fraction(500001, 500000))  # 1 + 2e-6
        assert leq(qa, just_above, finite(1))
        assert not leq(qa, well_above, finite(1))
        # on the metric base the slack runs the other way
        ql = QuantaleDescriptor(LAWVERE.kind, 1e-6)
        assert leq(ql, finite(1), just_above)
        assert not leq(ql, finite(1), well_above)


class TestLattice:
    def test_joins(self):
        assert join(RBOT, [BOT, finite(2), finite(5)]) == finite(5)
        assert join(RBOT, []) == BOT
        assert meet(RBOT, []) == INF
        assert meet(RBOT, [finite(2), BOT]) == BOT

    def test_lawvere_join_is_numeric_inf(self):
        one, three = finite(1), finite(3)
        j = join(LAWVERE, [one, three])
        # oracle: j is an upper bound of both and the least such in the grid
        assert leq(LAWVERE, one, j) and leq(LAWVERE, three, j)
        for cand in LAWVERE_GRID:
            if leq(LAWVERE, one, cand) and leq(LAWVERE, three, cand):
                assert leq(LAWVERE, j, cand)
        assert j == one
        assert join(LAWVERE, []) == INF
        assert meet(LAWVERE, []) == finite(0)

    def test_product_join(self):
        j = join(BOOL2, [tuple_val([TRUE, FALSE]), tuple_val([FALSE, TRUE])])
        assert j == tuple_val([TRUE, TRUE])
        assert join(BOOL2, []) == bottom(BOOL2)

    @pytest.mark.parametrize(
        "q,grid",
        [(RBOT, RBOT_GRID), (LAWVERE, LAWVERE_GRID), (BOOL, BOOL_GRID), (BOOL2, BOOL2_GRID)],
    )
    def test_join_meet_are_bounds(self, q, grid):
        for a in grid:
            for b in grid:
                j, m = join(q, [a, b]), meet(q, [a, b])
                assert leq(q, a, j) and leq(q, b, j)
                assert leq(q, m, a) and leq(q, m, b)
                assert join(q, [a, a]) == a and meet(q, [a, a]) == a
                assert join(q, [a, b]) == join(q, [b, a])

    @pytest.mark.parametrize(
        "q,grid",
        [(RBOT, RBOT_GRID), (LAWVERE, LAWVERE_GRID), (BOOL2, BOOL2_GRID)],
    )
    def test_join_meet_associative(self, q, grid):
        for a in grid:
            for b in grid:
                for c in grid:
                    assert join(q, [a, join(q, [b, c])]) == join(q, [join(q, [a, b]), c])
                    assert meet(q, [a, meet(q, [b, c])]) == meet(q, [meet(q, [a, b]), c])


class TestPoles:
    def test_rbot(self):
        assert unit(RBOT) == finite(0)
        assert bottom(RBOT) == BOT
        assert top(RBOT) == INF

    def test_lawvere(self):
        assert unit(LAWVERE) == finite(0) == top(LAWVERE)
        assert bottom(LAWVERE) == INF

    def test_bool_and_product(self):
        assert unit(BOOL) == TRUE
        assert unit(BOOL2) == tuple_val([TRUE, TRUE])
        assert bottom(BOOL2) == tuple_val([FALSE, FALSE])


@pytest.mark.parametrize(
    "q,grid",
    [(RBOT, RBOT_GRID), (LAWVERE, LAWVERE_GRID), (BOOL, BOOL_GRID), (BOOL2, BOOL2_GRID)],
)
def test_residuation_adjunction_exhaustive(q, grid):
    for a in grid:
        for b in grid:
            for c in grid:
                assert leq(q, tensor(q, a, b), c) == leq(q, b, residual(q, a, c))


@pytest.mark.parametrize(
    "q,grid",
    [(RBOT, RBOT_GRID), (LAWVERE, LAWVERE_GRID), (BOOL, BOOL_GRID), (BOOL2, BOOL2_GRID)],
)
def test_check_laws_clean(q, grid):
    report = check_laws(q, grid)
    assert report.ok, report.to_json()


def test_check_laws_flags_corrupted_residual():
    def bad_residual(a, c):
        if a == finite(3) and c == finite(5):
            return finite(1)
        return residual(RBOT, a, c)

    report = check_laws(RBOT, (finite(2), finite(3), finite(5)), residual_fn=bad_residual)
    assert not report.ok
    hits = [v for v in report.violations if v.law == "residuation"]
    assert (finite(3), finite(2), finite(5)) in [v.operands for v in hits]


def test_check_laws_flags_corrupted_tensor():
    def bad_tensor(a, b):
        if a == b == finite(1):
            return finite(3)
        return tensor(RBOT, a, b)

    report = check_laws(RBOT, (finite(0), finite(1), finite(2)), tensor_fn=bad_tensor)
    assert not report.ok
    assert any(v.law == "residuation" for v in report.violations)


class TestJoinWitness:
    def test_rbot_always(self):
        assert join_witness(RBOT, [BOT, finite(3)])
        for fam in ([], [BOT], [BOT, BOT], [finite(0)], [INF, BOT, finite(1)]):
            assert join_witness(RBOT, fam)

    def test_product_fails(self):
        assert not join_witness(BOOL2, [tuple_val([TRUE, FALSE]), tuple_val([FALSE, TRUE])])

    def test_bool_vacuous(self):
        assert join_witness(BOOL, [FALSE])


def test_rbot_monoidal_idempotents():
    grid = RBOT_GRID + (finite(4), finite(Fraction(1, 3)))
    idem = [v for v in grid if tensor(RBOT, v, v) == v]
    assert set(idem) == {BOT, finite(0), INF}


# hypothesis: the laws are not grid artifacts

frac_st = st.fractions(min_value=0, max_value=1000, max_denominator=64)
rbot_st = st.one_of(st.just(BOT), st.just(INF), frac_st.map(finite))
lawvere_st = st.one_of(st.just(INF), frac_st.map(finite))


@settings(max_examples=300, deadline=None)
@given(rbot_st, rbot_st, rbot_st)
def test_rbot_residuation_property(a, b, c):
    assert leq(RBOT, tensor(RBOT, a, b), c) == leq(RBOT, b, residual(RBOT, a, c))


@settings(max_examples=200, deadline=None)
@given(rbot_st, rbot_st, rbot_st)
def test_rbot_semiring_properties(a, b, c):
    assert tensor(RBOT, a, b) == tensor(RBOT, b, a)
    assert tensor(RBOT, tensor(RBOT, a, b), c) == tensor(RBOT, a, tensor(RBOT, b, c))
    assert tensor(RBOT, a, join(RBOT, [b, c])) == join(
        RBOT, [tensor(RBOT, a, b), tensor(RBOT, a, c)]
    )
    if leq(RBOT, a, b):
        assert leq(RBOT, tensor(RBOT, a, c), tensor(RBOT, b, c))


@settings(max_examples=200, deadline=None)
@given(lawvere_st, lawvere_st, lawvere_st)
def test_lawvere_residuation_property(a, b, c):
    assert leq(LAWVERE, tensor(LAWVERE, a, b), c) == leq(LAWVERE, b, residual(LAWVERE, a, c))


class TestCarrier:
    def test_mismatches(self):
        with pytest.raises(CarrierMismatch):
            leq(RBOT, TRUE, FALSE)
        with pytest.raises(CarrierMismatch):
            tensor(LAWVERE, BOT, finite(1))
        with pytest.raises(CarrierMismatch):
            residual(BOOL, finite(1), TRUE)
        with pytest.raises(CarrierMismatch):
            join(BOOL2, [tuple_val([TRUE, FALSE, TRUE])])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            finite(-1)

    def test_payload_types(self):
        with pytest.raises(TypeError):
            QVal(Tag.FINITE, 3)  # must be a Fraction
        with pytest.raises(TypeError):
            QVal(Tag.BOT, Fraction(1))


class TestTextSyntax:
    @pytest.mark.parametrize(
        "text,val",
        [
            ("bot", BOT),
            ("⊥", BOT),
            ("inf", INF),
            ("∞", INF),
            ("5", finite(5)),
            ("5/2", finite(Fraction(5, 2))),
            ("2.5", finite(Fraction(5, 2))),
            ("true", TRUE),
            ("false", FALSE),
            ("(true,false)", tuple_val([TRUE, FALSE])),
            ("(1,(bot,inf))", tuple_val([finite(1), tuple_val([BOT, INF])])),
        ],
    )
    def test_parse(self, text, val):
        assert parse_value(text) == val

    def test_parse_numbers(self):
        assert parse_value(3) == finite(3)
        assert parse_value(2.5) == finite(Fraction(5, 2))
        assert parse_value(True) == TRUE

    @pytest.mark.parametrize("bad", ["xyz", "-1", "( ,1)", "(1", "1)", "", "1/0"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_value(bad)

    def test_round_trip(self):
        for v in RBOT_GRID + BOOL2_GRID + (finite(Fraction(7, 3)),):
            assert parse_value(format_value(v)) == v

    def test_canonical_output(self):
        assert format_value(BOT) == "bot"
        assert format_value(INF) == "inf"
        assert format_value(finite(Fraction(5, 2))) == "5/2"
        assert format_value(tuple_val([TRUE, FALSE])) == "(true,false)"


class TestDescriptors:
    def test_json_round_trip(self):
        for q in (RBOT, LAWVERE, BOOL, BOOL2, product(BOOL, product(BOOL, BOOL))):
            assert descriptor_from_json(descriptor_to_json(q)) == q

    def test_tolerance_attaches(self):
        q = descriptor_from_json("rbot", 1e-9)
        assert q.tolerance == 1e-9

    def test_parse_name(self):
        assert parse_quantale_name("rbot") == RBOT
        assert parse_quantale_name("bool,bool") == BOOL2
        with pytest.raises(ValueError):
            parse_quantale_name("frobenius")

    def test_invalid_descriptors(self):
        with pytest.raises(ValueError):
            QuantaleDescriptor(RBOT.kind, -1.0)
        with pytest.raises(ValueError):
            product()
