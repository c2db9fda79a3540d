import pytest
from hypothesis import given, settings, strategies as st

from bilinperm.errors import InvalidParameter, InvalidSubfield
from bilinperm.linearized import LinearizedPoly, eval_lin
from bilinperm.oracle import tabulate
from bilinperm.perms import (
    BlokhuisSpec, LaigleChapuySpec, TowerSpec, eval_bipp, eval_gbipp, eval_tower_F,
    permutes_subfield, tower_L_direct, tower_L_recursive, tower_level_L,
)

from conftest import field


def lc_grid(N, m):
    """Every valid (a, L) with L in {x, x^q + c x}."""
    ctx = field(N, m)
    sub = ctx.subfield_elements()
    Ls = [LinearizedPoly.identity(ctx)]
    Ls += [LinearizedPoly(ctx, m, (c, 1)) for c in sub]
    for L in Ls:
        if not permutes_subfield(ctx, L):
            continue
        for a in sub[1:]:
            yield LaigleChapuySpec(ctx, a, L)


# -- Blokhuis -------------------------------------------------------------------

def test_blokhuis_zero_and_gf64_bijection(gf64, omega):
    assert eval_bipp(gf64, omega, 0) == 0
    assert tabulate(gf64, BlokhuisSpec(gf64, omega)).bijective


def test_blokhuis_rejects_q2(gf8):
    with pytest.raises(InvalidParameter, match=r"F_2\\\{0,1\} is empty") as e:
        BlokhuisSpec(gf8, 1)
    assert e.value.hypothesis == "a in F_q\\{0,1}"


@pytest.mark.parametrize("a", [0, 1, 0b10])
def test_blokhuis_rejects_bad_a(gf64, a):
    with pytest.raises(InvalidParameter):
        BlokhuisSpec(gf64, a)


def test_blokhuis_rejects_even_n():
    with pytest.raises(InvalidParameter, match="odd"):
        BlokhuisSpec(field(4, 1).with_subfield(2), 0b10)


@pytest.mark.parametrize("N,m", [(6, 2), (10, 2), (9, 3)])
def test_blokhuis_bijective_all_a(N, m):
    ctx = field(N, m)
    for a in ctx.subfield_elements()[2:]:
        assert tabulate(ctx, BlokhuisSpec(ctx, a)).bijective


# -- Laigle-Chapuy ---------------------------------------------------------------

def test_degenerate_q2_is_squaring(gf8):
    spec = LaigleChapuySpec(gf8, 1, LinearizedPoly.identity(gf8))
    assert all(eval_gbipp(spec, x) == gf8.sqr(x) for x in gf8.elements())


def test_gf64_identity_L(gf64, omega):
    spec = LaigleChapuySpec(gf64, omega, LinearizedPoly.identity(gf64))
    assert eval_gbipp(spec, 0) == 0
    assert tabulate(gf64, spec).bijective


@pytest.mark.parametrize("N,m", [(6, 2), (10, 2), (9, 3)])
def test_laigle_chapuy_grid_bijective(N, m):
    specs = list(lc_grid(N, m))
    assert specs
    for spec in specs:
        assert tabulate(spec.ctx, spec).bijective


def test_laigle_chapuy_hypotheses(gf64, omega):
    ident = LinearizedPoly.identity(gf64)
    with pytest.raises(InvalidParameter, match="F_q\\*"):
        LaigleChapuySpec(gf64, 0, ident)
    with pytest.raises(InvalidParameter, match="F_q\\*"):
        LaigleChapuySpec(gf64, 0b10, ident)
    # x (x^q + x) = 0 on F_q
    with pytest.raises(InvalidParameter) as e:
        LaigleChapuySpec(gf64, omega, LinearizedPoly(gf64, 2, (1, 1)))
    assert e.value.hypothesis == "x L(x) permutes F_q"
    with pytest.raises(InvalidParameter, match="outside F_q"):
        LaigleChapuySpec(gf64, omega, LinearizedPoly(gf64, 2, (0b10,)))


def test_blokhuis_is_scaled_laigle_chapuy(gf64):
    for a in gf64.subfield_elements()[2:]:
        b = gf64.div(a, 1 ^ a)
        lc = LaigleChapuySpec(gf64, b, LinearizedPoly.identity(gf64))
        f = BlokhuisSpec(gf64, a)
        scale = gf64.inv(1 ^ a)
        assert all(lc(x) == gf64.mul(scale, f(x)) for x in gf64.elements())


@pytest.mark.parametrize("N,m", [(6, 2), (9, 3), (10, 2)])
def test_trace_image_identity(N, m):
    for spec in lc_grid(N, m):
        ctx = spec.ctx
        for x in ctx.elements():
            t = ctx.trace_to(x)
            assert ctx.trace_to(spec(x)) == ctx.mul(t, eval_lin(spec.L, t))


# -- towers -----------------------------------------------------------------------

def gf512_towers():
    ctx = field(9)
    f8 = ctx.subfield_elements(3)[1:]
    for l in (1, 2):
        for c0 in f8:
            for c1 in f8:
                yield TowerSpec(ctx, (3,), (c1,), l, c0)


def test_tower_examples():
    ctx = field(9)
    spec = TowerSpec(ctx, (3,), (1,), 1, 1)
    assert spec.u == 5 and spec.h == 1
    assert tower_L_direct(spec, 0) == 0
    for x in ctx.elements():
        t = ctx.trace_to(x, 3)
        expect = x ^ t ^ ctx.frobenius(t, 1)
        assert tower_L_direct(spec, x) == expect
    assert tabulate(ctx, spec).bijective
    for x in ctx.subfield_elements(3):
        assert eval_tower_F(spec, 1, x) == ctx.pow(x, 3)
        # T_{9:3} collapses to 3x = x on the bottom field
        assert tower_L_recursive(spec, 2, x) == tower_L_direct(spec, x)


def test_tower_recursive_equals_direct_and_bijective():
    for spec in gf512_towers():
        ctx = spec.ctx
        forward = tabulate(ctx, spec)
        assert forward.bijective
        assert all(tower_L_recursive(spec, 2, x) == tower_L_direct(spec, x) for x in ctx.elements())


@pytest.mark.parametrize("degrees,cs,l,c0", [((3, 9), (1, 2), 1, 0xfc), ((3, 3), (1, 0xfc), 2, 1)])
def test_tower_h2(degrees, cs, l, c0):
    ctx = field(9)
    spec = TowerSpec(ctx, degrees, cs, l, c0)
    assert spec.h == 2
    assert tabulate(ctx, spec).bijective
    assert all(tower_L_recursive(spec, 3, x) == tower_L_direct(spec, x) for x in ctx.elements())
    for i in (1, 2):
        sub = ctx.subfield_elements(spec.degree(i))
        assert sorted(eval_tower_F(spec, i, x) for x in sub) == sub


def test_tower_level_L_assembly():
    ctx = field(9)
    for spec in [TowerSpec(ctx, (3,), (1,), 1, 1), TowerSpec(ctx, (3, 9), (1, 2), 1, 0xfc)]:
        for i in range(1, spec.h + 2):
            L = tower_level_L(spec, i)
            for x in ctx.subfield_elements(spec.degree(i)):
                assert L(x) == tower_L_recursive(spec, i, x)


def test_tower_level_checks():
    ctx = field(9)
    spec = TowerSpec(ctx, (3,), (1,), 1, 1)
    with pytest.raises(InvalidSubfield):
        eval_tower_F(spec, 1, 0b10)
    with pytest.raises(InvalidParameter):
        tower_L_recursive(spec, 3, 0)


@pytest.mark.parametrize("N,kw,hyp", [
    (6, dict(degrees=(2,), cs=(1,), l=1, c0=1), "gcd(2^{d_1}-1, 2^l+1) = 1"),
    (9, dict(degrees=(3, 3), cs=(1, 1), l=1, c0=1), "sum_(j<=i) c_j != 0"),
    (8, dict(degrees=(2,), cs=(1,), l=1, c0=1), "n/d_1 odd"),
    (12, dict(degrees=(3, 6), cs=(1, 1), l=1, c0=1), "n/d_1 odd"),
    (9, dict(degrees=(2,), cs=(1,), l=1, c0=1), "d_1 | d_2 | ... | d_h | n"),
    (9, dict(degrees=(3,), cs=(1,), l=3, c0=1), "1 <= l < d_1"),
    (9, dict(degrees=(3,), cs=(1,), l=1, c0=0), "c_0 in F_(2^d_1)*"),
    (9, dict(degrees=(3,), cs=(0b10,), l=1, c0=1), "c_1 in F_(2^d_1)*"),
])
def test_tower_named_hypotheses(N, kw, hyp):
    with pytest.raises(InvalidParameter) as e:
        TowerSpec(field(N), **kw)
    assert e.value.hypothesis == hyp


def test_odd_n_over_d1_forces_odd_quotients():
    for n in range(1, 41):
        for d1 in (d for d in range(1, n + 1) if n % d == 0 and (n // d) % 2):
            for d2 in (d for d in range(d1, n + 1) if n % d == 0 and d % d1 == 0):
                assert (d2 // d1) % 2 and (n // d2) % 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(6, 2), (9, 3), (10, 2), (12, 4), (15, 5)]), st.data())
def test_laigle_chapuy_random_points_in_field_and_zero(Nm, data):
    ctx = field(*Nm)
    sub = ctx.subfield_elements()
    a = data.draw(st.sampled_from(sub[1:]))
    spec = LaigleChapuySpec(ctx, a, LinearizedPoly.identity(ctx))
    x = data.draw(st.integers(0, ctx.order - 1))
    t = ctx.trace_to(x)
    assert spec(0) == 0
    assert ctx.trace_to(spec(x)) == ctx.sqr(t)


@pytest.mark.parametrize("N,m", [(6, 2), (9, 3), (10, 2)])
def test_laigle_chapuy_matches_literal_formula(N, m):
    for spec in lc_grid(N, m):
        ctx, a = spec.ctx, spec.a
        for x in range(0, ctx.order, 3):
            t = ctx.trace_to(x)
            literal = ctx.mul(x, eval_lin(spec.L, t) ^ ctx.mul(a, t) ^ ctx.mul(a, x))
            assert eval_gbipp(spec, x) == literal
