from __future__ import annotations

from hypothesis import given, strategies as st

from bridge import SPACES_4, fs, o_calc, operations
from gammatop.calculus import (
    bd_gamma,
    cl_gamma,
    ext_gamma,
    gamma_calculus,
    gamma_closed_family,
    gamma_derived,
    gamma_open_family,
    int_gamma,
)
from gammatop.operation import builtin
from gammatop.space import discrete, sierpinski

S = sierpinski()
ID, CL = builtin(S, "identity"), builtin(S, "closure")


def test_interior_examples():
    assert int_gamma(S, CL, 0b01) == 0
    assert int_gamma(S, ID, 0b01) == 0b01
    assert int_gamma(S, CL, 0b11) == 0b11


def test_closure_examples():
    assert cl_gamma(S, ID, 0b10) == 0b10
    assert cl_gamma(S, CL, 0b10) == 0b11
    assert cl_gamma(S, CL, 0) == 0


def test_open_family_examples():
    assert list(gamma_open_family(S, ID)) == [0, 1, 3]
    assert list(gamma_open_family(S, CL)) == [0, 3]
    d = discrete(2)
    assert list(gamma_open_family(d, builtin(d, "closure"))) == [0, 1, 2, 3]


def test_closed_family_examples():
    fam, agree = gamma_closed_family(S, ID, "complement")
    assert set(fam) == {0, 2, 3} and agree
    fam, _ = gamma_closed_family(S, ID, "closure-point")
    assert set(fam) == {0, 2, 3}
    fam, _ = gamma_closed_family(S, CL, "complement")
    assert set(fam) == {0, 3}


def test_exterior_boundary_examples():
    assert ext_gamma(S, ID, 0b01) == 0
    assert bd_gamma(S, ID, 0b01) == 0b10
    assert ext_gamma(S, CL, 0b11) == 0
    assert ext_gamma(S, CL, 0b01) == 0
    assert bd_gamma(S, CL, 0b01) == 0b11


def test_derived_examples():
    assert gamma_derived(S, ID, 0b01) == 0b10
    assert gamma_derived(S, CL, 0b01) == 0b10
    assert gamma_derived(S, CL, 0) == 0


@given(operations(SPACES_4), st.integers(0, 15))
def test_every_operator_matches_oracle(op, a):
    a &= op.space.full
    g = gamma_calculus(op)
    o = o_calc(op)
    A = fs(a)
    assert fs(g.interior[a]) == o.intg(A)
    assert fs(g.closure[a]) == o.clg(A)
    assert fs(g.exterior(a)) == o.ext(A)
    assert fs(g.boundary(a)) == o.bd(A)
    assert fs(g.derived[a]) == o.derived(A)
    assert {fs(u) for u in g.gamma_open} == set(o.gopen)
    assert {fs(u) for u in g.gamma_closed("closure-point")} == set(o_calc(op, "closure-point").gclosed)


@given(operations(SPACES_4), st.integers(0, 15), st.integers(0, 15))
def test_hull_kernel_laws(op, a, b):
    full = op.space.full
    a &= full
    b &= full
    g = gamma_calculus(op)
    assert g.interior[a] & ~a == 0
    assert a & ~g.closure[a] == 0
    assert g.closure[a] == full ^ g.interior[full ^ a]
    if a & ~b == 0:
        assert g.interior[a] & ~g.interior[b] == 0
        assert g.closure[a] & ~g.closure[b] == 0
    assert g.interior[0] == 0 and g.interior[full] == full
    assert g.closure[0] == 0 and g.closure[full] == full


@given(operations(SPACES_4))
def test_two_closed_definitions_agree(op):
    # [DERIVED] cl(A) <= A iff X - A = int(X - A), by the closure/interior duality
    assert gamma_calculus(op).closed_defs_agree
