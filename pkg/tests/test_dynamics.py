import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import bisect_root
from twoslit.dynamics import apply_interference, register_on_screen, scatter
from twoslit.model import ModelParams, OrbitRegister, SlitTag, Spin, init_register, nearest_orbit

P = ModelParams()


def reg_with(k, spin):
    reg = init_register(P)
    reg.spins[k - 1] = spin
    reg.initial = list(reg.spins)
    return reg


def test_match_displaces_toward_orbit():
    reg = reg_with(3, Spin.SPIN1)
    y, hit = apply_interference(0.27, SlitTag.SLIT1, reg, P)
    x = 0.03 / (math.pi * 0.1)
    assert x == pytest.approx(0.095493, abs=1e-6)
    d_new = bisect_root(x) * math.pi * 0.1
    assert d_new == pytest.approx(0.01500, abs=1e-5)
    assert hit
    assert y == pytest.approx(0.3 - d_new, abs=1e-12)
    assert y == pytest.approx(0.285, abs=1e-4)
    assert reg[3] is Spin.SPIN2
    assert reg.flip_count[2] == 1


def test_mismatch_leaves_everything():
    reg = reg_with(3, Spin.SPIN1)
    before = reg.copy()
    y, hit = apply_interference(0.27, SlitTag.SLIT2, reg, P)
    assert (y, hit) == (0.27, False)
    assert reg == before


def test_on_orbit_still_flips():
    reg = reg_with(2, Spin.SPIN1)
    y, hit = apply_interference(0.2, SlitTag.SLIT1, reg, P)
    assert (y, hit) == (0.2, True)
    assert reg[2] is Spin.SPIN2


def test_lower_half_keeps_sign_and_side():
    reg = reg_with(3, Spin.SPIN2)
    y, hit = apply_interference(-0.33, SlitTag.SLIT2, reg, P)
    assert hit and -0.33 < y < -0.3


@given(st.floats(-1.0, 1.0), st.sampled_from([SlitTag.SLIT1, SlitTag.SLIT2]))
def test_match_iff_displace_and_contraction(y0, slit):
    reg = init_register(P)
    k, dist = nearest_orbit(abs(y0), P)
    spin_before = reg[k]
    y1, hit = apply_interference(y0, slit, reg, P)
    assert hit == (int(spin_before) == int(slit))
    assert sum(reg.flip_count) == int(hit)
    new_dist = abs(abs(y1) - P.orbit_radius(k))
    assert new_dist <= dist + 1e-15
    if hit and dist > 0:
        assert new_dist < dist
        # same side of the orbit and same half of the screen
        assert (abs(y1) - P.orbit_radius(k)) * (abs(y0) - P.orbit_radius(k)) >= 0
        assert math.copysign(1, y1) == math.copysign(1, y0)


def test_scatter_examples():
    assert scatter(0.0, 1, P) == 0.0
    assert scatter(0.0, -1, P) == 0.0
    assert scatter(0.5, -1, P) == pytest.approx(-math.pi / 6)
    assert scatter(1.05, 1, P) == math.pi / 2
    with pytest.raises(ValueError):
        scatter(0.1, 0, P)


@given(st.floats(-1.5, 1.5))
def test_scatter_odd_in_sign(y):
    assert scatter(y, 1, P) == -scatter(y, -1, P)


def test_scatter_uses_radius():
    assert scatter(1.0, 1, ModelParams(atom_radius=2.0)) == pytest.approx(math.pi / 6)


@pytest.mark.parametrize(
    "angle, b",
    [(0.0, 0), (-math.pi / 2, -90), (math.pi / 2, 89), (math.radians(10.5), 10), (-1e-12, -1)],
)
def test_register_on_screen(angle, b):
    assert register_on_screen(angle) == b


def test_register_on_screen_domain():
    with pytest.raises(ValueError):
        register_on_screen(2.0)
