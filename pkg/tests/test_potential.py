import json
import math

import pytest
from hypothesis import given, strategies as st

from prewell.potential import (
    BilayerSpec,
    PotentialProfile,
    Segment,
    SqueezeSpec,
    bilayer_profile,
    load_profile,
    profile_from_dict,
    profile_to_dict,
    realize,
    rectangle,
    slabify,
)
from prewell.scattering import profile_transmission
from prewell.units import DEFAULT_UNITS


D_INT = 0.524928  # 0.2 eV


class TestRealize:
    def test_unit_epsilon_is_identity(self):
        seg = realize(SqueezeSpec(d=D_INT, a=4.0, epsilon=1.0, nu=2))
        assert seg == Segment(4.0, -D_INT)

    def test_scaled_well(self):
        seg = realize(SqueezeSpec(d=D_INT, a=4.0, epsilon=0.1, nu=2))
        assert seg.width == pytest.approx(0.4, rel=1e-14)
        assert seg.height == pytest.approx(-52.4928, rel=1e-12)

    def test_nu1_is_a_barrier(self):
        seg = realize(SqueezeSpec(d=D_INT, a=4.0, epsilon=0.01, nu=1))
        assert seg.width == pytest.approx(0.04, rel=1e-14)
        assert seg.height == pytest.approx(52.4928, rel=1e-12)

    def test_epsilon_override(self):
        spec = SqueezeSpec(d=D_INT, a=4.0, epsilon=1.0, nu=2)
        assert realize(spec, 0.5).width == pytest.approx(2.0)

    @pytest.mark.parametrize("eps", [0.0, -1.0, math.inf])
    def test_bad_epsilon_rejected(self, eps):
        spec = SqueezeSpec(d=D_INT, a=4.0, nu=2)
        with pytest.raises(ValueError):
            realize(spec, eps)

    def test_bad_nu_rejected(self):
        with pytest.raises(ValueError):
            SqueezeSpec(d=D_INT, a=4.0, nu=3)

    @given(st.floats(min_value=0.01, max_value=5.0),
           st.floats(min_value=0.1, max_value=10.0),
           st.floats(min_value=1e-3, max_value=1.0))
    def test_nu2_resonance_control_is_epsilon_free(self, d, a, eps):
        # width * sqrt(|height|) stays sqrt(d)*a while width*|height| blows up
        seg = realize(SqueezeSpec(d=d, a=a, nu=2), eps)
        assert seg.width * math.sqrt(-seg.height) == pytest.approx(math.sqrt(d) * a, rel=1e-12)

    @given(st.floats(min_value=0.01, max_value=5.0),
           st.floats(min_value=0.1, max_value=10.0),
           st.floats(min_value=1e-3, max_value=1.0))
    def test_nu1_strength_is_epsilon_free(self, d, a, eps):
        seg = realize(SqueezeSpec(d=d, a=a, nu=1), eps)
        assert seg.width * seg.height == pytest.approx(d * a, rel=1e-12)

    def test_nu2_area_diverges(self):
        spec = SqueezeSpec(d=D_INT, a=4.0, nu=2)
        areas = [realize(spec, e).width * abs(realize(spec, e).height) for e in (0.1, 0.01)]
        assert areas[1] > areas[0] * 9


class TestSlabify:
    def test_constant_single_slab(self):
        prof = slabify(lambda x: -0.5, 0.0, 7.0, 1)
        assert prof.segments == (Segment(7.0, -0.5),)

    def test_constant_refinement_leaves_transmission(self):
        coarse = slabify(lambda x: -0.5, 0.0, 7.0, 1)
        fine = slabify(lambda x: -0.5, 0.0, 7.0, 10)
        e = 0.0524928
        assert profile_transmission(fine, e) == pytest.approx(
            profile_transmission(coarse, e), abs=1e-12
        )

    def test_exact_for_aligned_piecewise_constant(self):
        def f(x):
            return -0.3 if x < 3.5 else 0.4

        prof = slabify(f, 0.0, 7.0, 4)
        assert [s.height for s in prof.segments] == [-0.3, -0.3, 0.4, 0.4]
        assert all(s.width == 7.0 / 4 for s in prof.segments)

    def test_ramp_self_convergence(self):
        # midpoint sampling is second order: doubling n shrinks the change
        ramp = lambda x: -1.31232 * x / 7.0
        e = 0.0524928
        ts = [profile_transmission(slabify(ramp, 0.0, 7.0, n), e) for n in (64, 128, 256, 512)]
        gaps = [abs(ts[i + 1] - ts[i]) for i in range(3)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            slabify(lambda x: 0.0, 0.0, 7.0, 0)
        with pytest.raises(ValueError):
            slabify(lambda x: 0.0, 7.0, 7.0, 4)
        with pytest.raises(ValueError):
            slabify(lambda x: math.nan, 0.0, 7.0, 4)


class TestProfiles:
    def test_segment_validation(self):
        with pytest.raises(ValueError):
            Segment(0.0, 1.0)
        with pytest.raises(ValueError):
            Segment(1.0, math.inf)

    def test_total_width(self):
        prof = PotentialProfile((Segment(1.0, 0.0), Segment(2.5, -0.3)))
        assert prof.total_width == 3.5

    def test_empty_profile_allowed(self):
        assert PotentialProfile().total_width == 0.0

    def test_json_heights_in_ev(self):
        prof = profile_from_dict(
            {"segments": [{"width_nm": 5.0, "height_ev": 0.1}]}, DEFAULT_UNITS
        )
        assert prof.segments[0].height == pytest.approx(0.262464, rel=1e-14)

    def test_json_round_trip(self, tmp_path):
        prof = PotentialProfile((Segment(2.0, 0.5), Segment(1.0, -0.25)))
        path = tmp_path / "profile.json"
        path.write_text(json.dumps(profile_to_dict(prof, DEFAULT_UNITS)))
        back = load_profile(path, DEFAULT_UNITS)
        for a, b in zip(back.segments, prof.segments):
            assert a.width == pytest.approx(b.width, rel=1e-15)
            assert a.height == pytest.approx(b.height, rel=1e-15)

    def test_json_malformed(self):
        with pytest.raises(ValueError):
            profile_from_dict({"no_segments": []}, DEFAULT_UNITS)
        with pytest.raises(ValueError):
            profile_from_dict({"segments": [{"width_nm": 1.0}]}, DEFAULT_UNITS)


class TestBilayer:
    def test_gap_is_explicit_zero_segment(self):
        spec = BilayerSpec(SqueezeSpec(d=D_INT, a=4.0, nu=2), 10.0, rectangle(5.0, 0.26))
        prof = bilayer_profile(spec)
        assert len(prof.segments) == 3
        assert prof.segments[1] == Segment(10.0, 0.0)
        assert prof.segments[0].height < 0

    def test_orderings(self):
        spec_wb = BilayerSpec(SqueezeSpec(d=D_INT, a=4.0, nu=2), 10.0, rectangle(5.0, 0.26), "wb")
        spec_bw = BilayerSpec(SqueezeSpec(d=D_INT, a=4.0, nu=2), 10.0, rectangle(5.0, 0.26), "bw")
        assert bilayer_profile(spec_wb).segments[0].height < 0
        assert bilayer_profile(spec_bw).segments[-1].height < 0

    def test_validation(self):
        with pytest.raises(ValueError):
            BilayerSpec(SqueezeSpec(d=D_INT, a=4.0, nu=2), 0.0, rectangle(5.0, 0.26))
        with pytest.raises(ValueError):
            BilayerSpec(SqueezeSpec(d=D_INT, a=4.0, nu=2), 1.0, rectangle(5.0, 0.26), "xy")
