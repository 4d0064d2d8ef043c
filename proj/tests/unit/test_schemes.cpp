// SPDX-License-Identifier: Apache-2.0
//
// emfbeam - exposure-aware downlink beamforming simulator
// Copyright (C) 2026 The emfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "emfbeam/experiments.hpp"

using namespace emfbeam;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

struct Setup
{
    ScenarioConfig config;
    ExperimentGeometry geometry{config, false};
};

const Setup &setup()
{
    static const Setup s;
    return s;
}

Precoder mrt_for(std::uint64_t seed)
{
    ScenarioConfig c;
    c.seed = seed;
    return mrt(target_channel(build_scenario(c)));
}

} // namespace

TEST_CASE("matched filter", "[schemes]")
{
    ChannelRow g{CVector::Zero(4), ChannelRole::total};
    g.values[0] = 1.0;
    const Precoder p = mrt(g);
    CHECK(p.chi == 1.0);
    CHECK(p.b[0] == cplx{1.0, 0.0});
    CHECK(p.b.tail(3).isZero(0.0));

    ChannelRow h{CVector::Zero(4), ChannelRole::total};
    CHECK_THROWS_AS(mrt(h), std::domain_error);

    ScenarioConfig c;
    const ChannelRow t = target_channel(build_scenario(c));
    const Precoder q = mrt(t);
    CHECK_THAT(q.b.norm(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(received_power(t, q.b, q.chi).value, WithinRel(t.values.squaredNorm(), 1e-12));
}

TEST_CASE("reduced power", "[schemes]")
{
    const Precoder p = mrt_for(1);
    const double thr = 1e-7;
    CHECK(reduced_mrt(p, {2.0 * thr, {}}, thr).chi == 0.5);
    CHECK(reduced_mrt(p, {0.5 * thr, {}}, thr).chi == 1.0);
    CHECK(reduced_mrt(p, {thr, {}}, thr).chi == 1.0);
    CHECK(reduced_mrt(p, {0.0, {}}, thr).chi == 1.0);
    CHECK(reduced_mrt(p, {2.0 * thr, {}}, thr).b == p.b);

    const auto &s = setup();
    const SchemeOptions opt;
    const PowerSample peak = circle_peak(s.geometry.context(), p.b, 1.0, opt);
    const Precoder r = reduced_mrt(p, peak, s.config.omega_thresh());
    REQUIRE(r.chi < 1.0);
    const PowerSample again = circle_peak(s.geometry.context(), r.b, r.chi, opt);
    CHECK_THAT(again.value * r.chi, WithinRel(s.config.omega_thresh(), 1e-9));
}

TEST_CASE("coefficient truncation", "[schemes]")
{
    const CMatrix F = dft_matrix(8);
    const Precoder p = mrt(ChannelRow{CVector::LinSpaced(8, 1.0, 2.0).cast<cplx>(), ChannelRole::total});
    const CVector y = project(p.b, F).y;

    const double thr = 1e-6, c = 3.0;
    const CoefficientUpdate u = truncate_coefficients(y, std::vector<double>(8, c * thr), thr);
    CHECK(u.beams.size() == 8);
    const CVector bt = synthesize(u.y, F);
    CHECK((bt.normalized() - p.b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(bt.squaredNorm() / y.squaredNorm(), WithinRel(1.0 / c, 1e-12));

    std::vector<double> mixed{0.5 * thr, 4.0 * thr, thr, 2.0 * thr, 0.0, 9.0 * thr, 0.1 * thr, thr};
    const CoefficientUpdate m = truncate_coefficients(y, mixed, thr);
    CHECK(m.beams == std::vector<int>{1, 3, 5});
    for (int i = 0; i < 8; ++i)
    {
        const double f = mixed[i] > thr ? std::sqrt(thr / mixed[i]) : 1.0;
        CHECK(m.scale[i] == f);
        CHECK(std::abs(m.y[i] - y[i] * f) < 1e-15);
    }
    CHECK_THROWS_AS(truncate_coefficients(y, {1.0}, thr), std::invalid_argument);
}

TEST_CASE("coefficient boosting", "[schemes]")
{
    const double thr = 1.0;
    const CVector y = CVector::Constant(4, cplx{0.5, 0.0});
    // Beam 0 excluded, beam 1 at threshold, beam 2 at thr/4, beam 3 at thr/9.
    const std::vector<double> arc{0.1, 1.0, 0.25, 1.0 / 9.0};
    SchemeOptions opt;

    const BoostUpdate all = boost_coefficients(y, arc, {0}, thr, 100.0, opt);
    CHECK(all.boost_set == std::vector<int>{2, 3});
    CHECK(all.iterations == 2);
    CHECK_THAT(all.y[2].real(), WithinRel(1.0, 1e-15));
    CHECK_THAT(all.y[3].real(), WithinRel(1.5, 1e-15));
    CHECK(all.y[0] == y[0]);
    CHECK(all.y[1] == y[1]);

    // Guard stops after the first update once |y|^2 reaches the reference.
    const double after_first = y.squaredNorm() - 0.25 + 1.0;
    const BoostUpdate asc = boost_coefficients(y, arc, {0}, thr, after_first, opt);
    CHECK(asc.iterations == 1);
    CHECK(asc.y[2].real() == 1.0);
    CHECK(asc.y[3] == y[3]);

    opt.boost_order = BoostOrder::descending;
    const BoostUpdate desc = boost_coefficients(y, arc, {0}, thr, y.squaredNorm() - 0.25 + 2.25, opt);
    CHECK(desc.iterations == 1);
    CHECK(desc.y[3].real() == 1.5);
    CHECK(desc.y[2] == y[2]);

    const BoostUpdate none = boost_coefficients(y, arc, {0}, thr, y.squaredNorm(), SchemeOptions{});
    CHECK(none.iterations == 0);
    CHECK(none.y == y);

    SchemeOptions floored;
    floored.boost_floor = 0.2;
    const BoostUpdate f = boost_coefficients(y, arc, {0}, thr, 100.0, floored);
    CHECK(f.boost_set == std::vector<int>{2});
    CHECK(f.skipped == std::vector<int>{3});
}

TEST_CASE("truncation without exceeding arcs is the identity", "[schemes]")
{
    const auto &s = setup();
    const Precoder p = mrt_for(3);
    const SchemeResult r = truncated_mrt(p, s.geometry.context(), 1.0);
    CHECK(r.report.exceed_set.empty());
    CHECK(r.precoder.b == p.b);
    CHECK(r.precoder.chi == p.chi);
    CHECK(r.precoder.scheme == Scheme::truncated);
}

TEST_CASE("truncation meets the threshold on the circle", "[schemes]")
{
    const auto &s = setup();
    const auto ctx = s.geometry.context();
    const double thr = s.config.omega_thresh();
    const SchemeOptions opt;
    for (std::uint64_t seed = 10; seed < 14; ++seed)
    {
        const Precoder p = mrt_for(seed);
        const SchemeResult t = truncated_mrt(p, ctx, thr, opt);
        CHECK_THAT(t.precoder.b.norm(), WithinAbs(1.0, 1e-12));
        CHECK(t.precoder.chi <= 1.0);
        CHECK(circle_peak(ctx, t.precoder.b, t.precoder.chi, opt).value * t.precoder.chi <= thr);

        const Precoder red = reduced_mrt(p, circle_peak(ctx, p.b, 1.0, opt), thr);
        CHECK(red.chi <= t.precoder.chi);

        for (int m : t.report.truncated_beams())
            CHECK(t.report.scale[m] < 1.0);

        // Idempotent: the truncated beam has nothing left to truncate.
        const SchemeResult again = truncated_mrt(t.precoder, ctx, thr, opt);
        CHECK(again.report.exceed_set.empty());
        CHECK(again.precoder.b == t.precoder.b);
        CHECK(again.precoder.chi == t.precoder.chi);
    }
}

TEST_CASE("single-pass truncation applies one scaling", "[schemes]")
{
    const auto &s = setup();
    const auto ctx = s.geometry.context();
    const double thr = s.config.omega_thresh();
    SchemeOptions opt;
    opt.truncation = TruncationMode::single_pass;
    const Precoder p = mrt_for(5);
    const SchemeResult t = truncated_mrt(p, ctx, thr, opt);
    const ArcMaxima a = exposure_by_arc(ctx, p.b, p.chi, opt);
    CHECK(t.report.refine_iterations == 0);
    CHECK(t.report.guard_factor == 1.0);
    for (int m = 0; m < 64; ++m)
    {
        const bool in = std::binary_search(t.report.exceed_set.begin(), t.report.exceed_set.end(), m);
        CHECK(in == (a.value[m] > thr));
        CHECK(t.report.scale[m] == (in ? std::sqrt(thr / a.value[m]) : 1.0));
    }
    const CVector ft = synthesize(t.report.y_after.y, ctx.frame.dft);
    CHECK((t.precoder.b - ft.normalized()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(t.precoder.chi, WithinRel(ft.squaredNorm() / t.report.y_before.y.squaredNorm(), 1e-12));
}

TEST_CASE("boosting", "[schemes]")
{
    const auto &s = setup();
    const auto ctx = s.geometry.context();
    const double thr = s.config.omega_thresh();
    for (std::uint64_t seed = 20; seed < 24; ++seed)
    {
        const Precoder p = mrt_for(seed);
        const SchemeResult t = truncated_mrt(p, ctx, thr);
        const SchemeResult b = truncated_boosted_mrt(t, ctx, thr);
        CHECK(b.precoder.scheme == Scheme::boosted);
        CHECK_THAT(b.precoder.b.norm(), WithinAbs(1.0, 1e-12));
        CHECK(t.precoder.chi <= b.precoder.chi);
        CHECK(b.precoder.chi <= 1.0);
        for (int m : b.report.boost_set)
            CHECK_FALSE(std::binary_search(t.report.exceed_set.begin(), t.report.exceed_set.end(), m));
    }

    // Every arc over a tiny threshold: nothing is left to boost.
    const Precoder p = mrt_for(25);
    const SchemeResult t = truncated_mrt(p, ctx, 1e-20);
    CHECK(t.report.exceed_set.size() == 64);
    const SchemeResult b = truncated_boosted_mrt(t, ctx, 1e-20);
    CHECK(b.report.boost_iterations == 0);
    CHECK(b.precoder.b == t.precoder.b);
    CHECK(b.precoder.chi == t.precoder.chi);
}
