#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracmin/asymptotics.hpp"

using fracmin::analyze;
using fracmin::EnvelopeAsymptotics;
using fracmin::FamilySpec;
using fracmin::Jet2d;

namespace {

const double kE = std::exp(1.0);

FamilySpec textbook_family() {
    FamilySpec fam;
    fam.p0 = [](const Jet2d& t) { return t; };
    fam.q0 = [](const Jet2d&) { return Jet2d{}; };
    fam.r0 = [](const Jet2d&) { return Jet2d{}; };
    fam.p1 = [](const Jet2d& t) { return t * t + 1.0; };
    fam.q1 = [](const Jet2d&) { return Jet2d{}; };
    fam.r1 = [](const Jet2d&) { return Jet2d{}; };
    fam.t_lo = 0.5;
    fam.t_hi = 1.5;
    return fam;
}

}  // namespace

TEST_CASE("nearest integer distance") {
    CHECK(fracmin::nearest_int_dist(0.0) == 0.0);
    CHECK(fracmin::nearest_int_dist(3.0) == 0.0);
    CHECK(fracmin::nearest_int_dist(2.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fracmin::nearest_int_dist(-0.3) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(fracmin::nearest_int_dist(7.8) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(fracmin::nearest_int_dist(4.2) ==
          doctest::Approx(fracmin::nearest_int_dist(17.2)).epsilon(1e-12));
}

TEST_CASE("textbook linear-quadratic family") {
    const EnvelopeAsymptotics c = analyze(textbook_family());
    CHECK(c.t0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.b0 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c.b2 == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(c.a0 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::fabs(c.a1) < 1e-10);
    CHECK(std::fabs(c.a2) < 1e-9);
    CHECK(c.a3 == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(c.p0_t0 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("textbook family prediction against brute force") {
    const EnvelopeAsymptotics c = analyze(textbook_family());
    const auto xof = [](int n, double t) { return n * t; };
    const auto yof = [](int n, double t) { return n * (t * t + 1.0); };
    for (double u : {12.3, 20.0, 33.7}) {
        const int nlo = std::max(1, static_cast<int>(u / 1.5) - 1);
        const int nhi = static_cast<int>(u / 0.5) + 1;
        const double bf = fracmin::brute_force_envelope(xof, yof, nlo, nhi, u,
                                                        0.5, 1.5);
        double direct = 1e300;
        for (int n = nlo; n <= nhi; ++n) {
            const double t = u / n;
            if (t < 0.5 || t > 1.5) continue;
            direct = std::min(direct, n + u * u / n);
        }
        CHECK(bf == doctest::Approx(direct).epsilon(1e-9));
        CHECK(std::fabs(bf - fracmin::predict(c, u)) * u * u < 0.6);
    }
}

TEST_CASE("exponential mean family") {
    const EnvelopeAsymptotics c = analyze(fracmin::family_am_gm());
    CHECK(c.t0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c.b0 == doctest::Approx(kE).epsilon(1e-10));
    CHECK(c.b2 == doctest::Approx(kE).epsilon(1e-7));
    CHECK(c.a0 == doctest::Approx(kE).epsilon(1e-10));
    CHECK(std::fabs(c.a1) < 1e-10);
    CHECK(std::fabs(c.a2) < 1e-9);
    CHECK(c.a3 == doctest::Approx(kE / 2.0).epsilon(1e-8));
}

TEST_CASE("exponential mean prediction across a dense sweep") {
    const EnvelopeAsymptotics c = analyze(fracmin::family_am_gm());
    const auto xof = [](int n, double t) { return n * t; };
    const auto yof = [](int n, double t) { return n * std::exp(t); };
    double worst = 0.0;
    for (int i = 0; i < 600; ++i) {
        const double u = 15.0 + 30.0 * i / 599.0;
        const int nlo = std::max(1, static_cast<int>(u / 1.5) - 1);
        const int nhi = static_cast<int>(u / 0.5) + 1;
        const double bf = fracmin::brute_force_envelope(xof, yof, nlo, nhi, u,
                                                        0.5, 1.5);
        worst = std::max(worst, std::fabs(bf - fracmin::predict(c, u)) * u * u);
    }
    CHECK(worst < 1.0);
}

TEST_CASE("families without an interior minimum are rejected") {
    FamilySpec flat = textbook_family();
    flat.p0 = [](const Jet2d& t) { return 1.0 + (t - 1.0) * (t - 1.0); };
    flat.p1 = [](const Jet2d& t) { return 2.0 + (t - 1.0) * (t - 1.0); };
    flat.t_lo = 1.0;
    flat.t_hi = 2.0;
    CHECK_THROWS_AS(analyze(flat), std::domain_error);

    FamilySpec constant_ratio = textbook_family();
    constant_ratio.p1 = [](const Jet2d& t) { return t * 2.0; };
    CHECK_THROWS_AS(analyze(constant_ratio), std::domain_error);

    FamilySpec empty = textbook_family();
    empty.t_lo = 1.5;
    empty.t_hi = 0.5;
    CHECK_THROWS_AS(analyze(empty), std::invalid_argument);
}

TEST_CASE("prediction rejects nonpositive arguments") {
    const EnvelopeAsymptotics c = analyze(textbook_family());
    CHECK_THROWS_AS(fracmin::predict(c, 0.0), std::domain_error);
    CHECK_THROWS_AS(fracmin::predict(c, -3.0), std::domain_error);
}

TEST_CASE("main constants against their reference digits") {
    const fracmin::MainConstants mc = fracmin::compute_main_constants();
    CHECK(std::fabs(mc.big_a - 1.7046560372) < 1e-8);
    CHECK(std::fabs(mc.small_b - 0.6973885601) < 1e-8);
    CHECK(std::fabs(mc.alpha_at_1 - 2.815572650) < 1e-7);
    CHECK(std::fabs(mc.t_o - 1.447847) < 1e-5);
    CHECK(std::fabs(mc.alpha_at_to - 2.673953412) < 1e-7);
    CHECK(std::fabs(mc.t_a - 1.185591828) < 1e-6);
    CHECK(std::fabs(mc.t_b - 1.742084284) < 1e-6);
    CHECK(mc.alpha_at_tb == doctest::Approx(kE).epsilon(1e-11));
    CHECK(mc.zeta_tb == doctest::Approx(1.0 - mc.big_a).epsilon(1e-12));
    CHECK(mc.phi_tb == doctest::Approx(-mc.small_b).epsilon(1e-12));
    CHECK(mc.beta2_tb == doctest::Approx(0.0297140962244).epsilon(1e-7));
    CHECK(mc.t_a < mc.t_o);
    CHECK(mc.t_o < mc.t_b);
}

TEST_CASE("main family asymptotic coefficients") {
    const EnvelopeAsymptotics c = analyze(fracmin::family_main());
    const fracmin::MainConstants mc = fracmin::compute_main_constants();
    CHECK(c.t0 == doctest::Approx(mc.t_b).epsilon(1e-10));
    CHECK(c.a0 == doctest::Approx(kE).epsilon(1e-11));
    CHECK(c.a1 == doctest::Approx(mc.zeta_tb).epsilon(1e-9));
    CHECK(std::fabs(c.a2) < 1e-10);
    CHECK(c.a3 == doctest::Approx(kE / 2.0).epsilon(1e-8));
    CHECK(c.p0_t0 == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(c.q0_t0 == doctest::Approx(-mc.small_b).epsilon(1e-10));
}
