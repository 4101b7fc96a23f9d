#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracmin/envelope.hpp"
#include "fracmin/genpar.hpp"

using fracmin::ApTable;
using fracmin::tabulate_ap;

namespace {
const double kE = std::exp(1.0);
const double kARef = 1.7046560372;

const ApTable& shared_table() {
    static const ApTable tab = tabulate_ap();
    return tab;
}
}  // namespace

TEST_CASE("slope limit constant") {
    CHECK(fracmin::ap_slope_limit() ==
          doctest::Approx(1.0 / (1.0 - std::exp(-1.0))).epsilon(1e-15));
}

TEST_CASE("table shape and ordering") {
    const ApTable& tab = shared_table();
    CHECK(tab.rows.size() > 100);
    CHECK(tab.p_min() > 0.0);
    CHECK(tab.p_max() > 0.999);
    CHECK(tab.p_max() <= 1.0);
    for (size_t i = 1; i < tab.rows.size(); ++i) {
        CHECK(tab.rows[i].x > tab.rows[i - 1].x);
        CHECK(tab.rows[i].z > tab.rows[i - 1].z);
    }
}

TEST_CASE("endpoint values and the small-p slope") {
    const ApTable& tab = shared_table();
    CHECK(std::fabs(fracmin::ap_value(tab, 1.0) - kARef) < 1e-4);
    const double head = tab.rows.front().z / tab.rows.front().x;
    CHECK(std::fabs(head - fracmin::ap_slope_limit()) < 1e-2);
}

TEST_CASE("tabulated values dominate the linear lower bound") {
    const ApTable& tab = shared_table();
    const double k0 = fracmin::ap_slope_limit();
    for (const fracmin::ApRow& r : tab.rows) {
        CHECK(r.z >= k0 * r.x - 1e-12);
    }
}

TEST_CASE("interpolation reproduces the nodes and stays monotone") {
    const ApTable& tab = shared_table();
    for (size_t i = 0; i < tab.rows.size(); i += 97) {
        CHECK(fracmin::ap_value(tab, tab.rows[i].x) ==
              doctest::Approx(tab.rows[i].z).epsilon(1e-12));
    }
    double prev = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double p = tab.p_min() + (1.0 - tab.p_min()) * i / 300.0;
        const double v = fracmin::ap_value(tab, p);
        if (i) CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(fracmin::ap_value(tab, tab.p_min() * 0.5), std::domain_error);
    CHECK_THROWS_AS(fracmin::ap_value(tab, 1.5), std::domain_error);
}

TEST_CASE("closed-form branch and its junction with the table") {
    const ApTable& tab = shared_table();
    const double a1 = fracmin::ap_value(tab, 1.0);
    CHECK(std::fabs(fracmin::ap_closed_form(a1, 1.0) - a1) < 1e-12);
    CHECK(std::fabs(fracmin::ap_closed_form(kARef, 1.0) - a1) < 1e-3);
    CHECK(fracmin::ap_closed_form(kARef, kE) ==
          doctest::Approx(kARef + kE).epsilon(1e-12));
    CHECK(fracmin::ap_closed_form(kARef, 2.0) >
          fracmin::ap_closed_form(kARef, 1.5));
    CHECK_THROWS_AS(fracmin::ap_closed_form(kARef, 0.9), std::domain_error);
}

TEST_CASE("functional equation residuals") {
    const ApTable& tab = shared_table();
    for (double p : {0.1, 0.5}) {
        const fracmin::FeqResult r = fracmin::feq_residual(tab, p);
        CHECK(std::fabs(r.residual) < 1e-3);
        CHECK(r.u_star >= 1.0);
        CHECK(r.u_star <= kE);
    }
    CHECK(fracmin::feq_residual(tab, 1e-3).u_star > kE - 0.2);
    CHECK_THROWS_AS(fracmin::feq_residual(tab, tab.p_min() * 0.1),
                    std::domain_error);
}

TEST_CASE("ladder seed halving leaves the endpoint in place") {
    const ApTable& tab = shared_table();
    const ApTable half = tabulate_ap(0.5e-6);
    CHECK(std::fabs(fracmin::ap_value(half, 1.0) -
                    fracmin::ap_value(tab, 1.0)) < 1e-5);
}

TEST_CASE("ladder rejects out-of-range configuration") {
    CHECK_THROWS_AS(tabulate_ap(0.0), std::invalid_argument);
    CHECK_THROWS_AS(tabulate_ap(-1e-7), std::invalid_argument);
    CHECK_THROWS_AS(tabulate_ap(1e-3), std::invalid_argument);
    CHECK_THROWS_AS(tabulate_ap(1e-6, 5), std::invalid_argument);
    CHECK_THROWS_AS(tabulate_ap(1e-6, 200, 0), std::invalid_argument);
}

TEST_CASE("doubled shift agrees with the rescaled envelope") {
    const ApTable& tab = shared_table();
    const double a1 = fracmin::ap_value(tab, 1.0);
    fracmin::EnvelopeModel env;
    double acc = 0.0;
    int cnt = 0;
    for (int i = 0; i <= 40; ++i) {
        const double u = 8.0 + 4.0 * i / 40.0;
        acc += kE * u - env.envelope_value(std::exp(u) / 2.0);
        ++cnt;
    }
    const double fitted = acc / cnt;
    CHECK(std::fabs(fitted - fracmin::ap_closed_form(a1, 2.0)) < 0.05);
}
