#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "apvq/error.hpp"
#include "apvq/interference.hpp"

using namespace apvq;
using doctest::Approx;
using C = std::complex<double>;

TEST_CASE("interference_rate") {
    SUBCASE("no PV amplitude") {
        const auto r = interference_rate({C{0.7, -0.2}, C{0.0, 0.0}});
        CHECK(r.rate == Approx(0.53).epsilon(1e-14));
        CHECK(r.reversal_odd == 0.0);
    }
    SUBCASE("reversal-odd fraction near 1e-4") {
        const auto r = interference_rate({C{1.0, 0.0}, C{2e-5, 0.0}});
        CHECK(r.reversal_odd == Approx(4e-5).epsilon(1e-12));
        CHECK(r.reversal_odd > 1e-5);
        CHECK(r.reversal_odd < 1e-3);
    }
    SUBCASE("quadrature phases do not interfere") {
        const auto r = interference_rate({C{0.0, 1.0}, C{1.0, 0.0}});
        CHECK(r.reversal_odd == Approx(0.0).scale(1.0));
        CHECK(r.rate == Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("expansion is exact with the quadratic term") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> n01;
        for (int i = 0; i < 500; ++i) {
            const AmplitudePair p{C{n01(rng), n01(rng)}, C{n01(rng), n01(rng)}};
            const auto r = interference_rate(p);
            const double rebuilt = std::norm(p.pc) + r.reversal_odd + std::norm(p.pnc);
            CHECK(r.rate - rebuilt == Approx(0.0).scale(r.rate + 1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("amplitude_ratio") {
    // zeta/beta = -24 mV/cm = -2.4 V/m at E = 1 kV/cm = 1e5 V/m.
    CHECK(amplitude_ratio(-2.4, 1e5) == Approx(-2.4e-5).epsilon(1e-14));
    CHECK(amplitude_ratio(0.0, 1e5) == 0.0);
    CHECK(amplitude_ratio(-2.4, 2e5) == Approx(0.5 * amplitude_ratio(-2.4, 1e5)).epsilon(1e-15));
    CHECK_THROWS_AS(amplitude_ratio(-2.4, 0.0), Error);
}

TEST_CASE("pv_light_shift") {
    SUBCASE("no PV Rabi frequency") {
        const auto s = pv_light_shift({C{1e6, 0.0}, C{0.0, 0.0}}, 1e6);
        CHECK(s.pv == 0.0);
        CHECK(s.total == Approx(1e12 / 4e6).epsilon(1e-14));
    }
    SUBCASE("hand-evaluated PV shift") {
        const double delta = 2.0 * std::numbers::pi * 1e6;
        const auto s = pv_light_shift({C{1e6, 0.0}, C{20.0, 0.0}}, delta);
        CHECK(s.pv == Approx(1.5915494309189535).epsilon(1e-13));
    }
    SUBCASE("parity of the shift") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> n01;
        for (int i = 0; i < 200; ++i) {
            const C pc{n01(rng), n01(rng)};
            const C pnc{1e-3 * n01(rng), 1e-3 * n01(rng)};
            const double delta = 1.0 + std::abs(n01(rng));
            const auto plus = pv_light_shift({pc, pnc}, delta);
            const auto minus = pv_light_shift({pc, -pnc}, delta);
            CHECK(plus.pv == Approx(-minus.pv).epsilon(1e-12).scale(1e-12));
            CHECK(plus.total - plus.pv ==
                  Approx(minus.total - minus.pv).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(pv_light_shift({C{1.0, 0.0}, C{0.0, 0.0}}, 0.0), Error);
}

TEST_CASE("ramsey_phase") {
    CHECK(ramsey_phase(0.0, 3.0) == 0.0);
    CHECK(ramsey_phase(1.5915, 1.0) == Approx(1.5915));
    CHECK(ramsey_phase(1.5915, 0.0) == 0.0);
    CHECK(ramsey_phase(2.0 * 1.5915, 3.0) == Approx(2.0 * ramsey_phase(1.5915, 3.0)));
    CHECK_THROWS_AS(ramsey_phase(1.0, -1.0), Error);
}

TEST_CASE("diagnostic ratio") {
    CHECK(AmplitudePair{C{2.0, 0.0}, C{0.0, 1e-4}}.smallness() == Approx(5e-5));
    CHECK(std::isinf(AmplitudePair{C{0.0, 0.0}, C{1.0, 0.0}}.smallness()));
}
