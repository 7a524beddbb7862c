#include <doctest.h>

#include <cmath>

#include "ontolab/pbr_scenario.hpp"

using namespace ontolab;

TEST_CASE("the two preparation states") {
    const auto [psi1, psi2] = build_states();
    CHECK(psi1[0] == Complex{1.0, 0.0});
    CHECK(psi1[1] == Complex{0.0, 0.0});
    CHECK(std::abs(psi2[0] - 1.0 / std::sqrt(2.0)) < 1e-16);
    CHECK(std::abs(psi2[1] - 1.0 / std::sqrt(2.0)) < 1e-16);
    CHECK(std::norm(inner_product(psi1, psi2)) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("measurement satisfies the four orthogonality conditions") {
    const auto scenario = build_scenario();
    CHECK(condition_residual(scenario) < 1e-12);
    CHECK(scenario.measurement.is_complete());
    CHECK(scenario.measurement.completeness_residual() < 1e-10);

    // every row of the statistics table is a probability distribution
    const auto stats = quantum_statistics(scenario);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(stats.row_sum(j, k) - 1.0) < 1e-10);
}

TEST_CASE("construction is deterministic bit for bit") {
    const auto a = build_measurement();
    const auto b = build_measurement();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.outcome(i).amplitudes() == b.outcome(i).amplitudes());
}

TEST_CASE("golden statistics table") {
    // frozen after the first verified build; the constructed basis gives the
    // clean pattern with entries in {0, 1/4, 1/2}
    const double golden[4][4] = {
        //  xi1   xi2   xi3   xi4     preparation
        {0.00, 0.25, 0.25, 0.50},  // (1,1)
        {0.25, 0.00, 0.50, 0.25},  // (1,2)
        {0.25, 0.50, 0.00, 0.25},  // (2,1)
        {0.50, 0.25, 0.25, 0.00},  // (2,2)
    };
    const auto stats = quantum_statistics(build_scenario());
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 4; ++i)
                CHECK(std::abs(stats.at(i, j, k) - golden[j * 2 + k][i]) < 1e-12);

    // the preparation that the first outcome annihilates: first entry zero,
    // rest sum to one
    CHECK(stats.at(0, 0, 0) < 1e-12);
    CHECK(std::abs(stats.at(1, 0, 0) + stats.at(2, 0, 0) + stats.at(3, 0, 0) - 1.0) < 1e-10);
}
