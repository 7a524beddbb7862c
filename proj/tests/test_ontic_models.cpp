#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ontolab/json_io.hpp"
#include "ontolab/ontic_models.hpp"

using namespace ontolab;

namespace {

EpistemicDensity random_density(const OnticSpace& space, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::vector<double> w(space.size());
    for (double& x : w) x = 0.05 + static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return EpistemicDensity::from_weights(space, std::move(w));
}

ResponseFunction random_response(const OnticSpace& space, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const std::size_t L = space.size();
    ResponseFunction r{space, space, m, std::vector<double>(m * L * L, 0.0)};
    for (std::size_t la = 0; la < L; ++la) {
        for (std::size_t lb = 0; lb < L; ++lb) {
            double total = 0.0;
            std::vector<double> raw(m);
            for (double& x : raw) {
                x = 0.01 + static_cast<double>(eng() >> 11) * 0x1.0p-53;
                total += x;
            }
            for (std::size_t i = 0; i < m; ++i) r.at(i, la, lb) = raw[i] / total;
            // make the row sum exactly 1 against rounding dust
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < m; ++i) s += r.at(i, la, lb);
            r.at(m - 1, la, lb) = 1.0 - s;
        }
    }
    return r;
}

OntologicalModel make_model(const EpistemicDensity& r1, const EpistemicDensity& r2,
                            ResponseFunction rf) {
    OntologicalModel m;
    m.kind = ModelKind::psi_independent;
    m.densities = {{"1", r1}, {"2", r2}};
    m.response = std::move(rf);
    validate_model(m);
    return m;
}

}  // namespace

TEST_CASE("product density") {
    const auto space = OnticSpace::grid(3);
    const auto pa = EpistemicDensity::point_mass(space, 0);
    const auto pb = EpistemicDensity::point_mass(space, 2);
    const auto joint = product_density(pa, pb);
    CHECK(joint.at(0, 2) == 1.0);
    CHECK(joint.at(0, 0) == 0.0);
    CHECK(joint.at(2, 0) == 0.0);

    const auto u2 = EpistemicDensity::uniform(OnticSpace::grid(2));
    const auto uu = product_density(u2, u2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(uu.at(a, b) == 0.25);

    const auto space8 = OnticSpace::grid(8);
    const auto r1 = random_density(space8, 5);
    const auto r2 = random_density(space8, 6);
    double total = 0.0;
    for (double w : product_density(r1, r2).weights) total += w;
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("predict") {
    const auto space = OnticSpace::grid(3);
    const std::size_t L = space.size();

    // response that always reports outcome 0
    ResponseFunction sure{space, space, 2, std::vector<double>(2 * L * L, 0.0)};
    for (std::size_t la = 0; la < L; ++la)
        for (std::size_t lb = 0; lb < L; ++lb) sure.at(0, la, lb) = 1.0;
    auto m = make_model(random_density(space, 1), random_density(space, 2), sure);
    CHECK(predict(m, "1", "2", 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(predict(m, "1", "2", 1) == 0.0);
    CHECK_THROWS_AS(predict(m, "1", "nope", 0), std::invalid_argument);

    // point masses pick out a single response entry
    const auto rf = random_response(space, 4, 7);
    auto pm = make_model(EpistemicDensity::point_mass(space, 1),
                         EpistemicDensity::point_mass(space, 2), rf);
    for (std::size_t i = 0; i < 4; ++i) CHECK(predict(pm, "1", "2", i) == rf.at(i, 1, 2));

    // completeness of the response makes predictions sum to one
    auto rnd = make_model(random_density(space, 11), random_density(space, 12),
                          random_response(space, 4, 13));
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) total += predict(rnd, "1", "2", i);
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("predict is linear in the densities") {
    const auto space = OnticSpace::grid(4);
    const auto rf = random_response(space, 3, 21);
    const auto rho_a = random_density(space, 22);
    const auto rho_b = random_density(space, 23);
    const auto rho_k = random_density(space, 24);
    const double alpha = 0.3;

    std::vector<double> mixw(space.size());
    for (std::size_t l = 0; l < space.size(); ++l)
        mixw[l] = alpha * rho_a.weights[l] + (1.0 - alpha) * rho_b.weights[l];
    const EpistemicDensity mix{space, mixw};

    for (std::size_t i = 0; i < 3; ++i) {
        const double lhs = predict(make_model(mix, rho_k, rf), "1", "2", i);
        const double pa = predict(make_model(rho_a, rho_k, rf), "1", "2", i);
        const double pb = predict(make_model(rho_b, rho_k, rf), "1", "2", i);
        CHECK(std::abs(lhs - (alpha * pa + (1.0 - alpha) * pb)) < 1e-12);
    }
}

TEST_CASE("support") {
    const auto space = OnticSpace::grid(3);
    CHECK(support(EpistemicDensity::point_mass(space, 1)) == std::vector<std::size_t>{1});
    CHECK(support(EpistemicDensity::uniform(space)).size() == 3);
    const EpistemicDensity d{space, {0.5, 0.5, 0.0}};
    CHECK(support(d, 1e-15) == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(support(d, -1.0), std::invalid_argument);
}

TEST_CASE("overlap mass") {
    const auto space = OnticSpace::grid(3);
    const auto u = EpistemicDensity::uniform(space);
    CHECK(overlap_mass(u, u) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(overlap_mass(EpistemicDensity::point_mass(space, 0),
                       EpistemicDensity::point_mass(space, 2)) == 0.0);
    const EpistemicDensity a{space, {0.5, 0.5, 0.0}};
    const EpistemicDensity b{space, {0.0, 0.5, 0.5}};
    CHECK(overlap_mass(a, b) == 0.5);

    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto x = random_density(space, 40 + s);
        const auto y = random_density(space, 60 + s);
        const double xy = overlap_mass(x, y);
        CHECK(xy == overlap_mass(y, x));
        CHECK(xy >= 0.0);
        CHECK(xy <= 1.0 + 1e-15);
    }
}

TEST_CASE("invariants are enforced") {
    const auto space = OnticSpace::grid(2);
    CHECK_THROWS_AS(validate_density(EpistemicDensity{space, {0.7, 0.7}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_density(EpistemicDensity{space, {-0.1, 1.1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_space(OnticSpace{{"a", "a"}}), std::invalid_argument);

    ResponseFunction bad{space, space, 2, std::vector<double>(8, 0.9)};
    CHECK_THROWS_AS(validate_response(bad), std::invalid_argument);
}

TEST_CASE("model json round trip") {
    const auto space = OnticSpace::grid(3);
    auto m = make_model(random_density(space, 31), random_density(space, 32),
                        random_response(space, 4, 33));
    const auto j = model_to_json(m);
    const auto back = model_from_json(j);
    CHECK(back.kind == m.kind);
    CHECK(back.densities.at("1").weights == m.densities.at("1").weights);
    CHECK(back.densities.at("2").weights == m.densities.at("2").weights);
    CHECK(std::get<ResponseFunction>(back.response).table ==
          std::get<ResponseFunction>(m.response).table);
}
