#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ontolab/hilbert.hpp"

using namespace ontolab;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector plus_state() {
    return StateVector({Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}});
}
}  // namespace

TEST_CASE("inner product basics") {
    const auto zero = StateVector::basis_state(2, 0);
    const auto one = StateVector::basis_state(2, 1);
    CHECK(inner_product(zero, zero) == Complex{1.0, 0.0});
    CHECK(std::abs(inner_product(zero, plus_state()) - kInvSqrt2) < 1e-15);
    CHECK_THROWS_AS(inner_product(zero, StateVector::basis_state(4, 0)), std::invalid_argument);

    // <a|b> = conj(<b|a>)
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = random_state(5, 100 + s);
        const auto b = random_state(5, 200 + s);
        const auto ab = inner_product(a, b);
        const auto ba = inner_product(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
    }
}

TEST_CASE("state vector invariants") {
    CHECK_THROWS_AS(StateVector({Complex{0.5, 0.0}, Complex{0.5, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({Complex{std::nan(""), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(std::vector<Complex>{}), std::invalid_argument);
    const auto s = StateVector::normalized({Complex{3.0, 0.0}, Complex{4.0, 0.0}});
    CHECK(s[0].real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(s[1].real() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("tensor product") {
    const auto zero = StateVector::basis_state(2, 0);
    const auto zz = tensor_product(zero, zero);
    CHECK(zz.dim() == 4);
    CHECK(zz[0] == Complex{1.0, 0.0});
    CHECK(zz[1] == Complex{0.0, 0.0});

    const auto zp = tensor_product(zero, plus_state());
    CHECK(std::abs(zp[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(zp[1] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(zp[2]) == 0.0);
    CHECK(std::abs(zp[3]) == 0.0);

    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = random_state(3, 300 + s);
        const auto b = random_state(4, 400 + s);
        double n2 = 0.0;
        const auto t = tensor_product(a, b);
        for (std::size_t k = 0; k < t.dim(); ++k) n2 += std::norm(t[k]);
        CHECK(std::abs(n2 - 1.0) < 1e-12);
    }
}

TEST_CASE("tensor product factorizes inner products") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = random_state(3, 1 + s), c = random_state(3, 51 + s);
        const auto b = random_state(2, 101 + s), d = random_state(2, 151 + s);
        const auto lhs = inner_product(tensor_product(a, b), tensor_product(c, d));
        const auto rhs = inner_product(a, c) * inner_product(b, d);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("born probability") {
    const auto zero = StateVector::basis_state(2, 0);
    const auto one = StateVector::basis_state(2, 1);
    CHECK(born_probability(zero, zero) == 1.0);
    CHECK(born_probability(one, zero) == 0.0);
    CHECK(born_probability(zero, plus_state()) == doctest::Approx(0.5).epsilon(1e-14));

    // completeness over a random orthonormal basis
    const auto u = random_unitary(6, 777);
    std::vector<StateVector> outcomes;
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<Complex> col(6);
        for (std::size_t r = 0; r < 6; ++r) col[r] = u.at(r, i);
        outcomes.push_back(StateVector::normalized(std::move(col)));
    }
    const ProjectiveMeasurement m(outcomes);
    CHECK(m.is_complete());
    const auto psi = random_state(6, 778);
    double total = 0.0;
    for (const auto& xi : m.outcomes()) total += born_probability(xi, psi);
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("orthonormal extension") {
    const auto zero = StateVector::basis_state(2, 0);
    auto basis = orthonormal_extension({zero}, 2);
    REQUIRE(basis.size() == 2);
    CHECK(std::abs(std::abs(inner_product(basis[1], StateVector::basis_state(2, 1))) - 1.0) <
          1e-12);

    // empty input: any complete orthonormal basis qualifies
    auto full = orthonormal_extension({}, 5);
    const ProjectiveMeasurement m{full};
    CHECK(m.is_complete());
    CHECK(m.completeness_residual() < 1e-10);

    const auto diag = plus_state();
    auto ext = orthonormal_extension({diag}, 2);
    CHECK(std::abs(inner_product(ext[0], ext[1])) < 1e-12);

    CHECK_THROWS_AS(orthonormal_extension({zero, zero}, 2), std::invalid_argument);
}

TEST_CASE("random state and unitary are deterministic per seed") {
    const auto a = random_state(8, 42);
    const auto b = random_state(8, 42);
    CHECK(a.amplitudes() == b.amplitudes());
    double n2 = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) n2 += std::norm(a[k]);
    CHECK(std::abs(n2 - 1.0) < 1e-12);

    const auto u = random_unitary(8, 42);
    const auto v = random_unitary(8, 42);
    CHECK(u.entries() == v.entries());
    CHECK(u.unitarity_residual() < 1e-10);
    CHECK(random_state(8, 43).amplitudes() != a.amplitudes());
}

TEST_CASE("unitary invariant is enforced") {
    std::vector<Complex> bad(4, Complex{0.5, 0.0});
    CHECK_THROWS_AS(UnitaryOperator(2, bad), std::invalid_argument);
    const auto id = UnitaryOperator::identity(3);
    CHECK(id.unitarity_residual() == 0.0);
    const auto psi = random_state(3, 9);
    const auto out = apply(id, psi);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(out[k] - psi[k]) < 1e-15);
}
