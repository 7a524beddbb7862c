#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "ontolab/hilbert.hpp"

namespace ontolab {

/// The 4x4 outcome table P(xi_i ; j,k) = |<xi_i | Psi_j x Psi_k>|^2 over
/// outcomes i in [0,4) and preparations (j,k) in {0,1}^2.
struct PbrStatistics {
    std::array<double, 16> p{};

    static constexpr std::size_t index(std::size_t i, std::size_t j, std::size_t k) {
        return (j * 2 + k) * 4 + i;
    }
    double at(std::size_t i, std::size_t j, std::size_t k) const { return p[index(i, j, k)]; }
    double& at(std::size_t i, std::size_t j, std::size_t k) { return p[index(i, j, k)]; }

    /// Sum over outcomes for one preparation row.
    double row_sum(std::size_t j, std::size_t k) const {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += at(i, j, k);
        return s;
    }
};

/// Two non-orthogonal qubit states, a complete four-outcome measurement on
/// the two-qubit space, and the assignment of which product state each
/// outcome annihilates.
struct PBRScenario {
    StateVector psi1;
    StateVector psi2;
    ProjectiveMeasurement measurement;
    // condition_map[i] = (j,k) such that <xi_i | Psi_j x Psi_k> = 0
    std::array<std::pair<std::size_t, std::size_t>, 4> condition_map;

    const StateVector& psi(std::size_t j) const { return j == 0 ? psi1 : psi2; }
};

/// Psi_1 = |0>, Psi_2 = (|0> + |1>)/sqrt(2).
std::pair<StateVector, StateVector> build_states();

/// Deterministically constructs a complete orthonormal basis xi_1..xi_4 of
/// the two-qubit space with <xi_i | s_i> = 0 for the four product states
/// s_i in the order (1,1), (1,2), (2,1), (2,2). Starts from a greedy
/// null-space assignment and polishes with pairwise rotations until every
/// condition is below 1e-13; throws if no completion is found.
ProjectiveMeasurement build_measurement();

PBRScenario build_scenario();

/// Max over the four conditions of |<xi_i | s_i>|.
double condition_residual(const PBRScenario& s);

PbrStatistics quantum_statistics(const PBRScenario& s);

}  // namespace ontolab
