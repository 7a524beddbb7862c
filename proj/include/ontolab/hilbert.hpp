#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ontolab {

using Complex = std::complex<double>;

// Tolerances used across the library: tight one for plain arithmetic
// identities, looser one for anything that went through Gram-Schmidt.
inline constexpr double kArithmeticTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;

/// Unit-norm complex amplitude vector. The norm invariant is checked at
/// construction; use normalized() to build from unnormalized data.
class StateVector {
public:
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector normalized(std::vector<Complex> amplitudes);
    static StateVector basis_state(std::size_t dim, std::size_t k);

    std::size_t dim() const { return amp_.size(); }
    const std::vector<Complex>& amplitudes() const { return amp_; }
    const Complex& operator[](std::size_t k) const { return amp_[k]; }

private:
    std::vector<Complex> amp_;
};

/// Square matrix with U^dag U = I within 1e-10, row-major storage.
class UnitaryOperator {
public:
    UnitaryOperator(std::size_t dim, std::vector<Complex> entries);

    static UnitaryOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Complex& at(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    const std::vector<Complex>& entries() const { return entries_; }

    /// Max-abs residual of U^dag U - I.
    double unitarity_residual() const;

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// A set of pairwise-orthogonal unit vectors; complete when it spans the
/// whole space (count == dim, sum of projectors == identity).
class ProjectiveMeasurement {
public:
    explicit ProjectiveMeasurement(std::vector<StateVector> outcomes);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return outcomes_.size(); }
    const StateVector& outcome(std::size_t i) const { return outcomes_[i]; }
    const std::vector<StateVector>& outcomes() const { return outcomes_; }

    bool is_complete() const { return outcomes_.size() == dim_; }
    /// Max-abs entry of sum_i |xi_i><xi_i| - I.
    double completeness_residual() const;

private:
    std::size_t dim_;
    std::vector<StateVector> outcomes_;
};

/// <a|b> with conjugation on the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Kronecker composite; index (n,p) of the result is row-major n*dim(b)+p.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// |<xi|psi>|^2.
double born_probability(const StateVector& xi, const StateVector& psi);

StateVector apply(const UnitaryOperator& u, const StateVector& psi);

/// Extends the given linearly independent vectors to a full orthonormal
/// basis of C^dim by stabilized Gram-Schmidt against the standard basis.
/// Throws if the inputs are rank deficient.
std::vector<StateVector> orthonormal_extension(
    const std::vector<StateVector>& vectors, std::size_t dim);

/// Haar-ish random state: normalize a vector of iid standard complex
/// Gaussians. Deterministic per seed, independent of platform.
StateVector random_state(std::size_t dim, std::uint64_t seed);

/// Haar random unitary via Gram-Schmidt of a complex Gaussian matrix with
/// phase-fixed diagonal. Deterministic per seed.
UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed);

namespace detail {

/// Deterministic standard-normal stream (mt19937_64 + Box-Muller); avoids
/// std::normal_distribution whose output is implementation-defined.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next();
    Complex next_complex() { return {next(), next()}; }

private:
    double next_uniform();  // in [0, 1)

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace detail

}  // namespace ontolab
