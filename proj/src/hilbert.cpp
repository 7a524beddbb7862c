#include "ontolab/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ontolab {

namespace {

bool all_finite(const std::vector<Complex>& v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double squared_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw std::invalid_argument("StateVector: dim must be >= 1");
    if (!all_finite(amp_)) throw std::invalid_argument("StateVector: non-finite amplitude");
    const double n2 = squared_norm(amp_);
    if (std::abs(n2 - 1.0) > kArithmeticTol) {
        throw std::invalid_argument("StateVector: norm^2 = " + std::to_string(n2) +
                                    " is not 1 within 1e-12; use StateVector::normalized");
    }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
    if (amplitudes.empty()) throw std::invalid_argument("StateVector: dim must be >= 1");
    if (!all_finite(amplitudes)) throw std::invalid_argument("StateVector: non-finite amplitude");
    const double n = std::sqrt(squared_norm(amplitudes));
    if (n < 1e-150) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
    for (auto& z : amplitudes) z /= n;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::invalid_argument("basis_state: index out of range");
    std::vector<Complex> a(dim, Complex{0.0, 0.0});
    a[k] = Complex{1.0, 0.0};
    return StateVector(std::move(a));
}

UnitaryOperator::UnitaryOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) throw std::invalid_argument("UnitaryOperator: dim must be >= 1");
    if (entries_.size() != dim_ * dim_)
        throw std::invalid_argument("UnitaryOperator: entry count != dim^2");
    if (!all_finite(entries_)) throw std::invalid_argument("UnitaryOperator: non-finite entry");
    if (unitarity_residual() > kOrthonormalTol)
        throw std::invalid_argument("UnitaryOperator: U^dag U deviates from identity beyond 1e-10");
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
    std::vector<Complex> e(dim * dim, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = Complex{1.0, 0.0};
    return UnitaryOperator(dim, std::move(e));
}

double UnitaryOperator::unitarity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t r = 0; r < dim_; ++r)
                s += std::conj(entries_[r * dim_ + i]) * entries_[r * dim_ + j];
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<StateVector> outcomes)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty())
        throw std::invalid_argument("ProjectiveMeasurement: needs at least one outcome");
    dim_ = outcomes_.front().dim();
    for (const auto& v : outcomes_) {
        if (v.dim() != dim_)
            throw std::invalid_argument("ProjectiveMeasurement: mixed dimensions");
    }
    if (outcomes_.size() > dim_)
        throw std::invalid_argument("ProjectiveMeasurement: more outcomes than dimensions");
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
            if (std::abs(inner_product(outcomes_[i], outcomes_[j])) > kOrthonormalTol)
                throw std::invalid_argument(
                    "ProjectiveMeasurement: outcomes not pairwise orthogonal within 1e-10");
        }
    }
}

double ProjectiveMeasurement::completeness_residual() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Complex s{0.0, 0.0};
            for (const auto& v : outcomes_) s += v[r] * std::conj(v[c]);
            if (r == c) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    std::vector<Complex> out(a.dim() * b.dim());
    for (std::size_t n = 0; n < a.dim(); ++n)
        for (std::size_t p = 0; p < b.dim(); ++p) out[n * b.dim() + p] = a[n] * b[p];
    // norm of the raw products drifts by ulps only; keep them untouched so
    // the composite amplitudes are exactly the pairwise products
    return StateVector(std::move(out));
}

double born_probability(const StateVector& xi, const StateVector& psi) {
    return std::norm(inner_product(xi, psi));
}

StateVector apply(const UnitaryOperator& u, const StateVector& psi) {
    if (u.dim() != psi.dim()) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Complex> out(u.dim(), Complex{0.0, 0.0});
    for (std::size_t r = 0; r < u.dim(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) out[r] += u.at(r, c) * psi[c];
    return StateVector::normalized(std::move(out));
}

namespace {

// Two-pass modified Gram-Schmidt step: orthogonalize v against basis, return
// its remaining norm (not normalized yet).
double mgs_orthogonalize(std::vector<Complex>& v, const std::vector<std::vector<Complex>>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            Complex proj{0.0, 0.0};
            for (std::size_t k = 0; k < v.size(); ++k) proj += std::conj(q[k]) * v[k];
            for (std::size_t k = 0; k < v.size(); ++k) v[k] -= proj * q[k];
        }
    }
    double n2 = 0.0;
    for (const auto& z : v) n2 += std::norm(z);
    return std::sqrt(n2);
}

}  // namespace

std::vector<StateVector> orthonormal_extension(const std::vector<StateVector>& vectors,
                                               std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("orthonormal_extension: dim must be >= 1");
    if (vectors.size() > dim)
        throw std::invalid_argument("orthonormal_extension: more vectors than dimensions");
    std::vector<std::vector<Complex>> basis;
    basis.reserve(dim);
    for (const auto& v : vectors) {
        if (v.dim() != dim)
            throw std::invalid_argument("orthonormal_extension: dimension mismatch");
        std::vector<Complex> w = v.amplitudes();
        const double rem = mgs_orthogonalize(w, basis);
        if (rem < 1e-8)
            throw std::invalid_argument("orthonormal_extension: input vectors are rank deficient");
        for (auto& z : w) z /= rem;
        basis.push_back(std::move(w));
    }
    // complete with standard basis candidates in lexicographic order
    for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
        std::vector<Complex> w(dim, Complex{0.0, 0.0});
        w[k] = Complex{1.0, 0.0};
        const double rem = mgs_orthogonalize(w, basis);
        if (rem < 1e-8) continue;  // candidate already in the span
        for (auto& z : w) z /= rem;
        basis.push_back(std::move(w));
    }
    if (basis.size() != dim)
        throw std::runtime_error("orthonormal_extension: failed to complete the basis");
    std::vector<StateVector> out;
    out.reserve(dim);
    for (auto& q : basis) out.emplace_back(StateVector::normalized(std::move(q)));
    return out;
}

namespace detail {

double GaussianStream::next_uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = next_uniform();
    while (u1 <= 0.0) u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

}  // namespace detail

StateVector random_state(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("random_state: dim must be >= 1");
    detail::GaussianStream g(seed);
    std::vector<Complex> a(dim);
    for (auto& z : a) z = g.next_complex();
    return StateVector::normalized(std::move(a));
}

UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("random_unitary: dim must be >= 1");
    detail::GaussianStream g(seed);
    // Gaussian matrix, columns orthonormalized in order. Modified Gram-Schmidt
    // keeps the R diagonal real positive, which is exactly the phase fix that
    // makes the result Haar distributed.
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) cols[c][r] = g.next_complex();
    std::vector<std::vector<Complex>> q;
    q.reserve(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const double rem = mgs_orthogonalize(cols[c], q);
        if (rem < 1e-10) throw std::runtime_error("random_unitary: degenerate Gaussian draw");
        for (auto& z : cols[c]) z /= rem;
        q.push_back(std::move(cols[c]));
    }
    std::vector<Complex> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) entries[r * dim + c] = q[c][r];
    return UnitaryOperator(dim, std::move(entries));
}

}  // namespace ontolab
